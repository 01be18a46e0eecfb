#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(HAMNET_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string write_tmp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/hamnet_cli_test_" + name + ".txt";
    std::ofstream f(path);
    f << text;
    return path;
}

const char* kP4 = "p 4 3\ne 1 2\ne 2 3\ne 3 4\n";
const char* kNet = "p 6 6\ne 1 2\ne 2 3\ne 1 3\ne 1 4\ne 2 5\ne 3 6\n";
const char* kDiamond = "p 4 5\ne 1 2\ne 1 3\ne 2 3\ne 2 4\ne 3 4\n";

}  // namespace

TEST_CASE("check verb") {
    auto good = run("check " + write_tmp("p4", kP4));
    CHECK(good.exit_code == 0);
    CHECK(good.out == "claw-net-free\n");
    auto bad = run("--json check " + write_tmp("net", kNet));
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("\"net\"") != std::string::npos);
}

TEST_CASE("trace verb with endpoints and via") {
    auto r = run("trace --from 1 --to 4 --via 2,3 " + write_tmp("p4b", kP4));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1 2 3 4\n");
    auto plain = run("trace " + write_tmp("p4c", kP4));
    CHECK(plain.exit_code == 0);
    CHECK(plain.out == "1 2 3 4\n");
    auto no = run("trace --from 1 --to 3 " + write_tmp("p4d", kP4));
    CHECK(no.exit_code == 1);
    CHECK(no.out.find("no trace") == 0);
}

TEST_CASE("track verb") {
    std::string d = write_tmp("diamond", kDiamond);
    auto c = run("track " + d);
    CHECK(c.exit_code == 0);
    auto mid = run("--json track --via 2,3 " + d);
    CHECK(mid.exit_code == 1);
    CHECK(mid.out.find("edge_on_no_cycle") != std::string::npos);
    auto outer = run("track --via 1,2 " + d);
    CHECK(outer.exit_code == 0);
}

TEST_CASE("blocks verb") {
    auto b = run("--json blocks " + write_tmp("p4e", kP4));
    CHECK(b.exit_code == 0);
    CHECK(b.out.find("\"cut_vertices\": [\n    2,\n    3\n  ]") != std::string::npos);
}

TEST_CASE("enumerate verb") {
    auto e = run("--json enumerate --n 3 --filter connected");
    CHECK(e.exit_code == 0);
    CHECK(e.out.find("\"count\":4") != std::string::npos);
}

TEST_CASE("verify small sweep passes") {
    auto v = run("verify --max-n 4");
    CHECK(v.exit_code == 0);
    CHECK(v.out.find("mismatches: 0") != std::string::npos);
}

TEST_CASE("usage and IO errors exit 2") {
    CHECK(run("bogus").exit_code == 2);
    CHECK(run("trace /nonexistent/file").exit_code == 2);
}

TEST_CASE("determinism: identical argv, identical bytes") {
    std::string d = write_tmp("diamond2", kDiamond);
    auto a = run("--json trace --via 2,3 " + d);
    auto b = run("--json trace --via 2,3 " + d);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
}

TEST_CASE("explain streams lemma steps on stderr only") {
    std::string d = write_tmp("diamond3", kDiamond);
    auto quiet = run("track " + d);
    auto chatty = run("--explain track " + d);
    CHECK(chatty.out == quiet.out);  // stderr is discarded by run()
}
