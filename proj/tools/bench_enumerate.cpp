// Benchmark: serial vs OpenMP-sharded exhaustive class sweep. The sharded
// kernel is what `verify` and the acceptance suite use; the serial loop is
// the reference both are checked against.
#include <chrono>
#include <cstdio>

#include "hamnet/oracle.hpp"
#include "hamnet/structure.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hamnet;

namespace {

long long sweep_serial(int n) {
    long long members = 0;
    for (uint64_t mask = 0; mask < mask_count(n); ++mask) {
        Graph g = graph_from_mask(n, mask);
        if (is_connected(g) && is_claw_net_free(g).cn_free) ++members;
    }
    return members;
}

long long sweep_parallel(int n) {
    long long members = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4096) reduction(+ : members)
#endif
    for (long long mask = 0; mask < static_cast<long long>(mask_count(n)); ++mask) {
        Graph g = graph_from_mask(n, static_cast<uint64_t>(mask));
        if (is_connected(g) && is_claw_net_free(g).cn_free) ++members;
    }
    return members;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 6;
    if (n < 1 || n > 7) {
        std::fprintf(stderr, "usage: bench_enumerate [n in 1..7]\n");
        return 2;
    }
    auto t0 = std::chrono::steady_clock::now();
    long long serial = sweep_serial(n);
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    long long parallel = sweep_parallel(n);
    double tp = seconds_since(t0);
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("n=%d connected class members: serial=%lld parallel=%lld\n", n, serial,
                parallel);
    std::printf("serial %.3fs, parallel %.3fs (%d threads), speedup %.2fx\n", ts, tp,
                threads, tp > 0 ? ts / tp : 0.0);
    return serial == parallel ? 0 : 1;
}
