// Serial reference scan vs the OpenMP chunked scan, same inputs, same outputs.
#include <chrono>
#include <cstdio>

#include "asa/number_field.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace asa;

namespace {

double run_once(const NumberFieldSpec& f, const PlaceSetSpec& s, std::uint64_t bound,
                Execution exec, DensityEstimate& est) {
    auto t0 = std::chrono::steady_clock::now();
    est = density_estimate(f, s, bound, DensityMode::Natural, 1.05, exec);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t bound = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 500000;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (no OpenMP)\n");
#endif
    std::printf("%-10s %-10s %12s %12s %8s  match\n", "poly", "bound", "serial ms",
                "parallel ms", "speedup");

    for (const char* poly : {"x^2+1", "cyclo:5", "cyclo:12"}) {
        NumberFieldSpec f = NumberFieldSpec::make(IntPoly::parse(poly), true);
        PlaceSetSpec s = PlaceSetSpec::split_in_l();
        DensityEstimate serial_est, parallel_est;
        double ts = run_once(f, s, bound, Execution::Serial, serial_est);
        double tp = run_once(f, s, bound, Execution::Parallel, parallel_est);
        bool same = serial_est.value == parallel_est.value &&
                    serial_est.prime_count_matching == parallel_est.prime_count_matching;
        std::printf("%-10s %-10llu %12.1f %12.1f %7.2fx  %s\n", poly,
                    static_cast<unsigned long long>(bound), ts, tp, ts / tp,
                    same ? "identical" : "MISMATCH");
        if (!same) return 1;
    }
    return 0;
}
