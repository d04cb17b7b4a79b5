// Times the serial reference against the OpenMP suite runner on the
// exhaustive streams. Not part of the test suite.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dagtrails/verify.hpp"

using namespace dagtrails;

namespace {

double time_suite(const GenSpec& spec, int threads,
                  std::vector<CheckReport>& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = run_suite(spec, std::vector<std::string>{}, threads);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

bool same_reports(const std::vector<CheckReport>& a,
                  const std::vector<CheckReport>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].graphs != b[i].graphs || a[i].skipped != b[i].skipped ||
            a[i].instances != b[i].instances ||
            a[i].failures.size() != b[i].failures.size())
            return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    int max_n = argc > 1 ? std::stoi(argv[1]) : 4;
#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::printf("%-14s %12s %14s %9s %7s\n", "stream", "serial [s]",
                "parallel [s]", "speedup", "equal");
    for (int n = 3; n <= max_n; ++n) {
        GenSpec spec = GenSpec::exhaustive(n);
        std::vector<CheckReport> serial, parallel;
        double ts = time_suite(spec, 1, serial);
        double tp = time_suite(spec, threads, parallel);
        std::printf("exhaustive(%d) %12.3f %14.3f %8.2fx %7s\n", n, ts, tp,
                    ts / tp, same_reports(serial, parallel) ? "yes" : "NO");
    }
    return 0;
}
