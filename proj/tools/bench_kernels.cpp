// Benchmark of the OpenMP spectral-sum kernels against the serial reference
// implementations on synthetic eigensystems.

#include "bdp/kernels.hpp"
#include "bdp/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double median_seconds(const std::function<void()>& fn, int repeats) {
    std::vector<double> times;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        dims.push_back(std::stoi(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    return dims;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> dims = {256, 512, 1024};
    int repeats = 5;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--dims") == 0 && i + 1 < argc) dims = parse_dims(argv[++i]);
        else if (std::strcmp(argv[i], "--repeats") == 0 && i + 1 < argc) repeats = std::stoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: bdp_bench [--dims 256,512,...] [--repeats N]\n");
            return 2;
        }
    }

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-22s %6s %12s %12s %8s %10s\n", "kernel", "dim", "serial[s]", "openmp[s]",
                "speedup", "max|diff|");

    bdp::Rng rng(42);
    for (int dim : dims) {
        // synthetic ascending spectrum and normalized weights
        bdp::RealVector e(dim), w(dim);
        const double beta = 1.0;
        for (int i = 0; i < dim; ++i) e[i] = -3.0 + 6.0 * i / std::max(1, dim - 1);
        double z = 0.0;
        for (int i = 0; i < dim; ++i) {
            w[i] = std::exp(-beta * (e[i] - e[0]));
            z += w[i];
        }
        w /= z;
        const bdp::ComplexMatrix a = bdp::random_complex_matrix(dim, rng);
        const bdp::ComplexMatrix b = bdp::random_complex_matrix(dim, rng);

        struct Case {
            const char* name;
            std::function<bdp::Complex()> serial;
            std::function<bdp::Complex()> parallel;
        };
        namespace k = bdp::kernels;
        const std::vector<Case> cases = {
            {"bd_inner_sum",
             [&] { return k::reference::bd_inner_sum(e, w, beta, a, b); },
             [&] { return k::bd_inner_sum(e, w, beta, a, b); }},
            {"functional_sum(k=3)",
             [&] { return bdp::Complex(k::reference::functional_sum(e, w, beta, a, 3), 0); },
             [&] { return bdp::Complex(k::functional_sum(e, w, beta, a, 3), 0); }},
            {"gap_coth_sum",
             [&] { return bdp::Complex(k::reference::gap_coth_sum(e, w, beta, a), 0); },
             [&] { return bdp::Complex(k::gap_coth_sum(e, w, beta, a), 0); }},
            {"quadrature_sum(32)",
             [&] { return k::reference::quadrature_sum(e, w, beta, a, b, 32); },
             [&] { return k::quadrature_sum(e, w, beta, a, b, 32); }},
        };
        for (const auto& cs : cases) {
            bdp::Complex vs, vp;
            const double ts = median_seconds([&] { vs = cs.serial(); }, repeats);
            const double tp = median_seconds([&] { vp = cs.parallel(); }, repeats);
            std::printf("%-22s %6d %12.5f %12.5f %8.2fx %10.2e\n", cs.name, dim, ts, tp,
                        ts / std::max(tp, 1e-12), std::abs(vs - vp));
        }
    }
    return 0;
}
