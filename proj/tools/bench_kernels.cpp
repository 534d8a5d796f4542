// Timing comparison of the serial reference kernels against the OpenMP
// variants. Build with -DCQED_OPENMP=OFF to see the pragmas' overhead too.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "cqed/kernels.hpp"

#ifdef CQED_HAVE_OPENMP
#include <omp.h>
#endif

using namespace cqed;

namespace {

SparseOperator random_hermitian(std::size_t dim, std::size_t offdiag_per_row,
                                std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < dim; ++i) {
        t.push_back({i, i, u(rng)});
        for (std::size_t k = 0; k < offdiag_per_row; ++k) {
            const std::size_t j = pick(rng);
            if (j == i) continue;
            const Complex v(u(rng), u(rng));
            t.push_back({i, j, v});
            t.push_back({j, i, std::conj(v)});
        }
    }
    return SparseOperator(dim, std::move(t));
}

std::vector<Complex> random_dense(std::size_t n, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> v(n);
    for (auto& x : v) x = Complex(u(rng), u(rng));
    return v;
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
#ifdef CQED_HAVE_OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; par:: falls back to sequential loops\n");
#endif
    std::printf("%-18s %6s %12s %12s %8s\n", "kernel", "dim", "serial[ms]", "parallel[ms]",
                "speedup");

    std::mt19937 rng(1234);
    for (std::size_t dim : {64, 256, 512, 1024, 2048}) {
        const auto h = random_hermitian(dim, 6, rng);
        const Csr hc(h);
        const auto x = random_dense(dim * dim, rng);
        auto y1 = random_dense(dim * dim, rng);
        auto y2 = y1;

        const double ts = time_best_of(3, [&] {
            kernels::serial::spmm_left_acc(hc, x.data(), y1.data(), dim, Complex(0.3, -0.1));
        });
        const double tp = time_best_of(3, [&] {
            kernels::par::spmm_left_acc(hc, x.data(), y2.data(), dim, Complex(0.3, -0.1));
        });
        std::printf("%-18s %6zu %12.3f %12.3f %8.2f\n", "spmm_left_acc", dim, ts * 1e3,
                    tp * 1e3, ts / tp);
    }

    for (std::size_t dim : {64, 256, 512, 1024, 2048}) {
        const auto h = random_hermitian(dim, 6, rng);
        const Csr hc(h);
        const auto x = random_dense(dim * dim, rng);
        auto y1 = random_dense(dim * dim, rng);
        auto y2 = y1;
        const double ts = time_best_of(3, [&] {
            kernels::serial::spmm_right_acc(hc, x.data(), y1.data(), dim, Complex(0.3, -0.1));
        });
        const double tp = time_best_of(3, [&] {
            kernels::par::spmm_right_acc(hc, x.data(), y2.data(), dim, Complex(0.3, -0.1));
        });
        std::printf("%-18s %6zu %12.3f %12.3f %8.2f\n", "spmm_right_acc", dim, ts * 1e3,
                    tp * 1e3, ts / tp);
    }

    for (std::size_t dim : {512, 1024, 2048, 4096}) {
        const auto m = random_dense(dim * dim, rng);
        const auto x = random_dense(dim, rng);
        std::vector<Complex> y1(dim), y2(dim);
        const double ts =
            time_best_of(5, [&] { kernels::serial::matvec(m.data(), x.data(), y1.data(), dim); });
        const double tp =
            time_best_of(5, [&] { kernels::par::matvec(m.data(), x.data(), y2.data(), dim); });
        std::printf("%-18s %6zu %12.3f %12.3f %8.2f\n", "matvec", dim, ts * 1e3, tp * 1e3,
                    ts / tp);
    }

    for (std::size_t dim : {512, 1024, 2048}) {
        auto r1 = random_dense(dim * dim, rng);
        auto r2 = r1;
        const double ts =
            time_best_of(5, [&] { kernels::serial::hermitize(r1.data(), dim); });
        const double tp = time_best_of(5, [&] { kernels::par::hermitize(r2.data(), dim); });
        std::printf("%-18s %6zu %12.3f %12.3f %8.2f\n", "hermitize", dim, ts * 1e3, tp * 1e3,
                    ts / tp);
    }
    return 0;
}
