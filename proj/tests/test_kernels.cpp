#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cqed/kernels.hpp"

using namespace cqed;

namespace {

std::mt19937 rng(20240811);

Complex rnd() {
    static std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

std::vector<Complex> random_vec(std::size_t n) {
    std::vector<Complex> v(n);
    for (auto& x : v) x = rnd();
    return v;
}

SparseOperator random_sparse(std::size_t dim, double fill) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Triplet> t;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (u(rng) < fill) t.push_back({i, j, rnd()});
    return SparseOperator(dim, std::move(t));
}

bool bitwise_equal(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag()) return false;
    return true;
}

}  // namespace

TEST_CASE("spmm_left_acc matches a dense triple loop") {
    for (std::size_t dim : {1, 2, 7, 24}) {
        const auto s = random_sparse(dim, 0.3);
        const auto x = random_vec(dim * dim);
        auto y = random_vec(dim * dim);
        auto expected = y;

        const auto d = s.to_dense();
        const Complex scale(0.7, -0.2);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                for (std::size_t j = 0; j < dim; ++j)
                    expected[i * dim + j] += scale * d[i * dim + k] * x[k * dim + j];

        kernels::serial::spmm_left_acc(Csr(s), x.data(), y.data(), dim, scale);
        for (std::size_t i = 0; i < y.size(); ++i)
            CHECK(std::abs(y[i] - expected[i]) < 1e-12);
    }
}

TEST_CASE("spmm_right_acc matches a dense triple loop") {
    for (std::size_t dim : {1, 3, 9, 17}) {
        const auto s = random_sparse(dim, 0.3);
        const auto x = random_vec(dim * dim);
        auto y = random_vec(dim * dim);
        auto expected = y;

        const auto d = s.to_dense();
        const Complex scale(-0.4, 0.9);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                for (std::size_t j = 0; j < dim; ++j)
                    expected[i * dim + j] += scale * x[i * dim + k] * d[k * dim + j];

        kernels::serial::spmm_right_acc(Csr(s), x.data(), y.data(), dim, scale);
        for (std::size_t i = 0; i < y.size(); ++i)
            CHECK(std::abs(y[i] - expected[i]) < 1e-12);
    }
}

TEST_CASE("parallel kernels are bitwise identical to the serial reference") {
    for (std::size_t dim : {1, 2, 5, 16, 33, 64}) {
        const auto s = random_sparse(dim, 0.25);
        const Csr sc(s);
        const auto x = random_vec(dim * dim);
        const Complex scale(0.3, 0.5);

        auto y1 = random_vec(dim * dim);
        auto y2 = y1;
        kernels::serial::spmm_left_acc(sc, x.data(), y1.data(), dim, scale);
        kernels::par::spmm_left_acc(sc, x.data(), y2.data(), dim, scale);
        CHECK(bitwise_equal(y1, y2));

        y1 = random_vec(dim * dim);
        y2 = y1;
        kernels::serial::spmm_right_acc(sc, x.data(), y1.data(), dim, scale);
        kernels::par::spmm_right_acc(sc, x.data(), y2.data(), dim, scale);
        CHECK(bitwise_equal(y1, y2));

        std::vector<Complex> v1(dim), v2(dim);
        kernels::serial::spmv(sc, x.data(), v1.data());
        kernels::par::spmv(sc, x.data(), v2.data());
        CHECK(bitwise_equal(v1, v2));

        const auto m = random_vec(dim * dim);
        const auto xv = random_vec(dim);
        kernels::serial::matvec(m.data(), xv.data(), v1.data(), dim);
        kernels::par::matvec(m.data(), xv.data(), v2.data(), dim);
        CHECK(bitwise_equal(v1, v2));

        kernels::serial::matvec_adjoint(m.data(), xv.data(), v1.data(), dim);
        kernels::par::matvec_adjoint(m.data(), xv.data(), v2.data(), dim);
        CHECK(bitwise_equal(v1, v2));

        auto r1 = random_vec(dim * dim);
        auto r2 = r1;
        kernels::serial::hermitize(r1.data(), dim);
        kernels::par::hermitize(r2.data(), dim);
        CHECK(bitwise_equal(r1, r2));

        const auto k1 = random_vec(dim * dim), k2 = random_vec(dim * dim);
        const auto k3 = random_vec(dim * dim), k4 = random_vec(dim * dim);
        r1 = random_vec(dim * dim);
        r2 = r1;
        kernels::serial::rk4_combine(r1.data(), k1.data(), k2.data(), k3.data(), k4.data(),
                                     dim * dim, 0.01);
        kernels::par::rk4_combine(r2.data(), k1.data(), k2.data(), k3.data(), k4.data(),
                                  dim * dim, 0.01);
        CHECK(bitwise_equal(r1, r2));
    }
}

TEST_CASE("hermitize symmetrizes and fixes the diagonal") {
    const std::size_t dim = 6;
    auto r = random_vec(dim * dim);
    kernels::serial::hermitize(r.data(), dim);
    for (std::size_t i = 0; i < dim; ++i) {
        CHECK(r[i * dim + i].imag() == 0.0);
        for (std::size_t j = 0; j < dim; ++j)
            CHECK(std::abs(r[i * dim + j] - std::conj(r[j * dim + i])) < 1e-15);
    }
}

TEST_CASE("phase_coeffs applies exp(-iEt/hbar)") {
    const double e[] = {0.0, 1.5, -2.0};
    const Complex c[] = {{1.0, 0.0}, {0.5, -0.5}, {0.0, 2.0}};
    Complex out[3];
    const double t = 0.7, hbar = 2.0;
    kernels::serial::phase_coeffs(e, c, out, 3, t, hbar);
    for (int i = 0; i < 3; ++i) {
        const Complex expected = std::exp(Complex(0.0, -e[i] * t / hbar)) * c[i];
        CHECK(std::abs(out[i] - expected) < 1e-15);
    }
    Complex out_par[3];
    kernels::par::phase_coeffs(e, c, out_par, 3, t, hbar);
    for (int i = 0; i < 3; ++i) CHECK(out[i] == out_par[i]);
}

TEST_CASE("expectation helpers") {
    const std::size_t dim = 5;
    const auto op = random_sparse(dim, 0.4);
    const auto psi = random_vec(dim);

    Complex direct(0.0, 0.0);
    const auto d = op.to_dense();
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            direct += std::conj(psi[i]) * d[i * dim + j] * psi[j];
    CHECK(std::abs(kernels::expectation_vec(op, psi.data()) - direct) < 1e-12);

    const auto rho = random_vec(dim * dim);
    Complex tr(0.0, 0.0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) tr += d[i * dim + j] * rho[j * dim + i];
    CHECK(std::abs(kernels::expectation_rho(op, rho.data()) - tr) < 1e-12);
}
