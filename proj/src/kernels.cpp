#include "cqed/kernels.hpp"

#include <cmath>

namespace cqed::kernels {

// ---------------------------------------------------------------- serial ---

namespace serial {

void spmm_left_acc(const Csr& a, const Complex* x, Complex* y, std::size_t nc, Complex s) {
    for (std::size_t i = 0; i < a.dim; ++i) {
        Complex* yi = y + i * nc;
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            const Complex w = s * a.val[p];
            const Complex* xk = x + a.col[p] * nc;
            for (std::size_t j = 0; j < nc; ++j) yi[j] += w * xk[j];
        }
    }
}

void spmm_right_acc(const Csr& a, const Complex* x, Complex* y, std::size_t nc, Complex s) {
    // y(i,:) += s * sum_k x(i,k) a(k,:)
    for (std::size_t i = 0; i < nc; ++i) {
        const Complex* xi = x + i * a.dim;
        Complex* yi = y + i * a.dim;
        for (std::size_t k = 0; k < a.dim; ++k) {
            const std::size_t b = a.row_ptr[k], e = a.row_ptr[k + 1];
            if (b == e) continue;
            const Complex w = s * xi[k];
            if (w == Complex(0.0, 0.0)) continue;
            for (std::size_t p = b; p < e; ++p) yi[a.col[p]] += w * a.val[p];
        }
    }
}

void spmv(const Csr& a, const Complex* x, Complex* y) {
    for (std::size_t i = 0; i < a.dim; ++i) {
        Complex acc(0.0, 0.0);
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
            acc += a.val[p] * x[a.col[p]];
        y[i] = acc;
    }
}

void matvec(const Complex* m, const Complex* x, Complex* y, std::size_t dim) {
    for (std::size_t i = 0; i < dim; ++i) {
        const Complex* row = m + i * dim;
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < dim; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void matvec_adjoint(const Complex* m, const Complex* x, Complex* y, std::size_t dim) {
    for (std::size_t j = 0; j < dim; ++j) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i) acc += std::conj(m[i * dim + j]) * x[i];
        y[j] = acc;
    }
}

void add_scaled(Complex* y, const Complex* x, std::size_t n, Complex s) {
    for (std::size_t i = 0; i < n; ++i) y[i] += s * x[i];
}

void copy_add_scaled(Complex* out, const Complex* base, const Complex* x, std::size_t n, Complex s) {
    for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + s * x[i];
}

void rk4_combine(Complex* y, const Complex* k1, const Complex* k2, const Complex* k3,
                 const Complex* k4, std::size_t n, double h) {
    const double w = h / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void hermitize(Complex* rho, std::size_t dim) {
    for (std::size_t i = 0; i < dim; ++i) {
        rho[i * dim + i] = Complex(rho[i * dim + i].real(), 0.0);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const Complex m = 0.5 * (rho[i * dim + j] + std::conj(rho[j * dim + i]));
            rho[i * dim + j] = m;
            rho[j * dim + i] = std::conj(m);
        }
    }
}

void phase_coeffs(const double* e, const Complex* c, Complex* out, std::size_t n,
                  double t, double hbar) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = -e[i] * t / hbar;
        out[i] = Complex(std::cos(ph), std::sin(ph)) * c[i];
    }
}

}  // namespace serial

// ------------------------------------------------------------------- par ---

namespace par {

void spmm_left_acc(const Csr& a, const Complex* x, Complex* y, std::size_t nc, Complex s) {
    const std::ptrdiff_t dim = static_cast<std::ptrdiff_t>(a.dim);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < dim; ++i) {
        Complex* yi = y + i * nc;
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
            const Complex w = s * a.val[p];
            const Complex* xk = x + a.col[p] * nc;
            for (std::size_t j = 0; j < nc; ++j) yi[j] += w * xk[j];
        }
    }
}

void spmm_right_acc(const Csr& a, const Complex* x, Complex* y, std::size_t nc, Complex s) {
    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(nc);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        const Complex* xi = x + i * a.dim;
        Complex* yi = y + i * a.dim;
        for (std::size_t k = 0; k < a.dim; ++k) {
            const std::size_t b = a.row_ptr[k], e = a.row_ptr[k + 1];
            if (b == e) continue;
            const Complex w = s * xi[k];
            if (w == Complex(0.0, 0.0)) continue;
            for (std::size_t p = b; p < e; ++p) yi[a.col[p]] += w * a.val[p];
        }
    }
}

void spmv(const Csr& a, const Complex* x, Complex* y) {
    const std::ptrdiff_t dim = static_cast<std::ptrdiff_t>(a.dim);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < dim; ++i) {
        Complex acc(0.0, 0.0);
        for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p)
            acc += a.val[p] * x[a.col[p]];
        y[i] = acc;
    }
}

void matvec(const Complex* m, const Complex* x, Complex* y, std::size_t dim) {
    const std::ptrdiff_t d = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < d; ++i) {
        const Complex* row = m + i * dim;
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < dim; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

void matvec_adjoint(const Complex* m, const Complex* x, Complex* y, std::size_t dim) {
    const std::ptrdiff_t d = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < d; ++j) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i) acc += std::conj(m[i * dim + j]) * x[i];
        y[j] = acc;
    }
}

void add_scaled(Complex* y, const Complex* x, std::size_t n, Complex s) {
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nn; ++i) y[i] += s * x[i];
}

void copy_add_scaled(Complex* out, const Complex* base, const Complex* x, std::size_t n, Complex s) {
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nn; ++i) out[i] = base[i] + s * x[i];
}

void rk4_combine(Complex* y, const Complex* k1, const Complex* k2, const Complex* k3,
                 const Complex* k4, std::size_t n, double h) {
    const double w = h / 6.0;
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nn; ++i)
        y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void hermitize(Complex* rho, std::size_t dim) {
    const std::ptrdiff_t d = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < d; ++i) {
        rho[i * dim + i] = Complex(rho[i * dim + i].real(), 0.0);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const Complex m = 0.5 * (rho[i * dim + j] + std::conj(rho[j * dim + i]));
            rho[i * dim + j] = m;
            rho[j * dim + i] = std::conj(m);
        }
    }
}

void phase_coeffs(const double* e, const Complex* c, Complex* out, std::size_t n,
                  double t, double hbar) {
    const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nn; ++i) {
        const double ph = -e[i] * t / hbar;
        out[i] = Complex(std::cos(ph), std::sin(ph)) * c[i];
    }
}

}  // namespace par

// -------------------------------------------------------------- reductions ---

Complex dot_conj(const Complex* x, const Complex* y, std::size_t n) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

double norm2(const Complex* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
    return std::sqrt(acc);
}

Complex trace(const Complex* rho, std::size_t dim) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < dim; ++i) acc += rho[i * dim + i];
    return acc;
}

Complex expectation_vec(const SparseOperator& op, const Complex* psi) {
    Complex acc(0.0, 0.0);
    for (const auto& e : op.entries())
        acc += std::conj(psi[e.row]) * e.value * psi[e.col];
    return acc;
}

Complex expectation_rho(const SparseOperator& op, const Complex* rho) {
    // tr(O rho) = sum_{ij} O_ij rho_ji
    const std::size_t dim = op.dim();
    Complex acc(0.0, 0.0);
    for (const auto& e : op.entries()) acc += e.value * rho[e.col * dim + e.row];
    return acc;
}

}  // namespace cqed::kernels
