#pragma once

#include <cstddef>

#include "cqed/sparse.hpp"

// Inner loops of the solvers. Every kernel exists twice: a plain serial
// reference (kernels::serial) and an OpenMP version (kernels::par) that
// partitions output rows/elements across threads. Each output element is
// written by exactly one thread with the same inner summation order as the
// serial loop, so the two variants produce bitwise-identical results and the
// serial build stays usable as a test oracle.
//
// Dense matrices are square, row-major. spmm kernels treat x and y as
// dim x nc blocks.

namespace cqed::kernels {

namespace serial {
void spmm_left_acc(const Csr& a, const Complex* x, Complex* y, std::size_t nc, Complex s);
void spmm_right_acc(const Csr& a, const Complex* x, Complex* y, std::size_t nc, Complex s);
void spmv(const Csr& a, const Complex* x, Complex* y);
void matvec(const Complex* m, const Complex* x, Complex* y, std::size_t dim);
void matvec_adjoint(const Complex* m, const Complex* x, Complex* y, std::size_t dim);
void add_scaled(Complex* y, const Complex* x, std::size_t n, Complex s);
void copy_add_scaled(Complex* out, const Complex* base, const Complex* x, std::size_t n, Complex s);
void rk4_combine(Complex* y, const Complex* k1, const Complex* k2, const Complex* k3,
                 const Complex* k4, std::size_t n, double h);
void hermitize(Complex* rho, std::size_t dim);
void phase_coeffs(const double* e, const Complex* c, Complex* out, std::size_t n,
                  double t, double hbar);
}  // namespace serial

namespace par {
void spmm_left_acc(const Csr& a, const Complex* x, Complex* y, std::size_t nc, Complex s);
void spmm_right_acc(const Csr& a, const Complex* x, Complex* y, std::size_t nc, Complex s);
void spmv(const Csr& a, const Complex* x, Complex* y);
void matvec(const Complex* m, const Complex* x, Complex* y, std::size_t dim);
void matvec_adjoint(const Complex* m, const Complex* x, Complex* y, std::size_t dim);
void add_scaled(Complex* y, const Complex* x, std::size_t n, Complex s);
void copy_add_scaled(Complex* out, const Complex* base, const Complex* x, std::size_t n, Complex s);
void rk4_combine(Complex* y, const Complex* k1, const Complex* k2, const Complex* k3,
                 const Complex* k4, std::size_t n, double h);
void hermitize(Complex* rho, std::size_t dim);
void phase_coeffs(const double* e, const Complex* c, Complex* out, std::size_t n,
                  double t, double hbar);
}  // namespace par

#ifdef CQED_HAVE_OPENMP
namespace active = par;
#else
namespace active = serial;
#endif

using active::add_scaled;
using active::copy_add_scaled;
using active::hermitize;
using active::matvec;
using active::matvec_adjoint;
using active::phase_coeffs;
using active::rk4_combine;
using active::spmm_left_acc;
using active::spmm_right_acc;
using active::spmv;

// Small sequential reductions; cheap relative to the kernels above and kept
// serial so results never depend on the thread count.
Complex dot_conj(const Complex* x, const Complex* y, std::size_t n);  // <x|y>
double norm2(const Complex* x, std::size_t n);
Complex trace(const Complex* rho, std::size_t dim);
Complex expectation_vec(const SparseOperator& op, const Complex* psi);   // <psi|O|psi>
Complex expectation_rho(const SparseOperator& op, const Complex* rho);   // tr(O rho)

}  // namespace cqed::kernels
