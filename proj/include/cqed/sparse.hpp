#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cqed {

using Complex = std::complex<double>;

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    Complex value;
};

// Sparse complex matrix stored as row-major sorted COO with merged duplicates.
// The hermitian flag is computed at construction (A == A† within 1e-12) and is
// what the dynamics layer trusts when it requires a Hamiltonian.
class SparseOperator {
public:
    SparseOperator() = default;
    SparseOperator(std::size_t dim, std::vector<Triplet> triplets);

    static SparseOperator zero(std::size_t dim);
    static SparseOperator identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return entries_.size(); }
    std::span<const Triplet> entries() const { return entries_; }
    bool hermitian() const { return hermitian_; }

    // Value at (row, col), zero when absent.
    Complex at(std::size_t row, std::size_t col) const;

    SparseOperator adjoint() const;
    SparseOperator scaled(Complex s) const;

    // Principal submatrix over a sorted index subset; indices are re-numbered
    // to 0..subset.size()-1.
    SparseOperator restricted(std::span<const std::size_t> kept_sorted) const;

    std::vector<Complex> to_dense() const;  // row-major dim x dim
    double max_abs() const;

private:
    std::size_t dim_ = 0;
    std::vector<Triplet> entries_;
    bool hermitian_ = false;

    void check_hermitian();
};

SparseOperator add(const SparseOperator& a, const SparseOperator& b,
                   Complex ca = 1.0, Complex cb = 1.0);
SparseOperator mul(const SparseOperator& a, const SparseOperator& b);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

// Compressed-row view used by the kernels. Columns are sorted within a row.
struct Csr {
    std::size_t dim = 0;
    std::vector<std::size_t> row_ptr;  // size dim+1
    std::vector<std::size_t> col;
    std::vector<Complex> val;

    Csr() = default;
    explicit Csr(const SparseOperator& op);
};

}  // namespace cqed
