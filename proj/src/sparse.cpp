#include "cqed/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cqed/errors.hpp"

namespace cqed {

namespace {

bool coord_less(const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
}

}  // namespace

SparseOperator::SparseOperator(std::size_t dim, std::vector<Triplet> triplets)
    : dim_(dim) {
    for (const auto& t : triplets) {
        require(t.row < dim && t.col < dim, ErrorCode::logic,
                "sparse entry (" + std::to_string(t.row) + "," +
                    std::to_string(t.col) + ") outside dim " + std::to_string(dim));
    }
    std::sort(triplets.begin(), triplets.end(), coord_less);
    entries_.reserve(triplets.size());
    for (const auto& t : triplets) {
        if (!entries_.empty() && entries_.back().row == t.row &&
            entries_.back().col == t.col) {
            entries_.back().value += t.value;
        } else {
            entries_.push_back(t);
        }
    }
    std::erase_if(entries_, [](const Triplet& t) { return t.value == Complex(0.0, 0.0); });
    check_hermitian();
}

SparseOperator SparseOperator::zero(std::size_t dim) {
    return SparseOperator(dim, {});
}

SparseOperator SparseOperator::identity(std::size_t dim) {
    std::vector<Triplet> t;
    t.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) t.push_back({i, i, 1.0});
    return SparseOperator(dim, std::move(t));
}

Complex SparseOperator::at(std::size_t row, std::size_t col) const {
    Triplet probe{row, col, 0.0};
    auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, coord_less);
    if (it != entries_.end() && it->row == row && it->col == col) return it->value;
    return 0.0;
}

void SparseOperator::check_hermitian() {
    constexpr double tol = 1e-12;
    for (const auto& t : entries_) {
        if (std::abs(t.value - std::conj(at(t.col, t.row))) > tol) {
            hermitian_ = false;
            return;
        }
    }
    hermitian_ = true;
}

SparseOperator SparseOperator::adjoint() const {
    std::vector<Triplet> t;
    t.reserve(entries_.size());
    for (const auto& e : entries_) t.push_back({e.col, e.row, std::conj(e.value)});
    return SparseOperator(dim_, std::move(t));
}

SparseOperator SparseOperator::scaled(Complex s) const {
    std::vector<Triplet> t(entries_.begin(), entries_.end());
    for (auto& e : t) e.value *= s;
    return SparseOperator(dim_, std::move(t));
}

SparseOperator SparseOperator::restricted(std::span<const std::size_t> kept) const {
    std::vector<Triplet> t;
    auto pos_of = [&](std::size_t full) -> std::ptrdiff_t {
        auto it = std::lower_bound(kept.begin(), kept.end(), full);
        if (it == kept.end() || *it != full) return -1;
        return it - kept.begin();
    };
    for (const auto& e : entries_) {
        auto r = pos_of(e.row);
        if (r < 0) continue;
        auto c = pos_of(e.col);
        if (c < 0) continue;
        t.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c), e.value});
    }
    return SparseOperator(kept.size(), std::move(t));
}

std::vector<Complex> SparseOperator::to_dense() const {
    std::vector<Complex> d(dim_ * dim_, Complex(0.0, 0.0));
    for (const auto& e : entries_) d[e.row * dim_ + e.col] = e.value;
    return d;
}

double SparseOperator::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
    return m;
}

SparseOperator add(const SparseOperator& a, const SparseOperator& b,
                   Complex ca, Complex cb) {
    require(a.dim() == b.dim(), ErrorCode::logic, "operator dimension mismatch in add");
    std::vector<Triplet> t;
    t.reserve(a.nnz() + b.nnz());
    for (const auto& e : a.entries()) t.push_back({e.row, e.col, ca * e.value});
    for (const auto& e : b.entries()) t.push_back({e.row, e.col, cb * e.value});
    return SparseOperator(a.dim(), std::move(t));
}

SparseOperator mul(const SparseOperator& a, const SparseOperator& b) {
    require(a.dim() == b.dim(), ErrorCode::logic, "operator dimension mismatch in mul");
    const Csr br(b);
    std::vector<Triplet> out;
    std::vector<Complex> scratch(a.dim(), Complex(0.0, 0.0));
    std::vector<std::size_t> touched;

    auto ae = a.entries();
    std::size_t i = 0;
    while (i < ae.size()) {
        const std::size_t row = ae[i].row;
        touched.clear();
        for (; i < ae.size() && ae[i].row == row; ++i) {
            const std::size_t k = ae[i].col;
            const Complex va = ae[i].value;
            for (std::size_t p = br.row_ptr[k]; p < br.row_ptr[k + 1]; ++p) {
                const std::size_t j = br.col[p];
                if (scratch[j] == Complex(0.0, 0.0)) touched.push_back(j);
                scratch[j] += va * br.val[p];
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::size_t j : touched) {
            out.push_back({row, j, scratch[j]});
            scratch[j] = 0.0;
        }
    }
    return SparseOperator(a.dim(), std::move(out));
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    return add(mul(a, b), mul(b, a), 1.0, -1.0);
}

Csr::Csr(const SparseOperator& op) : dim(op.dim()) {
    row_ptr.assign(dim + 1, 0);
    auto e = op.entries();
    col.reserve(e.size());
    val.reserve(e.size());
    for (const auto& t : e) ++row_ptr[t.row + 1];
    for (std::size_t r = 0; r < dim; ++r) row_ptr[r + 1] += row_ptr[r];
    for (const auto& t : e) {  // entries are already row-major sorted
        col.push_back(t.col);
        val.push_back(t.value);
    }
}

}  // namespace cqed
