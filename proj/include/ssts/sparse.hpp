/// @file sparse.hpp
/// @brief CSR storage for real symmetric matrices plus the dense-vector
///        kernels every solver in this library is built from.

#ifndef SSTS_SPARSE_HPP
#define SSTS_SPARSE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssts {

using index_t = std::int32_t;
using DenseVector = std::vector<double>;

struct Triplet {
    index_t row;
    index_t col;
    double value;
};

/// Symmetric sparse matrix in CSR format. The full pattern is stored (both
/// (i,j) and (j,i)), column indices are strictly increasing within each row,
/// and no explicit zeros survive assembly. Immutable after construction.
class SparseSym {
public:
    SparseSym() = default;

    index_t rows() const { return n_; }
    index_t nnz() const { return static_cast<index_t>(values_.size()); }

    const std::vector<index_t>& row_offsets() const { return row_offsets_; }
    const std::vector<index_t>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    /// Canonical assembly from (row, col, value) entries. Duplicates are
    /// summed; missing mirror entries are synthesized; conflicting mirror
    /// values are rejected. Exact zeros are dropped after summation.
    static SparseSym from_triplets(index_t n, std::span<const Triplet> entries) {
        if (n < 0) throw std::invalid_argument("SparseSym: negative dimension");
        std::vector<Triplet> work(entries.begin(), entries.end());
        for (const Triplet& t : work) {
            if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
                throw std::out_of_range("SparseSym: triplet index out of range (n=" +
                                        std::to_string(n) + ", entry at (" +
                                        std::to_string(t.row) + "," + std::to_string(t.col) + "))");
        }
        auto key_less = [](const Triplet& a, const Triplet& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        };
        std::sort(work.begin(), work.end(), key_less);

        // Sum duplicates in sorted (deterministic) order.
        std::vector<Triplet> summed;
        summed.reserve(work.size());
        for (const Triplet& t : work) {
            if (!summed.empty() && summed.back().row == t.row && summed.back().col == t.col)
                summed.back().value += t.value;
            else
                summed.push_back(t);
        }

        // Symmetry completion: mirror absent entries, reject conflicting ones.
        auto find = [&](index_t i, index_t j) -> const Triplet* {
            Triplet probe{i, j, 0.0};
            auto it = std::lower_bound(summed.begin(), summed.end(), probe, key_less);
            if (it != summed.end() && it->row == i && it->col == j) return &*it;
            return nullptr;
        };
        std::vector<Triplet> mirrored;
        for (const Triplet& t : summed) {
            if (t.row == t.col) continue;
            const Triplet* other = find(t.col, t.row);
            if (other == nullptr) {
                mirrored.push_back({t.col, t.row, t.value});
            } else if (other->value != t.value) {
                throw std::invalid_argument("SparseSym: asymmetric entries at (" +
                                            std::to_string(t.row) + "," + std::to_string(t.col) + ")");
            }
        }
        summed.insert(summed.end(), mirrored.begin(), mirrored.end());
        std::sort(summed.begin(), summed.end(), key_less);

        SparseSym A;
        A.n_ = n;
        A.row_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
        A.col_indices_.reserve(summed.size());
        A.values_.reserve(summed.size());
        for (const Triplet& t : summed) {
            if (t.value == 0.0) continue;  // drop explicit zeros
            A.row_offsets_[static_cast<std::size_t>(t.row) + 1]++;
            A.col_indices_.push_back(t.col);
            A.values_.push_back(t.value);
        }
        for (index_t i = 0; i < n; ++i)
            A.row_offsets_[static_cast<std::size_t>(i) + 1] += A.row_offsets_[static_cast<std::size_t>(i)];
        return A;
    }

    /// y = A x, row-major with in-row index order so sums are reproducible.
    void multiply(const DenseVector& x, DenseVector& y) const {
        if (static_cast<index_t>(x.size()) != n_)
            throw std::invalid_argument("SparseSym::multiply: dimension mismatch");
        y.resize(static_cast<std::size_t>(n_));
        for (index_t i = 0; i < n_; ++i) {
            double sum = 0.0;
            for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
                sum += values_[k] * x[static_cast<std::size_t>(col_indices_[k])];
            y[static_cast<std::size_t>(i)] = sum;
        }
    }

    DenseVector multiply(const DenseVector& x) const {
        DenseVector y;
        multiply(x, y);
        return y;
    }

    /// Stored entry at (i, j), zero if absent.
    double at(index_t i, index_t j) const {
        if (i < 0 || i >= n_ || j < 0 || j >= n_)
            throw std::out_of_range("SparseSym::at: index out of range");
        auto lo = col_indices_.begin() + row_offsets_[i];
        auto hi = col_indices_.begin() + row_offsets_[i + 1];
        auto it = std::lower_bound(lo, hi, j);
        if (it != hi && *it == j)
            return values_[static_cast<std::size_t>(it - col_indices_.begin())];
        return 0.0;
    }

    /// Full-pattern triplet dump; from_triplets on it reproduces the matrix
    /// bit-exactly.
    std::vector<Triplet> to_triplets() const {
        std::vector<Triplet> out;
        out.reserve(values_.size());
        for (index_t i = 0; i < n_; ++i)
            for (index_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
                out.push_back({i, col_indices_[k], values_[k]});
        return out;
    }

private:
    index_t n_ = 0;
    std::vector<index_t> row_offsets_{0};
    std::vector<index_t> col_indices_;
    std::vector<double> values_;
};

/// spmv free-function spelling of SparseSym::multiply.
inline DenseVector spmv(const SparseSym& A, const DenseVector& x) { return A.multiply(x); }

inline SparseSym identity(index_t n) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n));
    for (index_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return SparseSym::from_triplets(n, t);
}

/// m-by-m symmetric tridiagonal matrix tridiag(sub, diag, super). The two
/// off-diagonals must agree.
inline SparseSym tridiag(index_t m, double sub, double diag, double super) {
    if (m < 1) throw std::invalid_argument("tridiag: m must be >= 1");
    if (sub != super) throw std::invalid_argument("tridiag: sub != super breaks symmetry");
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(3 * m));
    for (index_t i = 0; i < m; ++i) {
        t.push_back({i, i, diag});
        if (i + 1 < m) t.push_back({i, i + 1, super});
    }
    return SparseSym::from_triplets(m, t);
}

/// Kronecker sum I (x) V + V (x) I for square V of size m; result is m^2 x m^2.
/// Row (a, b) maps to a*m + b.
inline SparseSym kron_sum(const SparseSym& V) {
    const index_t m = V.rows();
    const index_t n = m * m;
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(2) * V.nnz() * m);
    const auto& off = V.row_offsets();
    const auto& col = V.col_indices();
    const auto& val = V.values();
    for (index_t a = 0; a < m; ++a) {
        for (index_t k = off[a]; k < off[a + 1]; ++k) {
            const index_t c = col[k];
            const double v = val[k];
            // V (x) I: V[a,c] replicated across the inner index.
            for (index_t b = 0; b < m; ++b) t.push_back({a * m + b, c * m + b, v});
        }
        // I (x) V: copy of V inside diagonal block a.
        for (index_t b = 0; b < m; ++b) {
            for (index_t k = off[b]; k < off[b + 1]; ++k)
                t.push_back({a * m + b, a * m + col[k], val[k]});
        }
    }
    return SparseSym::from_triplets(n, t);
}

/// a*A + b*B with pattern union (entries cancelling to exact zero are dropped).
inline SparseSym add_scaled(double a, const SparseSym& A, double b, const SparseSym& B) {
    if (A.rows() != B.rows()) throw std::invalid_argument("add_scaled: dimension mismatch");
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(A.nnz() + B.nnz()));
    for (const Triplet& e : A.to_triplets()) t.push_back({e.row, e.col, a * e.value});
    for (const Triplet& e : B.to_triplets()) t.push_back({e.row, e.col, b * e.value});
    return SparseSym::from_triplets(A.rows(), t);
}

inline SparseSym scaled(const SparseSym& A, double c) {
    std::vector<Triplet> t = A.to_triplets();
    for (Triplet& e : t) e.value *= c;
    return SparseSym::from_triplets(A.rows(), t);
}

// ---------------------------------------------------------------------------
// Dense-vector kernels. Plain loops with fixed order keep residual histories
// reproducible run-to-run.
// ---------------------------------------------------------------------------

inline double dot(const DenseVector& x, const DenseVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm2(const DenseVector& x) { return std::sqrt(dot(x, x)); }

/// y += a*x
inline void axpy(double a, const DenseVector& x, DenseVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scale_inplace(DenseVector& x, double a) {
    for (double& v : x) v *= a;
}

inline DenseVector linear_combo(double a, const DenseVector& x, double b, const DenseVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("linear_combo: dimension mismatch");
    DenseVector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = a * x[i] + b * y[i];
    return z;
}

inline bool all_finite(const DenseVector& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

/// Solver entry points admit no NaN/Inf.
inline void ensure_finite(const DenseVector& x, const char* what) {
    if (!all_finite(x)) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

}  // namespace ssts

#endif  // SSTS_SPARSE_HPP
