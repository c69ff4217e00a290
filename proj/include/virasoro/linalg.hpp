/**
 * @file linalg.hpp
 * @brief Dense exact linear algebra over Q(i): RREF, rank, kernel, solve.
 *
 * Pivoting always picks the first nonzero entry, so every reduced form,
 * kernel basis and solution is deterministic — serialized output and
 * frozen test values depend on that.
 */
#pragma once

#include "virasoro/scalars.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace virasoro {

using Vec = std::vector<GaussianRational>;

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = GaussianRational(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

    GaussianRational& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const GaussianRational& at(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * cols_ + c];
    }

    Vec column(int c) const {
        Vec v(rows_);
        for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
        return v;
    }
    void set_column(int c, const Vec& v) {
        for (int r = 0; r < rows_; ++r) at(r, c) = v[r];
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        check_same_shape(x, y);
        Matrix z(x.rows_, x.cols_);
        for (std::size_t t = 0; t < x.a_.size(); ++t) z.a_[t] = x.a_[t] + y.a_[t];
        return z;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        check_same_shape(x, y);
        Matrix z(x.rows_, x.cols_);
        for (std::size_t t = 0; t < x.a_.size(); ++t) z.a_[t] = x.a_[t] - y.a_[t];
        return z;
    }
    friend Matrix operator*(const GaussianRational& s, const Matrix& x) {
        Matrix z(x.rows_, x.cols_);
        for (std::size_t t = 0; t < x.a_.size(); ++t) z.a_[t] = s * x.a_[t];
        return z;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix z(x.rows_, y.cols_);
        for (int r = 0; r < x.rows_; ++r)
            for (int m = 0; m < x.cols_; ++m) {
                const GaussianRational& xv = x.at(r, m);
                if (xv.is_zero()) continue;
                for (int c = 0; c < y.cols_; ++c) {
                    const GaussianRational& yv = y.at(m, c);
                    if (!yv.is_zero()) z.at(r, c) += xv * yv;
                }
            }
        return z;
    }

private:
    static void check_same_shape(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<GaussianRational> a_;
};

inline Vec mat_vec(const Matrix& m, const Vec& v) {
    if (static_cast<int>(v.size()) != m.cols())
        throw std::invalid_argument("matrix-vector shape mismatch");
    Vec out(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        GaussianRational acc;
        for (int c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero() && !v[c].is_zero()) acc += m.at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

/// In-place row reduction to RREF; returns the pivot column indices.
inline std::vector<int> rref(Matrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!m.at(r, col).is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(p, c), m.at(row, c));
        GaussianRational inv = inverse(m.at(row, col));
        for (int c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            GaussianRational f = m.at(r, col);
            for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(Matrix m) { return static_cast<int>(rref(m).size()); }

/// Columns span ker(m); basis is the canonical one read off the RREF
/// (free variable set to 1, pivot variables back-substituted).
inline Matrix kernel_basis(Matrix m) {
    int n = m.cols();
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    int nullity = n - static_cast<int>(pivots.size());
    Matrix basis(n, nullity);
    int out = 0;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        basis.at(free, out) = GaussianRational(1);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], out) = -m.at(static_cast<int>(r), free);
        ++out;
    }
    return basis;
}

/// One exact solution of A x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve shape mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    Vec x(a.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), a.cols());
    return x;
}

/// X with A X = B, column by column; nullopt if any column is inconsistent.
inline std::optional<Matrix> solve_columns(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_columns shape mismatch");
    Matrix x(a.cols(), b.cols());
    for (int c = 0; c < b.cols(); ++c) {
        auto col = solve(a, b.column(c));
        if (!col) return std::nullopt;
        x.set_column(c, *col);
    }
    return x;
}

inline bool is_nonsingular(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

/// Incrementally maintained RREF row basis of a subspace of Q(i)^dim.
/// Deterministic: the basis depends only on the insertion sequence.
class RowSpan {
public:
    explicit RowSpan(int dim) : dim_(dim) {}

    int ambient_dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    /// Reduce v against the current basis (exact remainder).
    Vec reduce(Vec v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const GaussianRational& lead = v[pivots_[r]];
            if (lead.is_zero()) continue;
            GaussianRational f = lead;  // basis rows are pivot-normalized to 1
            for (int c = 0; c < dim_; ++c)
                if (!rows_[r][c].is_zero()) v[c] -= f * rows_[r][c];
        }
        return v;
    }

    bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

    /// Insert v; returns true when it added a new direction.
    bool add(const Vec& v) {
        if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("RowSpan dim mismatch");
        Vec w = reduce(v);
        int pivot = -1;
        for (int c = 0; c < dim_; ++c)
            if (!w[c].is_zero()) {
                pivot = c;
                break;
            }
        if (pivot < 0) return false;
        GaussianRational inv = inverse(w[pivot]);
        for (int c = 0; c < dim_; ++c) w[c] *= inv;
        // keep full RREF: eliminate the new pivot from existing rows
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            GaussianRational f = rows_[r][pivot];
            if (f.is_zero()) continue;
            for (int c = 0; c < dim_; ++c)
                if (!w[c].is_zero()) rows_[r][c] -= f * w[c];
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(w));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
        return true;
    }

    /// Basis vectors as matrix columns.
    Matrix column_basis() const {
        Matrix m(dim_, rank());
        for (int c = 0; c < rank(); ++c)
            for (int r = 0; r < dim_; ++r) m.at(r, c) = rows_[c][r];
        return m;
    }

    const std::vector<int>& pivots() const { return pivots_; }

private:
    int dim_;
    std::vector<Vec> rows_;
    std::vector<int> pivots_;
};

}  // namespace virasoro
