#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "planarmap/field.hpp"
#include "planarmap/unipoly.hpp"

namespace planarmap {

/// Dense row-major matrix over a prime field.
class Matrix {
public:
    Matrix(Field f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
        : field_(f), rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows * cols) fail(ErrorKind::InvalidArgument, "matrix entry count mismatch");
    }
    static Matrix identity(Field f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix from_rows(Field f, std::size_t cols, const std::vector<std::vector<Elem>>& rows) {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = j < rows[i].size() ? rows[i][j] : 0;
        return m;
    }
    template <class R>
    static Matrix random(Field f, std::size_t rows, std::size_t cols, R& rng) {
        Matrix m(f, rows, cols);
        for (auto& x : m.a_) x = f.random(rng);
        return m;
    }

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Elem& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * cols_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * cols_ + j]; }
    std::span<Elem> row(std::size_t i) noexcept { return {a_.data() + i * cols_, cols_}; }
    std::span<const Elem> row(std::size_t i) const noexcept { return {a_.data() + i * cols_, cols_}; }
    std::vector<Elem> row_vector(std::size_t i) const { return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_}; }
    std::vector<Elem> col_vector(std::size_t j) const {
        std::vector<Elem> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    const std::vector<Elem>& data() const noexcept { return a_; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) fail(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
        const Field& f = a.field_;
        Matrix c(f, a.rows_, b.cols_);
        std::vector<std::uint64_t> acc(b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            unsigned pending = 0;
            for (std::size_t k = 0; k < a.cols_; ++k) {
                std::uint64_t x = a(i, k);
                if (!x) continue;
                const Elem* br = b.a_.data() + k * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += x * br[j];
                if (++pending == 8) {
                    for (auto& v : acc) v = f.reduce(v);
                    pending = 0;
                }
            }
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.reduce(acc[j]);
        }
        return c;
    }

    std::vector<Elem> apply(std::span<const Elem> v) const {
        std::vector<Elem> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = dot(row(i), v);
        return out;
    }

    Elem dot(std::span<const Elem> a, std::span<const Elem> b) const noexcept {
        std::uint64_t acc = 0;
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            acc += static_cast<std::uint64_t>(a[i]) * b[i];
            if ((i & 7) == 7) acc = field_.reduce(acc);
        }
        return field_.reduce(acc);
    }

    /// Stacks rows of b under a.
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) fail(ErrorKind::InvalidArgument, "vstack column mismatch");
        Matrix m(a.field_, a.rows_ + b.rows_, a.cols_);
        std::copy(a.a_.begin(), a.a_.end(), m.a_.begin());
        std::copy(b.a_.begin(), b.a_.end(), m.a_.begin() + static_cast<std::ptrdiff_t>(a.a_.size()));
        return m;
    }

    void append_row(std::span<const Elem> r) {
        if (r.size() != cols_) fail(ErrorKind::InvalidArgument, "append_row length mismatch");
        a_.insert(a_.end(), r.begin(), r.end());
        ++rows_;
    }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref_in_place() {
        const Field& f = field_;
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = rows_;
            for (std::size_t i = r; i < rows_; ++i)
                if ((*this)(i, c)) {
                    piv = i;
                    break;
                }
            if (piv == rows_) continue;
            if (piv != r)
                std::swap_ranges(a_.begin() + static_cast<std::ptrdiff_t>(piv * cols_),
                                 a_.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols_),
                                 a_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
            Elem* pr = a_.data() + r * cols_;
            Elem inv = f.inv(pr[c]);
            for (std::size_t j = c; j < cols_; ++j) pr[j] = f.mul(pr[j], inv);
            // Gather the nonzero tail of the pivot row once.
            std::vector<std::size_t> nz;
            for (std::size_t j = c + 1; j < cols_; ++j)
                if (pr[j]) nz.push_back(j);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                Elem* ri = a_.data() + i * cols_;
                Elem x = ri[c];
                if (!x) continue;
                std::uint64_t nx = f.p() - x;
                ri[c] = 0;
                for (std::size_t j : nz) ri[j] = f.reduce(ri[j] + nx * pr[j]);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    /// Reduced row echelon form with zero rows removed.
    Matrix rref() const {
        Matrix m = *this;
        auto piv = m.rref_in_place();
        m.a_.resize(piv.size() * cols_);
        m.rows_ = piv.size();
        return m;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref_in_place().size();
    }

    /// Basis of the right kernel {v : M v = 0}, one vector per row.
    Matrix nullspace() const {
        Matrix m = *this;
        auto piv = m.rref_in_place();
        std::vector<char> is_piv(cols_, 0);
        for (auto c : piv) is_piv[c] = 1;
        Matrix ns(field_, cols_ - piv.size(), cols_);
        std::size_t k = 0;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_piv[free]) continue;
            ns(k, free) = 1;
            for (std::size_t i = 0; i < piv.size(); ++i) ns(k, piv[i]) = field_.neg(m(i, free));
            ++k;
        }
        return ns;
    }

    /// Row space basis (RREF rows).
    Matrix row_space() const { return rref(); }

    /// One solution x of M x = b.
    std::vector<Elem> solve(std::span<const Elem> b) const {
        if (b.size() != rows_) fail(ErrorKind::InvalidArgument, "solve rhs length mismatch");
        Matrix aug(field_, rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        auto piv = aug.rref_in_place();
        if (!piv.empty() && piv.back() == cols_) fail(ErrorKind::Inconsistent, "linear system has no solution");
        std::vector<Elem> x(cols_, 0);
        for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, cols_);
        return x;
    }

    /// Inverse of a square matrix; throws SingularSubstitution if singular.
    Matrix inverse() const {
        if (rows_ != cols_) fail(ErrorKind::InvalidArgument, "inverse of non-square matrix");
        std::size_t n = rows_;
        Matrix aug(field_, n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
            aug(i, n + i) = 1;
        }
        auto piv = aug.rref_in_place();
        if (piv.size() < n || piv[n - 1] != n - 1) fail(ErrorKind::SingularSubstitution, "matrix is singular");
        Matrix inv(field_, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
        return inv;
    }

    Elem determinant() const {
        if (rows_ != cols_) fail(ErrorKind::InvalidArgument, "determinant of non-square matrix");
        Matrix m = *this;
        const Field& f = field_;
        std::size_t n = rows_;
        Elem det = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = n;
            for (std::size_t i = c; i < n; ++i)
                if (m(i, c)) {
                    piv = i;
                    break;
                }
            if (piv == n) return 0;
            if (piv != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
                det = f.neg(det);
            }
            det = f.mul(det, m(c, c));
            Elem inv = f.inv(m(c, c));
            for (std::size_t i = c + 1; i < n; ++i) {
                Elem x = f.mul(m(i, c), inv);
                if (!x) continue;
                for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(x, m(c, j)));
            }
        }
        return det;
    }

    /// Characteristic polynomial det(tI - M) via Hessenberg reduction.
    UniPoly charpoly() const {
        if (rows_ != cols_) fail(ErrorKind::InvalidArgument, "charpoly of non-square matrix");
        const Field& f = field_;
        std::size_t n = rows_;
        Matrix h = *this;
        // Reduce to upper Hessenberg form by similarity transforms.
        for (std::size_t c = 0; c + 2 < n; ++c) {
            std::size_t piv = n;
            for (std::size_t i = c + 1; i < n; ++i)
                if (h(i, c)) {
                    piv = i;
                    break;
                }
            if (piv == n) continue;
            if (piv != c + 1) {
                for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
                for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, c + 1));
            }
            Elem inv = f.inv(h(c + 1, c));
            for (std::size_t i = c + 2; i < n; ++i) {
                Elem x = f.mul(h(i, c), inv);
                if (!x) continue;
                // row_i -= x row_{c+1}; col_{c+1} += x col_i
                std::uint64_t nx = f.p() - x;
                for (std::size_t j = 0; j < n; ++j) h(i, j) = f.reduce(h(i, j) + nx * h(c + 1, j));
                for (std::size_t k = 0; k < n; ++k) h(k, c + 1) = f.reduce(h(k, c + 1) + static_cast<std::uint64_t>(x) * h(k, i));
            }
        }
        // Recurrence on leading principal submatrices of the Hessenberg form.
        std::vector<UniPoly> p;
        p.reserve(n + 1);
        p.push_back(UniPoly::constant(f, 1));
        for (std::size_t m = 1; m <= n; ++m) {
            std::size_t k = m - 1;
            UniPoly cur = UniPoly(f, {f.neg(h(k, k)), 1}) * p[m - 1];
            Elem prod = 1;
            for (std::size_t i = 1; i <= k; ++i) {
                prod = f.mul(prod, h(k - i + 1, k - i));
                Elem coef = f.mul(prod, h(k - i, k));
                if (coef) cur = cur - p[k - i].scaled(coef);
            }
            p.push_back(std::move(cur));
        }
        return p[n];
    }

private:
    Field field_;
    std::size_t rows_, cols_;
    std::vector<Elem> a_;
};

/// Basis (RREF rows) of the intersection of two row spaces.
inline Matrix intersect_row_spaces(const Matrix& a, const Matrix& b) {
    // v = x A = y B  <=>  [x, y] in left kernel of [A; -B]
    const Field& f = a.field();
    std::size_t n = a.cols();
    Matrix stacked(f, n, a.rows() + b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) stacked(j, i) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j) stacked(j, a.rows() + i) = f.neg(b(i, j));
    Matrix ker = stacked.nullspace();
    Matrix out(f, 0, n);
    for (std::size_t k = 0; k < ker.rows(); ++k) {
        std::vector<Elem> v(n, 0);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Elem x = ker(k, i);
            if (!x) continue;
            for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(x, a(i, j)));
        }
        out.append_row(v);
    }
    return out.rref();
}

/// Basis (RREF rows) of the sum of two row spaces.
inline Matrix sum_row_spaces(const Matrix& a, const Matrix& b) { return Matrix::vstack(a, b).rref(); }

}  // namespace planarmap
