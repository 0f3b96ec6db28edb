#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mopr/errors.hpp"
#include "mopr/poly.hpp"
#include "mopr/rational.hpp"

namespace mopr {

/// Row-major dense matrix of rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rat>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix without_column(std::size_t col) const {
        Matrix m(rows_, cols_ - 1);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0, t = 0; j < cols_; ++j)
                if (j != col) m(i, t++) = (*this)(i, j);
        return m;
    }

    void append_row(const std::vector<Rat>& row) {
        if (rows_ == 0 && a_.empty()) cols_ = row.size();
        if (row.size() != cols_) throw DimensionMismatch("row length " + std::to_string(row.size()) +
                                                         " does not match " + std::to_string(cols_));
        a_.insert(a_.end(), row.begin(), row.end());
        ++rows_;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> a_;
};

/// Bareiss fraction-free elimination. Entries are first scaled to integers row by row,
/// so every intermediate division is exact in Z.
inline Rat det_rat(const Matrix& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);

    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    Rat scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
        scale *= Rat(l);
    }

    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return Rat(0);
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    Rat out(a[n - 1][n - 1]);
    out /= scale;
    return sign < 0 ? Rat(-out) : out;
}

/// Determinant of the matrix whose first row holds polynomials and whose remaining rows are
/// rational, by cofactor expansion along the first row.
inline Poly det_poly_bordered(const std::vector<Poly>& first_row, const Matrix& body) {
    const std::size_t n = first_row.size();
    if (n == 0) throw DimensionMismatch("empty bordered determinant");
    if (body.rows() + 1 != n || (body.rows() > 0 && body.cols() != n))
        throw DimensionMismatch("bordered determinant needs a " + std::to_string(n - 1) + "x" + std::to_string(n) +
                                " body");
    if (n == 1) return first_row[0];
    Poly out;
    for (std::size_t i = 0; i < n; ++i) {
        if (first_row[i].is_zero()) continue;
        const Rat minor = det_rat(body.without_column(i));
        if (minor == 0) continue;
        out += first_row[i] * (i % 2 == 0 ? minor : Rat(-minor));
    }
    return out;
}

namespace detail {

/// Reduced row echelon form in place with full pivot search: the pivot at each step is the
/// first nonzero entry of the remaining block in row-major order. Returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t active_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    std::vector<bool> used(active_cols, false);
    while (r < m.rows()) {
        std::optional<std::pair<std::size_t, std::size_t>> pos;
        for (std::size_t i = r; i < m.rows() && !pos; ++i)
            for (std::size_t j = 0; j < active_cols; ++j)
                if (!used[j] && m(i, j) != 0) {
                    pos = {i, j};
                    break;
                }
        if (!pos) break;
        const auto [pi, pj] = *pos;
        m.swap_rows(r, pi);
        const Rat inv = 1 / m(r, pj);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, pj) == 0) continue;
            const Rat f = m(i, pj);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        used[pj] = true;
        pivots.push_back(pj);
        ++r;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(const Matrix& m) {
    Matrix w = m;
    return detail::rref(w, w.cols()).size();
}

/// Unique solution of the square system a x = b, or nullopt when a is singular.
inline std::optional<std::vector<Rat>> solve(const Matrix& a, const std::vector<Rat>& b) {
    if (!a.is_square() || a.rows() != b.size()) throw DimensionMismatch("solve needs a square system");
    const std::size_t n = a.rows();
    Matrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    const auto pivots = detail::rref(aug, n);
    if (pivots.size() < n) return std::nullopt;
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = aug(i, n);
    return x;
}

/// A basis of {x : m x = 0}, one vector per free column, in column order.
inline std::vector<std::vector<Rat>> nullspace(const Matrix& m) {
    Matrix w = m;
    const auto pivots = detail::rref(w, w.cols());
    std::vector<bool> is_pivot(w.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < w.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(w.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -w(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace mopr
