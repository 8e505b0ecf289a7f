#pragma once

/**
 * @file linalg.hpp
 * @brief Dense exact matrices and vectors over a runtime Field.
 *
 * Elimination always pivots on the first row (scanning top-down) holding a
 * nonzero entry in the current column, so every derived object (ranks,
 * solutions, null vectors) is reproducible bit-for-bit.
 */

#include <udm/error.hpp>
#include <udm/gf.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace udm {

class Vector {
public:
    Vector(Field field, std::size_t size) : field_(std::move(field)), entries_(size) {}
    Vector(Field field, std::vector<Element> entries) : field_(std::move(field)), entries_(std::move(entries)) {}

    static Vector from_values(const Field& field, std::initializer_list<std::int64_t> values)
    {
        std::vector<Element> e;
        e.reserve(values.size());
        for (auto v : values) e.push_back(field.element(v));
        return {field, std::move(e)};
    }

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] Element operator[](std::size_t i) const { return entries_[i]; }
    Element& operator[](std::size_t i) { return entries_[i]; }
    [[nodiscard]] std::span<const Element> entries() const noexcept { return entries_; }

    [[nodiscard]] bool is_zero() const noexcept
    {
        return std::all_of(entries_.begin(), entries_.end(), [](Element e) { return e.value == 0; });
    }

    friend bool operator==(const Vector& a, const Vector& b)
    {
        return a.field_ == b.field_ && a.entries_ == b.entries_;
    }

private:
    Field field_;
    std::vector<Element> entries_;
};

class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols)
    {
    }

    Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries))
    {
        if (entries_.size() != rows_ * cols_)
            throw Error(Errc::DimensionMismatch, "entry count does not match " + std::to_string(rows_) + "x" +
                                                     std::to_string(cols_));
    }

    /// Row-major literal of canonical element encodings; all rows must have equal length.
    static Matrix from_values(const Field& field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        std::vector<Element> e;
        e.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
            for (auto v : row) e.push_back(field.element(v));
        }
        return {field, r, c, std::move(e)};
    }

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    [[nodiscard]] Element operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    Element& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    [[nodiscard]] std::span<const Element> row(std::size_t i) const
    {
        return std::span<const Element>(entries_).subspan(i * cols_, cols_);
    }
    std::span<Element> row(std::size_t i) { return std::span<Element>(entries_).subspan(i * cols_, cols_); }

    [[nodiscard]] std::span<const Element> entries() const noexcept { return entries_; }

    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Element> entries_;
};

inline Matrix identity(const Field& field, std::size_t n)
{
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
}

/// Ones on the anti-diagonal: [J]_{i,n-1-i} = 1.
inline Matrix anti_identity(const Field& field, std::size_t n)
{
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, n - 1 - i) = field.one();
    return m;
}

inline Matrix transpose(const Matrix& a)
{
    Matrix t(a.field(), a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline Matrix matmul(const Matrix& a, const Matrix& b)
{
    if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "matmul over different fields");
    if (a.cols() != b.rows())
        throw Error(Errc::DimensionMismatch, "matmul " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                                 " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const Field& f = a.field();
    Matrix c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Element aik = a(i, k);
            if (aik.value == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
        }
    return c;
}

inline Vector matvec(const Matrix& a, const Vector& v)
{
    if (!(a.field() == v.field())) throw Error(Errc::FieldMismatch, "matvec over different fields");
    if (a.cols() != v.size())
        throw Error(Errc::DimensionMismatch,
                    "matvec with " + std::to_string(a.cols()) + " columns and length " + std::to_string(v.size()));
    const Field& f = a.field();
    Vector out(f, a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Element acc = f.zero();
        for (std::size_t j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a(i, j), v[j]));
        out[i] = acc;
    }
    return out;
}

namespace detail {

/**
 * Reduced row echelon form in place over the first `col_limit` columns.
 * Row operations touch every column, so augmented columns ride along.
 * Returns the pivot column of each pivot row, in row order.
 */
inline std::vector<std::size_t> rref_in_place(Matrix& m, std::size_t col_limit)
{
    const Field& f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < col_limit && r < m.rows(); ++c) {
        std::size_t pr = r;
        while (pr < m.rows() && m(pr, c).value == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pr, j), m(r, j));
        const Element scale = f.inv(m(r, c));
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), scale);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).value == 0) continue;
            const Element factor = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Row rank by forward elimination. Empty matrices have rank 0.
inline std::size_t rank(const Matrix& a)
{
    Matrix m = a;
    const Field& f = m.field();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pr = r;
        while (pr < m.rows() && m(pr, c).value == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != r)
            for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(pr, j), m(r, j));
        const Element pinv = f.inv(m(r, c));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c).value == 0) continue;
            const Element factor = f.mul(m(i, c), pinv);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        ++r;
    }
    return r;
}

/**
 * Unique solution of A x = y for an m x n matrix A of column rank n (m >= n).
 * Redundant rows are checked exactly. Throws RankDeficient or Inconsistent.
 */
inline Vector solve(const Matrix& a, const Vector& y)
{
    if (!(a.field() == y.field())) throw Error(Errc::FieldMismatch, "solve over different fields");
    if (a.rows() != y.size())
        throw Error(Errc::DimensionMismatch,
                    "solve with " + std::to_string(a.rows()) + " rows and rhs length " + std::to_string(y.size()));
    const std::size_t n = a.cols();
    Matrix aug(a.field(), a.rows(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = y[i];
    }
    const auto pivots = detail::rref_in_place(aug, n);
    if (pivots.size() < n)
        throw Error(Errc::RankDeficient, "rank " + std::to_string(pivots.size()) + " < " + std::to_string(n));
    for (std::size_t i = n; i < aug.rows(); ++i)
        if (aug(i, n).value != 0) throw Error(Errc::Inconsistent, "row " + std::to_string(i) + " has no solution");
    Vector x(a.field(), n);
    for (std::size_t j = 0; j < n; ++j) x[j] = aug(j, n);
    return x;
}

/// Inverse of a square matrix; throws Singular.
inline Matrix inverse(const Matrix& a)
{
    if (!a.is_square()) throw Error(Errc::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix aug(a.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = a.field().one();
    }
    if (detail::rref_in_place(aug, n).size() < n) throw Error(Errc::Singular, "matrix is not invertible");
    Matrix inv(a.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Kronecker product; block (i,j) is [A]_{i,j} * B.
inline Matrix kron(const Matrix& a, const Matrix& b)
{
    if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "kron over different fields");
    const Field& f = a.field();
    Matrix k(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Element aij = a(i, j);
            if (aij.value == 0) continue;
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t c = 0; c < b.cols(); ++c)
                    k(i * b.rows() + r, j * b.cols() + c) = f.mul(aij, b(r, c));
        }
    return k;
}

/// First k[0] rows of matrices[0], then the first k[1] rows of matrices[1], and so on.
inline Matrix stack_prefixes(std::span<const Matrix> matrices, std::span<const std::size_t> ks)
{
    if (matrices.empty()) throw Error(Errc::DimensionMismatch, "no matrices to stack");
    if (matrices.size() != ks.size())
        throw Error(Errc::DimensionMismatch, std::to_string(ks.size()) + " prefix lengths for " +
                                                 std::to_string(matrices.size()) + " matrices");
    const Field& f = matrices.front().field();
    const std::size_t n = matrices.front().cols();
    std::size_t total = 0;
    for (std::size_t l = 0; l < matrices.size(); ++l) {
        if (!(matrices[l].field() == f)) throw Error(Errc::FieldMismatch, "stacking matrices over different fields");
        if (matrices[l].cols() != n || ks[l] > matrices[l].rows())
            throw Error(Errc::DimensionMismatch, "prefix length " + std::to_string(ks[l]) + " invalid for matrix " +
                                                     std::to_string(l));
        total += ks[l];
    }
    std::vector<Element> e;
    e.reserve(total * n);
    for (std::size_t l = 0; l < matrices.size(); ++l)
        for (std::size_t i = 0; i < ks[l]; ++i) {
            auto r = matrices[l].row(i);
            e.insert(e.end(), r.begin(), r.end());
        }
    return {f, total, n, std::move(e)};
}

/// Rows [first, first + count) of `a`.
inline Matrix row_block(const Matrix& a, std::size_t first, std::size_t count)
{
    if (first + count > a.rows()) throw Error(Errc::DimensionMismatch, "row block out of range");
    auto all = a.entries();
    std::vector<Element> e(all.begin() + static_cast<std::ptrdiff_t>(first * a.cols()),
                           all.begin() + static_cast<std::ptrdiff_t>((first + count) * a.cols()));
    return {a.field(), count, a.cols(), std::move(e)};
}

/// Row vector b^T B.
inline Vector left_multiply(const Vector& b, const Matrix& m)
{
    return matvec(transpose(m), b);
}

/**
 * A nonzero b with b^T B = 0 for a matrix with more rows than columns.
 *
 * Eliminates B^T; the highest-index free variable is set to 1 and every other
 * free variable to 0.
 */
inline Vector left_null_vector(const Matrix& b)
{
    if (b.rows() <= b.cols())
        throw Error(Errc::DimensionMismatch, "left null vector needs more rows than columns, got " +
                                                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    const Field& f = b.field();
    Matrix bt = transpose(b);
    const auto pivots = detail::rref_in_place(bt, bt.cols());
    std::vector<bool> is_pivot(bt.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::size_t free_col = bt.cols();
    while (is_pivot[free_col - 1]) --free_col;
    --free_col;
    Vector x(f, bt.cols());
    x[free_col] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.neg(bt(r, free_col));
    return x;
}

inline bool is_lower_triangular(const Matrix& a)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j).value != 0) return false;
    return true;
}

inline bool is_upper_triangular(const Matrix& a)
{
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < i && j < a.cols(); ++j)
            if (a(i, j).value != 0) return false;
    return true;
}

inline bool has_nonzero_diagonal(const Matrix& a)
{
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (a(i, i).value == 0) return false;
    return true;
}

}  // namespace udm
