#ifndef TLJ_LINALG_HPP
#define TLJ_LINALG_HPP

#include <optional>
#include <vector>

#include "tlj/errors.hpp"

namespace tlj {

/// Dense exact linear algebra over a field scalar (RatScalar or CycloScalar).
/// Sizes here are tiny (coloring bases, Catalan bases), so plain Gaussian
/// elimination with exact arithmetic is the whole story.
template <class R>
using Matrix = std::vector<std::vector<R>>;

template <class R>
Matrix<R> matmul(const Matrix<R>& a, const Matrix<R>& b) {
    if (a.empty() || b.empty()) return {};
    const size_t n = a.size(), k = b.size(), m = b[0].size();
    if (a[0].size() != k) throw ShapeMismatch("matmul shape mismatch");
    Matrix<R> out(n, std::vector<R>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) {
                if (b[t][j].is_zero()) continue;
                out[i][j] += a[i][t] * b[t][j];
            }
        }
    return out;
}

template <class R>
bool is_identity(const Matrix<R>& a) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != a.size()) return false;
        for (size_t j = 0; j < a[i].size(); ++j) {
            if (i == j ? !a[i][j].is_one() : !a[i][j].is_zero()) return false;
        }
    }
    return true;
}

/// Row-reduces a copy; returns the rank.
template <class R>
int rank(Matrix<R> m) {
    int r = 0;
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    for (size_t col = 0; col < cols && static_cast<size_t>(r) < rows; ++col) {
        size_t pivot = rows;
        for (size_t i = static_cast<size_t>(r); i < rows; ++i)
            if (!m[i][col].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == rows) continue;
        std::swap(m[static_cast<size_t>(r)], m[pivot]);
        R inv = m[static_cast<size_t>(r)][col].inv();
        for (size_t j = col; j < cols; ++j)
            m[static_cast<size_t>(r)][j] = m[static_cast<size_t>(r)][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == static_cast<size_t>(r) || m[i][col].is_zero()) continue;
            R f = m[i][col];
            for (size_t j = col; j < cols; ++j)
                m[i][j] = m[i][j] - f * m[static_cast<size_t>(r)][j];
        }
        ++r;
    }
    return r;
}

/// Solves A x = b when the solution exists and is unique; nullopt otherwise.
/// A may be overdetermined.
template <class R>
std::optional<std::vector<R>> solve_unique(const Matrix<R>& a, const std::vector<R>& b) {
    const size_t rows = a.size();
    if (rows != b.size()) throw ShapeMismatch("solve: rhs length mismatch");
    const size_t cols = rows ? a[0].size() : 0;
    Matrix<R> m = a;
    std::vector<R> rhs = b;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t pivot = rows;
        for (size_t i = r; i < rows; ++i)
            if (!m[i][col].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        std::swap(rhs[r], rhs[pivot]);
        R inv = m[r][col].inv();
        for (size_t j = col; j < cols; ++j) m[r][j] = m[r][j] * inv;
        rhs[r] = rhs[r] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][col].is_zero()) continue;
            R f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
            rhs[i] = rhs[i] - f * rhs[r];
        }
        pivot_col.push_back(col);
        ++r;
    }
    // Inconsistent rows?
    for (size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) return std::nullopt;
    // Unique iff every column is a pivot column.
    if (pivot_col.size() != cols) return std::nullopt;
    std::vector<R> x(cols);
    for (size_t i = 0; i < cols; ++i) x[i] = rhs[i];
    return x;
}

/// Basis of the right nullspace of a (vectors x with a x = 0); `one` supplies
/// the ring's multiplicative identity for the free-variable unit entries.
template <class R>
Matrix<R> nullspace(const Matrix<R>& a, const R& one) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    Matrix<R> m = a;
    std::vector<long> pivot_of_col(cols, -1);
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t pivot = rows;
        for (size_t i = r; i < rows; ++i)
            if (!m[i][col].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == rows) continue;
        std::swap(m[r], m[pivot]);
        R inv = m[r][col].inv();
        for (size_t j = col; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][col].is_zero()) continue;
            R f = m[i][col];
            for (size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivot_of_col[col] = static_cast<long>(r);
        ++r;
    }
    Matrix<R> basis;
    for (size_t free_col = 0; free_col < cols; ++free_col) {
        if (pivot_of_col[free_col] >= 0) continue;
        std::vector<R> v(cols);
        v[free_col] = one;
        for (size_t col = 0; col < cols; ++col) {
            long pr = pivot_of_col[col];
            if (pr >= 0 && !m[static_cast<size_t>(pr)][free_col].is_zero())
                v[col] = R{} - m[static_cast<size_t>(pr)][free_col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Exact inverse; nullopt when singular.
template <class R>
std::optional<Matrix<R>> inverse(const Matrix<R>& a) {
    const size_t n = a.size();
    if (n == 0) return Matrix<R>{};
    // Derive the ring's one from any nonzero entry.
    R one{};
    bool found = false;
    for (const auto& row : a) {
        if (row.size() != n) throw ShapeMismatch("inverse: non-square matrix");
        for (const auto& x : row)
            if (!x.is_zero()) {
                one = x * x.inv();
                found = true;
                break;
            }
        if (found) break;
    }
    if (!found) return std::nullopt;

    Matrix<R> m = a;
    Matrix<R> inv(n, std::vector<R>(n));
    for (size_t i = 0; i < n; ++i) inv[i][i] = one;
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = n;
        for (size_t i = col; i < n; ++i)
            if (!m[i][col].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot == n) return std::nullopt;
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        R pinv = m[col][col].inv();
        for (size_t j = 0; j < n; ++j) {
            m[col][j] = m[col][j] * pinv;
            inv[col][j] = inv[col][j] * pinv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            R f = m[i][col];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] = m[i][j] - f * m[col][j];
                inv[i][j] = inv[i][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace tlj

#endif
