#ifndef NORMALITY_LINALG_HPP
#define NORMALITY_LINALG_HPP

#include <cstddef>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace normality {

/*
 * Exact determinant by fraction-free (Bareiss) elimination.
 *
 * Each row is first scaled by the lcm of its denominators so the elimination
 * runs on integers; every division in the Bareiss recurrence is then exact.
 * The scaling factors are divided back out at the end.
 */
inline Rational det(const RMatrix& m) {
    if (!m.is_square())
        throw dimension_error("det: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;

    std::vector<Integer> a(n * n);
    Integer scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j)
            l = boost::multiprecision::lcm(l, denominator_of(m(i, j)));
        scale *= l;
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = numerator_of(m(i, j)) * (l / denominator_of(m(i, j)));
    }
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return Rational(at(n - 1, n - 1) * sign, scale);
}

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<std::size_t> row_reduce(RMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(r, p);
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RMatrix m) { return row_reduce(m).size(); }

/// Returns X with a·X = b. Throws singular_error carrying the rank of a.
inline RMatrix solve(const RMatrix& a, const RMatrix& b) {
    if (!a.is_square())
        throw dimension_error("solve: coefficient matrix is not square");
    if (b.rows() != a.rows())
        throw dimension_error("solve: right-hand side row count differs");
    const std::size_t n = a.rows();
    RMatrix aug(n, n + b.cols());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            aug(i, n + j) = b(i, j);
    }
    const auto pivots = row_reduce(aug);
    std::size_t rank_a = 0;
    while (rank_a < pivots.size() && pivots[rank_a] < n)
        ++rank_a;
    if (rank_a < n)
        throw singular_error(rank_a, n);
    RMatrix x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(i, j) = aug(i, n + j);
    return x;
}

enum class Side { left, right };

namespace detail {

inline RVector right_kernel_1d(const RMatrix& a) {
    RMatrix r = a;
    const auto pivots = row_reduce(r);
    const std::size_t dim = a.cols() - pivots.size();
    if (dim != 1)
        throw rank_error(dim);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col])
        ++free_col;
    RVector v(a.cols(), Orientation::column);
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
        v[pivots[i]] = -r(i, free_col);
    return v;
}

} // namespace detail

/// Spanning vector of a one-dimensional nullspace, scaled so its first nonzero
/// entry is 1. The right side gives a column v with a·v = 0, the left side a row
/// v with v·a = 0.
inline RVector nullspace_1d(const RMatrix& a, Side side) {
    if (!a.is_square())
        throw dimension_error("nullspace_1d: matrix is not square");
    RVector v = side == Side::right ? detail::right_kernel_1d(a)
                                    : detail::right_kernel_1d(a.transposed()).transposed();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) {
            const Rational lead = v[i];
            v /= lead;
            break;
        }
    return v;
}

/// The stationary distribution x of a row-stochastic matrix: x·p = x, Σx = 1.
inline RVector stationary(const RMatrix& p) {
    if (!p.is_square())
        throw dimension_error("stationary: matrix is not square");
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (p(i, j) < 0)
                throw stochasticity_error("stationary: negative entry in row " + std::to_string(i));
        if (p.row_sum(i) != 1)
            throw stochasticity_error("stationary: row " + std::to_string(i) + " sums to " +
                                      format_rational(p.row_sum(i)));
    }
    RVector x = nullspace_1d(p - RMatrix::identity(p.rows()), Side::left);
    const Rational total = x.sum();
    // A nonnegative stochastic matrix always has a nonnegative stationary vector,
    // so a unique one cannot sum to zero.
    if (total == 0)
        throw stochasticity_error("stationary: kernel vector sums to zero");
    x /= total;
    for (const auto& e : x)
        if (e < 0)
            throw stochasticity_error("stationary: negative stationary entry");
    return x;
}

} // namespace normality

#endif // NORMALITY_LINALG_HPP
