#ifndef NORMALITY_SPECTRAL_HPP
#define NORMALITY_SPECTRAL_HPP

#include "automaton.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace normality {

/// M(p,q) = (number of symbols labelling p -> q) / #A.
template <StateMachine M>
RMatrix adjacency_matrix(const M& m) {
    const std::size_t n = m.num_states();
    RMatrix adj(n, n);
    if (m.input_alphabet().empty())
        return adj;
    const Rational step(1, static_cast<long>(m.input_alphabet().size()));
    for (const auto& t : m.transitions)
        adj(t.src, t.dst) += step;
    return adj;
}

/// det(m - I) == 0. For the adjacency matrix of a strongly connected unambiguous
/// automaton the spectral radius is at most 1 and is itself an eigenvalue, so this
/// is exactly the test "spectral radius equals 1".
inline bool radius_is_one(const RMatrix& m) {
    return det(m - RMatrix::identity(m.rows())) == 0;
}

struct PerronData {
    RMatrix m;     // adjacency matrix
    RVector alpha; // right eigenvector, column
    RVector pi;    // left eigenvector, row, with sum(pi_q * alpha_q) == 1
    RMatrix p;     // Markov matrix

    /// (pi_q * alpha_q)_q, the stationary distribution of p.
    RVector state_distribution() const {
        RVector d(alpha.size(), Orientation::row);
        for (std::size_t q = 0; q < alpha.size(); ++q)
            d[q] = pi[q] * alpha[q];
        return d;
    }
};

/// P(p,q) = M(p,q) * alpha_q / alpha_p.
inline RMatrix markov_matrix(const RMatrix& m, const RVector& alpha) {
    RMatrix p(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                p(i, j) = m(i, j) * alpha[j] / alpha[i];
    return p;
}

inline RMatrix markov_matrix(const PerronData& d) { return markov_matrix(d.m, d.alpha); }

namespace detail {

inline void make_positive(RVector& v, const char* which) {
    bool any_negative = false;
    for (const auto& x : v)
        any_negative = any_negative || x < 0;
    if (any_negative)
        v *= Rational(-1);
    for (const auto& x : v)
        if (x <= 0)
            throw positivity_error(std::string("Perron vector ") + which +
                                   " has a non-positive entry; matrix is not irreducible with radius 1");
}

} // namespace detail

/// Builds PerronData from an alpha seed. Only ratios of the seed matter: pi is
/// rescaled so that sum(pi_q * alpha_q) == 1.
inline PerronData perron_data(const RMatrix& m, RVector alpha, RVector pi) {
    detail::make_positive(alpha, "alpha");
    detail::make_positive(pi, "pi");
    pi /= dot(pi, alpha);
    PerronData d{m, std::move(alpha), std::move(pi), {}};
    d.p = markov_matrix(d.m, d.alpha);
    return d;
}

/// Right and left eigenvectors for eigenvalue 1 of an irreducible matrix with
/// spectral radius 1, jointly normalized, plus the Markov matrix.
inline PerronData perron_vectors(const RMatrix& m) {
    if (!m.is_square())
        throw dimension_error("perron_vectors: matrix is not square");
    const RMatrix shifted = m - RMatrix::identity(m.rows());
    return perron_data(m, nullspace_1d(shifted, Side::right), nullspace_1d(shifted, Side::left));
}

} // namespace normality

#endif // NORMALITY_SPECTRAL_HPP
