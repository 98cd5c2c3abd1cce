#ifndef NORMALITY_CONSTRUCTION_HPP
#define NORMALITY_CONSTRUCTION_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "weighted.hpp"

namespace normality {

/// Transition of a normalized transducer. Missing input marks the empty-input
/// edges inside a split chain; missing output marks an empty output.
struct NormalizedTransition {
    State src;
    std::optional<Symbol> input;
    std::optional<Symbol> output;
    State dst;
};

/// Transducer whose output labels have length at most one. States
/// [0, original_states) are the original ones in their original order; the
/// chain states created by splitting follow.
struct NormalizedTransducer {
    std::vector<std::string> states;
    Alphabet input;
    Alphabet output;
    std::vector<NormalizedTransition> transitions;
    std::size_t original_states = 0;
    /// For chain state original_states + k, the original transition it splits.
    std::vector<TransducerTransition> chain_parent;

    std::size_t num_states() const noexcept { return states.size(); }
    std::size_t chain_states() const noexcept { return chain_parent.size(); }
};

/// Weight of each normalized transition, parallel to NormalizedTransducer::transitions.
struct WeightedTransitionTable {
    std::vector<Rational> weights;
};

struct ConstructionMatrices {
    RMatrix e;              // empty-output, input-consuming transitions
    RMatrix e_star;         // (I - E)^-1
    std::vector<RMatrix> d; // per output symbol
    RMatrix p_hat;          // sum_b E* D_b
    RVector pi_hat;         // stationary distribution of p_hat
};

namespace detail {

inline std::string fresh_state_name(const std::vector<std::string>& taken, std::size_t ordinal) {
    std::string name = std::to_string(ordinal);
    while (std::find(taken.begin(), taken.end(), name) != taken.end())
        name += '\'';
    return name;
}

} // namespace detail

/*
 * Splits every transition p -a|b1...bn-> q with n >= 2 into
 *   p -a|b1-> r1 -ε|b2-> r2 ... r(n-1) -ε|bn-> q
 * and weights the result.
 *
 * A chain state inherits alpha from the target q of the split transition: its
 * future set is exactly that of q, since the rest of the chain reads nothing.
 * Input-consuming transitions p -> q' get alpha_q' / (#A alpha_p); chain edges
 * reading nothing get 1. Chains are created ordered by (source, input, target,
 * output) so matrix layouts are reproducible.
 */
inline std::pair<NormalizedTransducer, WeightedTransitionTable> normalize(const Transducer& t,
                                                                         const RVector& alpha) {
    if (alpha.size() != t.num_states())
        throw dimension_error("normalize: alpha length differs from the state count");
    NormalizedTransducer nt;
    nt.states = t.states;
    nt.input = t.input;
    nt.output = t.output;
    nt.original_states = t.num_states();

    std::vector<std::size_t> long_ones;
    for (std::size_t i = 0; i < t.transitions.size(); ++i)
        if (t.transitions[i].output.size() >= 2)
            long_ones.push_back(i);
    std::stable_sort(long_ones.begin(), long_ones.end(), [&](std::size_t x, std::size_t y) {
        const auto& a = t.transitions[x];
        const auto& b = t.transitions[y];
        return std::tie(a.src, a.input, a.dst, a.output) < std::tie(b.src, b.input, b.dst, b.output);
    });

    std::vector<Rational> state_alpha(alpha.begin(), alpha.end());
    std::vector<State> chain_start(t.transitions.size(), 0);
    for (auto i : long_ones) {
        const auto& tr = t.transitions[i];
        chain_start[i] = nt.states.size();
        for (std::size_t k = 1; k < tr.output.size(); ++k) {
            nt.states.push_back(detail::fresh_state_name(nt.states, nt.states.size() + 1));
            nt.chain_parent.push_back(tr);
            state_alpha.push_back(alpha[tr.dst]);
        }
    }

    const Rational per_symbol(1, static_cast<long>(std::max<std::size_t>(t.input.size(), 1)));
    WeightedTransitionTable wt;
    auto consuming_weight = [&](State src, State dst) {
        return per_symbol * state_alpha[dst] / state_alpha[src];
    };
    for (std::size_t i = 0; i < t.transitions.size(); ++i) {
        const auto& tr = t.transitions[i];
        if (tr.output.size() <= 1) {
            std::optional<Symbol> out;
            if (!tr.output.empty())
                out = tr.output.front();
            nt.transitions.push_back({tr.src, tr.input, out, tr.dst});
            wt.weights.push_back(consuming_weight(tr.src, tr.dst));
            continue;
        }
        const State first = chain_start[i];
        const std::size_t len = tr.output.size();
        nt.transitions.push_back({tr.src, tr.input, tr.output[0], first});
        wt.weights.push_back(consuming_weight(tr.src, first));
        for (std::size_t k = 1; k < len; ++k) {
            const State from = first + k - 1;
            const State to = k + 1 < len ? first + k : tr.dst;
            nt.transitions.push_back({from, std::nullopt, tr.output[k], to});
            wt.weights.push_back(1);
        }
    }
    return {std::move(nt), std::move(wt)};
}

/// E, E* = (I - E)^-1, D_b, P̂ = sum_b E* D_b and its stationary distribution.
/// Throws no_infinite_output when no output is ever produced with probability one.
inline ConstructionMatrices build_matrices(const NormalizedTransducer& nt, const WeightedTransitionTable& wt) {
    const std::size_t n = nt.num_states();
    if (wt.weights.size() != nt.transitions.size())
        throw dimension_error("build_matrices: weight table does not match transitions");
    const bool any_output = std::any_of(nt.transitions.begin(), nt.transitions.end(),
                                        [](const NormalizedTransition& t) { return t.output.has_value(); });
    if (!any_output)
        throw no_infinite_output();

    ConstructionMatrices cm;
    cm.e = RMatrix(n, n);
    cm.d.assign(nt.output.size(), RMatrix(n, n));
    for (std::size_t i = 0; i < nt.transitions.size(); ++i) {
        const auto& tr = nt.transitions[i];
        if (tr.output)
            cm.d[*tr.output](tr.src, tr.dst) += wt.weights[i];
        else if (tr.input)
            cm.e(tr.src, tr.dst) += wt.weights[i];
    }
    const RMatrix id = RMatrix::identity(n);
    try {
        cm.e_star = solve(id - cm.e, id);
    } catch (const singular_error&) {
        throw no_infinite_output();
    }
    cm.p_hat = RMatrix(n, n);
    for (const auto& db : cm.d)
        cm.p_hat += cm.e_star * db;
    cm.pi_hat = stationary(cm.p_hat);
    return cm;
}

/// Initial vector π̂, mu(b) = E* D_b, final vector all ones.
inline WeightedAutomaton build_frequency_automaton(const ConstructionMatrices& cm,
                                                   const NormalizedTransducer& nt) {
    WeightedAutomaton wa;
    wa.alphabet = nt.output;
    wa.initial = cm.pi_hat;
    wa.final = RVector::ones(nt.num_states(), Orientation::column);
    for (const auto& db : cm.d)
        wa.mu.push_back(cm.e_star * db);
    return wa;
}

} // namespace normality

#endif // NORMALITY_CONSTRUCTION_HPP
