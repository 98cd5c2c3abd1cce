#ifndef NORMALITY_DECISION_HPP
#define NORMALITY_DECISION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "automata.hpp"
#include "automaton.hpp"
#include "construction.hpp"
#include "error.hpp"
#include "spectral.hpp"
#include "weighted.hpp"

namespace normality {

/// Everything computed for one strongly connected component with a final state
/// and spectral radius 1.
struct ComponentAnalysis {
    Transducer component; // the component alone, states renumbered
    PerronData perron;
    NormalizedTransducer normalized;
    WeightedTransitionTable weights;
    ConstructionMatrices matrices;
    WeightedAutomaton frequency;
};

inline Transducer component_transducer(const Transducer& t, const SccDecomposition& scc, std::size_t id) {
    std::vector<bool> keep(t.num_states(), false);
    for (State s : scc.components.at(id).members)
        keep[s] = true;
    return restrict_to(t, keep);
}

inline bool component_radius_one(const Transducer& t, const SccDecomposition& scc, std::size_t id) {
    if (scc.components.at(id).is_trivial)
        return false;
    return radius_is_one(adjacency_matrix(component_transducer(t, scc, id)));
}

/// Runs the frequency construction on component id of t. Throws automaton_error
/// when the component has no final state or a spectral radius below 1, and
/// no_infinite_output when its output would be finite.
inline ComponentAnalysis analyze_component(const Transducer& t, const SccDecomposition& scc, std::size_t id) {
    const auto& c = scc.components.at(id);
    if (!c.contains_final)
        throw automaton_error("component " + std::to_string(id) + " has no final state");
    ComponentAnalysis a;
    a.component = component_transducer(t, scc, id);
    const RMatrix m = adjacency_matrix(a.component);
    if (c.is_trivial || !radius_is_one(m))
        throw automaton_error("component " + std::to_string(id) + " has spectral radius below 1");
    a.perron = perron_vectors(m);
    std::tie(a.normalized, a.weights) = normalize(a.component, a.perron.alpha);
    a.matrices = build_matrices(a.normalized, a.weights);
    a.frequency = build_frequency_automaton(a.matrices, a.normalized);
    return a;
}

struct FrequencyWitness {
    Word word;
    Rational computed; // limiting frequency of word in the output
    Rational expected; // #B^-|word|
};

struct SccReport {
    std::size_t id = 0;
    std::vector<State> states; // indices into the trimmed transducer
    std::vector<std::string> names;
    bool contains_final = false;
    bool radius_one = false;
    bool analyzed = false;
    bool preserves = true;
    bool no_infinite_output = false;
    std::optional<FrequencyWitness> witness;
};

struct Verdict {
    bool preserves = true;
    /// No component is both final and of radius 1: no normal sequence is accepted
    /// and the positive answer is vacuous.
    bool empty_normal_domain = false;
    UnambiguityResult validation;
    Transducer trimmed;
    std::vector<SccReport> scc_reports;
};

/*
 * Decides whether an unambiguous transducer preserves normality.
 *
 * The transducer is trimmed and checked for unambiguity. Only components with a
 * final state and spectral radius 1 can carry the run of a normal input, so the
 * answer is the conjunction over those components of "the frequency automaton
 * equals the uniform Bernoulli automaton over the output alphabet".
 */
inline Verdict preserves_normality(const Transducer& t) {
    Verdict v;
    v.trimmed = trim(t);
    if (v.trimmed.empty())
        throw empty_language();
    v.validation = check_unambiguous(input_automaton(v.trimmed));
    if (!v.validation.unambiguous)
        throw ambiguous_error(*v.validation.witness);

    const auto scc = scc_decompose(v.trimmed);
    bool any_analyzed = false;
    for (std::size_t id = 0; id < scc.size(); ++id) {
        const auto& c = scc.components[id];
        SccReport r;
        r.id = id;
        r.states = c.members;
        for (State s : c.members)
            r.names.push_back(v.trimmed.states[s]);
        r.contains_final = c.contains_final;
        if (c.contains_final)
            r.radius_one = component_radius_one(v.trimmed, scc, id);
        if (r.contains_final && r.radius_one) {
            r.analyzed = true;
            any_analyzed = true;
            try {
                const auto a = analyze_component(v.trimmed, scc, id);
                const auto eq = equivalent(a.frequency, bernoulli_automaton(v.trimmed.output));
                if (!eq.equivalent) {
                    r.preserves = false;
                    const Word& w = *eq.witness;
                    r.witness = FrequencyWitness{
                        w, weight(a.frequency, w),
                        weight(bernoulli_automaton(v.trimmed.output), w)};
                }
            } catch (const no_infinite_output&) {
                r.preserves = false;
                r.no_infinite_output = true;
            }
        }
        v.preserves = v.preserves && r.preserves;
        v.scc_reports.push_back(std::move(r));
    }
    v.empty_normal_domain = !any_analyzed;
    return v;
}

/// Weight of every word of length <= max_len, in length-lexicographic order.
inline std::vector<std::pair<Word, Rational>> block_table(const WeightedAutomaton& wa, std::size_t max_len) {
    std::vector<std::pair<Word, Rational>> table;
    for (std::size_t len = 0; len <= max_len; ++len)
        for (auto& w : words_of_length(wa.alphabet.size(), len)) {
            Rational x = weight(wa, w);
            table.emplace_back(std::move(w), std::move(x));
        }
    return table;
}

/// Limiting frequency of every output block of length <= max_len for component
/// scc_id (numbered on the trimmed transducer) on normal inputs.
inline std::vector<std::pair<Word, Rational>> block_frequencies(const Transducer& t, std::size_t scc_id,
                                                                std::size_t max_len) {
    const auto trimmed = trim(t);
    const auto scc = scc_decompose(trimmed);
    if (scc_id >= scc.size())
        throw automaton_error("no component " + std::to_string(scc_id));
    return block_table(analyze_component(trimmed, scc, scc_id).frequency, max_len);
}

/// Components of trim(t) with a final state and spectral radius 1.
inline std::vector<std::size_t> analyzable_components(const Transducer& trimmed, const SccDecomposition& scc) {
    std::vector<std::size_t> out;
    for (std::size_t id = 0; id < scc.size(); ++id)
        if (scc.components[id].contains_final && component_radius_one(trimmed, scc, id))
            out.push_back(id);
    return out;
}

} // namespace normality

#endif // NORMALITY_DECISION_HPP
