#ifndef NORMALITY_SELECTION_HPP
#define NORMALITY_SELECTION_HPP

#include <vector>

#include "automata.hpp"
#include "automaton.hpp"
#include "error.hpp"

namespace normality {

enum class SelectionMode { oblivious, nonoblivious };

namespace detail {

inline void require_complete_dfa(const Automaton& dfa) {
    if (!is_deterministic(dfa))
        throw automaton_error("selector: automaton is not deterministic");
    if (!is_complete(dfa))
        throw automaton_error("selector: automaton is not complete");
}

/// delta[state][symbol]
inline std::vector<std::vector<State>> transition_table(const Automaton& dfa) {
    std::vector<std::vector<State>> delta(dfa.num_states(), std::vector<State>(dfa.alphabet.size()));
    for (const auto& t : dfa.transitions)
        delta[t.src][t.symbol] = t.dst;
    return delta;
}

inline Transducer make_selector(const Automaton& dfa, SelectionMode mode) {
    require_complete_dfa(dfa);
    const auto accepting = membership(dfa, dfa.final);
    Transducer s;
    s.states = dfa.states;
    s.input = dfa.alphabet;
    s.output = dfa.alphabet;
    s.initial = dfa.initial;
    for (State q = 0; q < dfa.num_states(); ++q)
        s.final.push_back(q);
    for (const auto& t : dfa.transitions) {
        const bool copy = mode == SelectionMode::oblivious ? accepting[t.src] : accepting[t.dst];
        s.transitions.push_back({t.src, t.symbol, copy ? Word{t.symbol} : Word{}, t.dst});
    }
    return s;
}

} // namespace detail

/// Selector for x ↾ L: a symbol is copied when the prefix before it is in L.
/// Every selector state is Büchi-final.
inline Transducer oblivious_selector(const Automaton& dfa) {
    return detail::make_selector(dfa, SelectionMode::oblivious);
}

/// Selector for x ⇂ L: a symbol is copied when the prefix ending with it is in L.
inline Transducer nonoblivious_selector(const Automaton& dfa) {
    return detail::make_selector(dfa, SelectionMode::nonoblivious);
}

inline Transducer selector(const Automaton& dfa, SelectionMode mode) { return detail::make_selector(dfa, mode); }

/// Each symbol acts on the states as a permutation.
inline bool is_group_automaton(const Automaton& dfa) {
    detail::require_complete_dfa(dfa);
    const auto delta = detail::transition_table(dfa);
    for (Symbol a = 0; a < dfa.alphabet.size(); ++a) {
        std::vector<bool> hit(dfa.num_states(), false);
        for (State p = 0; p < dfa.num_states(); ++p) {
            if (hit[delta[p][a]])
                return false;
            hit[delta[p][a]] = true;
        }
    }
    return true;
}

/// Prefix selection computed from the definition, by testing membership of each
/// prefix of x in the language of dfa.
inline Word prefix_select(const Word& x, const Automaton& dfa, SelectionMode mode) {
    detail::require_complete_dfa(dfa);
    const auto delta = detail::transition_table(dfa);
    const auto accepting = membership(dfa, dfa.final);
    Word out;
    State q = dfa.initial.front();
    for (Symbol a : x) {
        if (a >= dfa.alphabet.size())
            throw alphabet_error("prefix_select: symbol outside the alphabet");
        const State next = delta[q][a];
        if (mode == SelectionMode::oblivious ? accepting[q] : accepting[next])
            out.push_back(a);
        q = next;
    }
    return out;
}

} // namespace normality

#endif // NORMALITY_SELECTION_HPP
