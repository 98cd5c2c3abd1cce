#ifndef NORMALITY_AUTOMATON_HPP
#define NORMALITY_AUTOMATON_HPP

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace normality {

using State = std::size_t;
using Symbol = std::size_t;
using Word = std::vector<Symbol>;

/// Ordered set of symbol names; a symbol is its index in declaration order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j])
                    throw alphabet_error("duplicate symbol '" + names_[i] + "'");
    }

    /// Alphabet {0, 1, ..., n-1} written as decimal digits/numbers.
    static Alphabet digits(std::size_t n) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i)
            names.push_back(std::to_string(i));
        return Alphabet(std::move(names));
    }

    std::size_t size() const noexcept { return names_.size(); }
    bool empty() const noexcept { return names_.empty(); }
    const std::string& name(Symbol s) const { return names_.at(s); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<Symbol> find(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name)
                return i;
        return std::nullopt;
    }

    Symbol at(std::string_view name) const {
        if (auto s = find(name))
            return *s;
        throw alphabet_error("unknown symbol '" + std::string(name) + "'");
    }

    /// True when every symbol is a single character, so words are written unseparated.
    bool single_char() const {
        return std::all_of(names_.begin(), names_.end(),
                           [](const std::string& n) { return n.size() == 1; });
    }

    /// Words are concatenated for single-character alphabets and comma-separated
    /// otherwise; the empty word is written "-".
    std::string format(const Word& w) const {
        if (w.empty())
            return "-";
        std::string out;
        const bool compact = single_char();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!compact && i)
                out += ',';
            out += name(w[i]);
        }
        return out;
    }

    Word parse_word(std::string_view text) const {
        Word w;
        if (text == "-")
            return w;
        if (single_char() && text.find(',') == std::string_view::npos) {
            for (char c : text)
                w.push_back(at(std::string_view(&c, 1)));
            return w;
        }
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = text.find(',', start);
            const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                  : comma - start);
            w.push_back(at(piece));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        return w;
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> names_;
};

struct AutomatonTransition {
    State src;
    Symbol symbol;
    State dst;
    friend auto operator<=>(const AutomatonTransition&, const AutomatonTransition&) = default;
};

struct TransducerTransition {
    State src;
    Symbol input;
    Word output;
    State dst;
    friend auto operator<=>(const TransducerTransition&, const TransducerTransition&) = default;
};

/// Büchi automaton. States are dense indices; names are kept for I/O.
struct Automaton {
    std::vector<std::string> states;
    Alphabet alphabet;
    std::vector<AutomatonTransition> transitions;
    std::vector<State> initial;
    std::vector<State> final;

    std::size_t num_states() const noexcept { return states.size(); }
    bool empty() const noexcept { return states.empty(); }
    const Alphabet& input_alphabet() const noexcept { return alphabet; }
};

/// Büchi transducer: each transition reads one input symbol and writes a word.
struct Transducer {
    std::vector<std::string> states;
    Alphabet input;
    Alphabet output;
    std::vector<TransducerTransition> transitions;
    std::vector<State> initial;
    std::vector<State> final;

    std::size_t num_states() const noexcept { return states.size(); }
    bool empty() const noexcept { return states.empty(); }
    const Alphabet& input_alphabet() const noexcept { return input; }
};

/// Anything with named states, src/dst transitions and initial/final sets.
template <class M>
concept StateMachine = requires(const M& m) {
    { m.states } -> std::convertible_to<std::vector<std::string>>;
    { m.transitions.front().src } -> std::convertible_to<State>;
    { m.transitions.front().dst } -> std::convertible_to<State>;
    { m.initial } -> std::convertible_to<std::vector<State>>;
    { m.final } -> std::convertible_to<std::vector<State>>;
    { m.input_alphabet() } -> std::convertible_to<const Alphabet&>;
};

inline std::optional<State> find_state(const std::vector<std::string>& states, std::string_view name) {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name)
            return i;
    return std::nullopt;
}

template <StateMachine M>
std::vector<bool> membership(const M& m, const std::vector<State>& subset) {
    std::vector<bool> in(m.num_states(), false);
    for (State s : subset)
        in.at(s) = true;
    return in;
}

/// Successor lists of the underlying directed graph (labels ignored, parallel edges kept).
template <StateMachine M>
std::vector<std::vector<State>> successor_lists(const M& m) {
    std::vector<std::vector<State>> adj(m.num_states());
    for (const auto& t : m.transitions)
        adj[t.src].push_back(t.dst);
    return adj;
}

/// Copy of m restricted to the states with keep[s] set, renumbered in order.
/// Transitions are kept when both endpoints survive.
template <StateMachine M>
M restrict_to(const M& m, const std::vector<bool>& keep) {
    std::vector<State> remap(m.num_states(), static_cast<State>(-1));
    M out = m;
    out.states.clear();
    out.transitions.clear();
    out.initial.clear();
    out.final.clear();
    for (State s = 0; s < m.num_states(); ++s)
        if (keep[s]) {
            remap[s] = out.states.size();
            out.states.push_back(m.states[s]);
        }
    for (const auto& t : m.transitions)
        if (keep[t.src] && keep[t.dst]) {
            auto copy = t;
            copy.src = remap[t.src];
            copy.dst = remap[t.dst];
            out.transitions.push_back(std::move(copy));
        }
    for (State s : m.initial)
        if (keep[s])
            out.initial.push_back(remap[s]);
    for (State s : m.final)
        if (keep[s])
            out.final.push_back(remap[s]);
    return out;
}

} // namespace normality

#endif // NORMALITY_AUTOMATON_HPP
