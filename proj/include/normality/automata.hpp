#ifndef NORMALITY_AUTOMATA_HPP
#define NORMALITY_AUTOMATA_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"

namespace normality {

namespace detail {

/// Iterative Tarjan. Returns a component index per vertex; components come out in
/// reverse topological order of the condensation.
inline std::vector<std::size_t> tarjan(const std::vector<std::vector<std::size_t>>& adj) {
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    const std::size_t n = adj.size();
    std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::pair<std::size_t, std::size_t>> call; // vertex, next edge
    std::size_t counter = 0, ncomp = 0;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset)
            continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < adj[v].size()) {
                const std::size_t w = adj[v][e++];
                if (index[w] == unset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            const std::size_t done = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    return comp;
}

inline std::vector<bool> reach(const std::vector<std::vector<std::size_t>>& adj,
                               const std::vector<std::size_t>& from) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::size_t> todo;
    for (auto s : from)
        if (!seen[s]) {
            seen[s] = true;
            todo.push_back(s);
        }
    while (!todo.empty()) {
        const auto v = todo.back();
        todo.pop_back();
        for (auto w : adj[v])
            if (!seen[w]) {
                seen[w] = true;
                todo.push_back(w);
            }
    }
    return seen;
}

inline std::vector<std::vector<std::size_t>> reversed(const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<std::vector<std::size_t>> rev(adj.size());
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (auto w : adj[v])
            rev[w].push_back(v);
    return rev;
}

} // namespace detail

struct SccComponent {
    std::vector<State> members; // ascending
    bool contains_final = false;
    bool is_trivial = false; // single state without a self-transition
};

struct SccDecomposition {
    std::vector<std::size_t> component_of;
    std::vector<SccComponent> components;

    std::size_t size() const noexcept { return components.size(); }
};

/// Strongly connected components, numbered by their smallest member state.
template <StateMachine M>
SccDecomposition scc_decompose(const M& m) {
    const auto adj = successor_lists(m);
    const auto raw = detail::tarjan(adj);
    SccDecomposition d;
    d.component_of.assign(m.num_states(), 0);
    std::vector<std::size_t> renumber(m.num_states(), std::numeric_limits<std::size_t>::max());
    for (State s = 0; s < m.num_states(); ++s) {
        if (renumber[raw[s]] == std::numeric_limits<std::size_t>::max()) {
            renumber[raw[s]] = d.components.size();
            d.components.emplace_back();
        }
        d.component_of[s] = renumber[raw[s]];
        d.components[d.component_of[s]].members.push_back(s);
    }
    const auto is_final = membership(m, m.final);
    for (auto& c : d.components) {
        c.contains_final = std::any_of(c.members.begin(), c.members.end(),
                                       [&](State s) { return is_final[s]; });
        c.is_trivial = c.members.size() == 1;
    }
    for (const auto& t : m.transitions)
        if (t.src == t.dst)
            d.components[d.component_of[t.src]].is_trivial = false;
    return d;
}

/// Removes every state that is not on an accepting run: kept states are reachable
/// from an initial state and can reach a non-trivial component holding a final
/// state. The result is empty iff the accepted language is empty.
template <StateMachine M>
M trim(const M& m) {
    const auto adj = successor_lists(m);
    const auto scc = scc_decompose(m);
    std::vector<std::size_t> good;
    for (State s = 0; s < m.num_states(); ++s) {
        const auto& c = scc.components[scc.component_of[s]];
        if (c.contains_final && !c.is_trivial)
            good.push_back(s);
    }
    const auto forward = detail::reach(adj, m.initial);
    const auto backward = detail::reach(detail::reversed(adj), good);
    std::vector<bool> keep(m.num_states());
    for (State s = 0; s < m.num_states(); ++s)
        keep[s] = forward[s] && backward[s];
    return restrict_to(m, keep);
}

/// Drops the output labels; parallel transitions that become identical are merged.
inline Automaton input_automaton(const Transducer& t) {
    Automaton a;
    a.states = t.states;
    a.alphabet = t.input;
    a.initial = t.initial;
    a.final = t.final;
    std::set<AutomatonTransition> seen;
    for (const auto& tr : t.transitions) {
        AutomatonTransition e{tr.src, tr.input, tr.dst};
        if (seen.insert(e).second)
            a.transitions.push_back(e);
    }
    return a;
}

inline bool is_deterministic(const Automaton& a) {
    if (a.initial.size() != 1)
        return false;
    std::set<std::pair<State, Symbol>> seen;
    for (const auto& t : a.transitions)
        if (!seen.insert({t.src, t.symbol}).second)
            return false;
    return true;
}

/// Every state has at least one transition on every symbol.
inline bool is_complete(const Automaton& a) {
    std::set<std::pair<State, Symbol>> seen;
    for (const auto& t : a.transitions)
        seen.insert({t.src, t.symbol});
    return seen.size() == a.num_states() * a.alphabet.size();
}

/// The ultimately periodic word prefix·loop^ω.
struct LassoWord {
    Word prefix;
    Word loop;
};

struct UnambiguityResult {
    bool unambiguous = true;
    std::optional<LassoWord> witness; // set iff ambiguous; labels two accepting runs
};

/*
 * Büchi unambiguity via the self-product with a divergence bit.
 *
 * Product states are (p, q, d). Reading a symbol moves both components along a
 * pair of transitions; d records whether the two runs have used different
 * transitions so far. The automaton is ambiguous iff a diverged product state
 * reaches a non-trivial component that contains a state whose first coordinate
 * is final and a state whose second coordinate is final.
 */
inline UnambiguityResult check_unambiguous(const Automaton& a) {
    const std::size_t n = a.num_states();
    const auto encode = [n](State p, State q, bool d) { return (p * n + q) * 2 + (d ? 1 : 0); };
    const std::size_t total = n * n * 2;

    std::vector<std::vector<std::size_t>> by_source(n); // transition indices
    for (std::size_t i = 0; i < a.transitions.size(); ++i)
        by_source[a.transitions[i].src].push_back(i);

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(total, none);
    std::vector<Symbol> parent_symbol(total, 0);
    std::vector<bool> seen(total, false);
    std::vector<std::vector<std::size_t>> adj(total);
    std::vector<std::vector<Symbol>> adj_symbol(total);
    std::deque<std::size_t> queue;

    for (State i : a.initial)
        for (State j : a.initial) {
            const auto s = encode(i, j, i != j);
            if (!seen[s]) {
                seen[s] = true;
                queue.push_back(s);
            }
        }
    while (!queue.empty()) {
        const auto s = queue.front();
        queue.pop_front();
        const State p = s / 2 / n, q = s / 2 % n;
        const bool d = s % 2;
        for (auto i : by_source[p])
            for (auto j : by_source[q]) {
                const auto& t1 = a.transitions[i];
                const auto& t2 = a.transitions[j];
                if (t1.symbol != t2.symbol)
                    continue;
                const auto next = encode(t1.dst, t2.dst, d || i != j);
                adj[s].push_back(next);
                adj_symbol[s].push_back(t1.symbol);
                if (!seen[next]) {
                    seen[next] = true;
                    parent[next] = s;
                    parent_symbol[next] = t1.symbol;
                    queue.push_back(next);
                }
            }
    }

    const auto comp = detail::tarjan(adj);
    const auto is_final = membership(a, a.final);
    std::size_t ncomp = 0;
    for (auto c : comp)
        ncomp = std::max(ncomp, c + 1);
    std::vector<std::size_t> first_final(ncomp, none), second_final(ncomp, none), size(ncomp, 0);
    std::vector<bool> has_cycle(ncomp, false);
    for (std::size_t s = 0; s < total; ++s) {
        if (!seen[s] || s % 2 == 0)
            continue;
        const State p = s / 2 / n, q = s / 2 % n;
        ++size[comp[s]];
        if (is_final[p])
            first_final[comp[s]] = s;
        if (is_final[q])
            second_final[comp[s]] = s;
        for (auto w : adj[s])
            if (w == s)
                has_cycle[comp[s]] = true;
    }

    for (std::size_t c = 0; c < ncomp; ++c) {
        if (first_final[c] == none || second_final[c] == none || !(size[c] > 1 || has_cycle[c]))
            continue;
        // Prefix: BFS path to the first-final representative.
        const std::size_t anchor = first_final[c];
        LassoWord w;
        for (auto s = anchor; parent[s] != none; s = parent[s])
            w.prefix.push_back(parent_symbol[s]);
        std::reverse(w.prefix.begin(), w.prefix.end());
        // Loop: anchor -> second-final -> anchor, staying inside the component.
        auto path_within = [&](std::size_t from, std::size_t to, bool nonempty) {
            std::vector<std::size_t> prev(total, none);
            std::vector<Symbol> sym(total, 0);
            std::vector<bool> visited(total, false);
            std::deque<std::size_t> q;
            q.push_back(from);
            if (!nonempty)
                visited[from] = true;
            std::optional<std::size_t> hit;
            while (!q.empty() && !hit) {
                const auto s = q.front();
                q.pop_front();
                for (std::size_t k = 0; k < adj[s].size(); ++k) {
                    const auto t = adj[s][k];
                    if (comp[t] != c || visited[t])
                        continue;
                    visited[t] = true;
                    prev[t] = s;
                    sym[t] = adj_symbol[s][k];
                    if (t == to) {
                        hit = t;
                        break;
                    }
                    q.push_back(t);
                }
            }
            Word out;
            if (!hit)
                return out;
            for (auto s = to;; s = prev[s]) {
                out.push_back(sym[s]);
                if (prev[s] == from)
                    break;
            }
            std::reverse(out.begin(), out.end());
            return out;
        };
        const auto target = second_final[c];
        if (target == anchor) {
            w.loop = path_within(anchor, anchor, true);
        } else {
            w.loop = path_within(anchor, target, false);
            const auto back = path_within(target, anchor, false);
            w.loop.insert(w.loop.end(), back.begin(), back.end());
        }
        return {false, std::move(w)};
    }
    return {};
}

class ambiguous_error : public error {
public:
    explicit ambiguous_error(LassoWord witness)
        : error("transducer is ambiguous"), witness_(std::move(witness)) {}
    const LassoWord& witness() const noexcept { return witness_; }

private:
    LassoWord witness_;
};

} // namespace normality

#endif // NORMALITY_AUTOMATA_HPP
