#ifndef NORMALITY_TEST_SUPPORT_HPP
#define NORMALITY_TEST_SUPPORT_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <random>
#include <string>
#include <vector>

#include <normality/normality.hpp>

namespace normality::testing {

inline std::string data_path(const std::string& name) { return std::string(NORMALITY_DATA_DIR) + "/" + name; }

inline Transducer load_transducer(const std::string& name) {
    return parse_transducer(read_file(data_path(name)));
}

inline Automaton load_automaton(const std::string& name) { return parse_automaton(read_file(data_path(name))); }

inline Rational q(long n, long d = 1) { return Rational(n) / Rational(d); }

/// Matrix of the form (1/den) * integer entries.
inline RMatrix scaled(long den, std::initializer_list<std::initializer_list<long>> rows) {
    RMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long x : r)
            m(i, j++) = Rational(x, den);
        ++i;
    }
    return m;
}

inline RVector row_vec(std::initializer_list<Rational> v) { return RVector(v, Orientation::row); }
inline RVector col_vec(std::initializer_list<Rational> v) { return RVector(v, Orientation::column); }

/// Small random rational with numerator in [-range, range] and denominator in [1, maxden].
inline Rational random_rational(std::mt19937& rng, long range = 5, long maxden = 4) {
    std::uniform_int_distribution<long> num(-range, range), den(1, maxden);
    return Rational(num(rng), den(rng));
}

inline RMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long range = 5, long maxden = 4) {
    RMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = random_rational(rng, range, maxden);
    return m;
}

/// Determinant by cofactor expansion along the first row.
inline Rational cofactor_det(const RMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return m(0, 0);
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0)
            continue;
        RMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j)
                    minor(i - 1, cc++) = m(i, k);
        }
        const Rational term = m(0, j) * cofactor_det(minor);
        total += (j % 2 == 0) ? term : Rational(-term);
    }
    return total;
}

/// Random complete deterministic automaton over {0,1} with n states; state 0 is
/// initial. When strongly_connected is set, samples are redrawn until the graph
/// is strongly connected. At least one state is accepting.
inline Automaton random_dfa(std::mt19937& rng, std::size_t n, bool strongly_connected = true) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::bernoulli_distribution coin(0.5);
    while (true) {
        Automaton a;
        a.alphabet = Alphabet::digits(2);
        for (std::size_t i = 0; i < n; ++i)
            a.states.push_back("s" + std::to_string(i));
        a.initial = {0};
        for (State p = 0; p < n; ++p)
            for (Symbol s = 0; s < 2; ++s)
                a.transitions.push_back({p, s, pick(rng)});
        for (State p = 0; p < n; ++p)
            if (coin(rng))
                a.final.push_back(p);
        if (a.final.empty())
            continue;
        if (strongly_connected && scc_decompose(a).size() != 1)
            continue;
        return a;
    }
}

/// Random group automaton over {0,1}: each symbol acts as a random permutation.
/// Redrawn until transitive (strongly connected); at least one state accepting.
inline Automaton random_group_dfa(std::mt19937& rng, std::size_t n) {
    std::bernoulli_distribution coin(0.5);
    while (true) {
        Automaton a;
        a.alphabet = Alphabet::digits(2);
        for (std::size_t i = 0; i < n; ++i)
            a.states.push_back("g" + std::to_string(i));
        a.initial = {0};
        for (Symbol s = 0; s < 2; ++s) {
            std::vector<State> perm(n);
            for (std::size_t i = 0; i < n; ++i)
                perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            for (State p = 0; p < n; ++p)
                a.transitions.push_back({p, s, perm[p]});
        }
        for (State p = 0; p < n; ++p)
            if (coin(rng))
                a.final.push_back(p);
        if (a.final.empty() || scc_decompose(a).size() != 1)
            continue;
        return a;
    }
}

/// Random weighted automaton over {0,1} with small rational entries; entries are
/// zero with probability 1/2 so that equivalent pairs occur.
inline WeightedAutomaton random_weighted(std::mt19937& rng, std::size_t n) {
    std::bernoulli_distribution sparse(0.5);
    auto entry = [&]() { return sparse(rng) ? Rational(0) : random_rational(rng, 2, 2); };
    WeightedAutomaton wa;
    wa.alphabet = Alphabet::digits(2);
    wa.initial = RVector(n, Orientation::row);
    wa.final = RVector(n, Orientation::column);
    for (std::size_t i = 0; i < n; ++i) {
        wa.initial[i] = entry();
        wa.final[i] = entry();
    }
    for (int s = 0; s < 2; ++s) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = entry();
        wa.mu.push_back(m);
    }
    return wa;
}

/// Change of basis by an invertible S: initial·S, S^-1 mu(b) S, S^-1 final.
/// The series is unchanged.
inline WeightedAutomaton conjugate(const WeightedAutomaton& wa, const RMatrix& s) {
    const RMatrix inv = solve(s, RMatrix::identity(s.rows()));
    WeightedAutomaton out;
    out.alphabet = wa.alphabet;
    out.initial = wa.initial * s;
    out.final = inv * wa.final;
    for (const auto& m : wa.mu)
        out.mu.push_back(inv * m * s);
    return out;
}

/// Transducer on the graph of a (assumed unambiguous) with random binary outputs
/// of length 0..max_out on each transition.
inline Transducer with_random_outputs(std::mt19937& rng, const Automaton& a, std::size_t max_out = 3) {
    std::uniform_int_distribution<std::size_t> len(0, max_out), bit(0, 1);
    Transducer t;
    t.states = a.states;
    t.input = a.alphabet;
    t.output = Alphabet::digits(2);
    t.initial = a.initial;
    t.final = a.final;
    for (const auto& e : a.transitions) {
        Word out(len(rng));
        for (auto& b : out)
            b = bit(rng);
        t.transitions.push_back({e.src, e.symbol, out, e.dst});
    }
    return t;
}

/// Same machine with states listed in the order given by perm (perm[k] is the
/// old index of new state k).
template <StateMachine M>
M permute_states(const M& m, const std::vector<State>& perm) {
    std::vector<State> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k)
        inv[perm[k]] = k;
    M out = m;
    for (std::size_t k = 0; k < perm.size(); ++k)
        out.states[k] = m.states[perm[k]];
    for (auto& t : out.transitions) {
        t.src = inv[t.src];
        t.dst = inv[t.dst];
    }
    for (auto& s : out.initial)
        s = inv[s];
    for (auto& s : out.final)
        s = inv[s];
    return out;
}

} // namespace normality::testing

#endif // NORMALITY_TEST_SUPPORT_HPP
