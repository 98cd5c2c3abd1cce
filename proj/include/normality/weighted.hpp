#ifndef NORMALITY_WEIGHTED_HPP
#define NORMALITY_WEIGHTED_HPP

#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"
#include "format.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace normality {

/// Weighted automaton over the rationals as a triple (initial, mu, final); the
/// weight of w = b1...bk is initial · mu(b1) ··· mu(bk) · final.
struct WeightedAutomaton {
    Alphabet alphabet;
    RVector initial;         // row, length n
    std::vector<RMatrix> mu; // one n×n matrix per symbol, indexed by Symbol
    RVector final;           // column, length n

    std::size_t num_states() const noexcept { return initial.size(); }

    void validate() const {
        const std::size_t n = initial.size();
        if (final.size() != n)
            throw dimension_error("weighted automaton: initial and final lengths differ");
        if (mu.size() != alphabet.size())
            throw dimension_error("weighted automaton: one matrix per symbol required");
        for (const auto& m : mu)
            if (m.rows() != n || m.cols() != n)
                throw dimension_error("weighted automaton: transition matrix has wrong shape");
    }
};

/// initial · mu(w) as a row vector.
inline RVector forward_vector(const WeightedAutomaton& wa, const Word& w) {
    RVector v = wa.initial;
    for (Symbol b : w) {
        if (b >= wa.alphabet.size())
            throw alphabet_error("symbol outside the weighted automaton's alphabet");
        v = v * wa.mu[b];
    }
    return v;
}

inline Rational weight(const WeightedAutomaton& wa, const Word& w) {
    return dot(forward_vector(wa, w), wa.final);
}

/// Single state; each symbol has weight 1/#alphabet, so weight(w) = #alphabet^-|w|.
inline WeightedAutomaton bernoulli_automaton(const Alphabet& alphabet) {
    if (alphabet.empty())
        throw alphabet_error("bernoulli_automaton: empty alphabet");
    WeightedAutomaton b;
    b.alphabet = alphabet;
    b.initial = RVector({Rational(1)}, Orientation::row);
    b.final = RVector({Rational(1)}, Orientation::column);
    const RMatrix step{{Rational(1, static_cast<long>(alphabet.size()))}};
    b.mu.assign(alphabet.size(), step);
    return b;
}

struct EquivalenceResult {
    bool equivalent = true;
    std::optional<Word> witness; // set iff not equivalent; a shortest separating word
};

namespace detail {

/// Incrementally maintained echelon basis of row vectors.
class EchelonBasis {
public:
    /// Adds v if it is independent of the current basis; returns whether it was added.
    bool insert(RVector v) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const Rational f = v[pivots_[k]];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (rows_[k][j] != 0)
                    v[j] -= f * rows_[k][j];
        }
        std::size_t p = 0;
        while (p < v.size() && v[p] == 0)
            ++p;
        if (p == v.size())
            return false;
        v /= Rational(v[p]);
        // Keep the basis fully reduced so later reductions read one pivot each.
        for (auto& row : rows_) {
            const Rational f = row[p];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (v[j] != 0)
                    row[j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    std::size_t size() const noexcept { return rows_.size(); }

private:
    std::vector<RVector> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace detail

/// Builds the difference automaton (block-diagonal mu, initial of b negated) whose
/// series is weight_a - weight_b.
inline WeightedAutomaton difference_automaton(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    if (!(a.alphabet == b.alphabet))
        throw alphabet_error("equivalent: alphabets differ");
    a.validate();
    b.validate();
    const std::size_t na = a.num_states(), nb = b.num_states(), n = na + nb;
    WeightedAutomaton d;
    d.alphabet = a.alphabet;
    d.initial = RVector(n, Orientation::row);
    d.final = RVector(n, Orientation::column);
    for (std::size_t i = 0; i < na; ++i) {
        d.initial[i] = a.initial[i];
        d.final[i] = a.final[i];
    }
    for (std::size_t i = 0; i < nb; ++i) {
        d.initial[na + i] = -b.initial[i];
        d.final[na + i] = b.final[i];
    }
    for (Symbol s = 0; s < a.alphabet.size(); ++s) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < na; ++j)
                m(i, j) = a.mu[s](i, j);
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < nb; ++j)
                m(na + i, na + j) = b.mu[s](i, j);
        d.mu.push_back(std::move(m));
    }
    return d;
}

/*
 * Equivalence of two weighted automata over Q by the forward-basis method.
 *
 * The reachable vectors initial·mu(w) of the difference automaton are explored
 * breadth-first in length-lexicographic order; only words whose vector is
 * independent of those already kept are extended, so at most n_a + n_b words are
 * expanded. The series is zero iff every kept vector is orthogonal to the final
 * vector. Because the kept vectors of length <= l span all vectors of length
 * <= l, the first failing word is a shortest separating word.
 */
inline EquivalenceResult equivalent(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    const auto d = difference_automaton(a, b);
    detail::EchelonBasis basis;
    std::deque<std::pair<Word, RVector>> queue;
    if (basis.insert(d.initial))
        queue.emplace_back(Word{}, d.initial);
    while (!queue.empty()) {
        auto [w, v] = std::move(queue.front());
        queue.pop_front();
        if (dot(v, d.final) != 0)
            return {false, std::move(w)};
        for (Symbol s = 0; s < d.alphabet.size(); ++s) {
            RVector next = v * d.mu[s];
            if (basis.insert(next)) {
                Word nw = w;
                nw.push_back(s);
                queue.emplace_back(std::move(nw), std::move(next));
            }
        }
    }
    return {};
}

/// All words of length exactly len over an alphabet of the given size, in
/// lexicographic order.
inline std::vector<Word> words_of_length(std::size_t alphabet_size, std::size_t len) {
    std::vector<Word> out;
    Word w(len, 0);
    if (alphabet_size == 0)
        return len == 0 ? std::vector<Word>{Word{}} : out;
    while (true) {
        out.push_back(w);
        std::size_t i = len;
        while (i > 0 && w[i - 1] + 1 == alphabet_size) {
            w[i - 1] = 0;
            --i;
        }
        if (i == 0)
            break;
        ++w[i - 1];
    }
    return out;
}

/*
 * Text dump:
 *   weighted
 *   alphabet 0 1
 *   initial 8/15 2/15 1/5 0 2/15
 *   mu 0
 *   <n rows>
 *   mu 1
 *   <n rows>
 *   final 1 1 1 1 1
 */
inline std::string write_weighted(const WeightedAutomaton& wa, bool always_fraction = true) {
    std::ostringstream os;
    auto row = [&](const RVector& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? " " : "") << format_rational(v[i], always_fraction);
        os << '\n';
    };
    os << "weighted\nalphabet";
    for (const auto& n : wa.alphabet.names())
        os << ' ' << n;
    os << "\ninitial ";
    row(wa.initial);
    for (Symbol s = 0; s < wa.alphabet.size(); ++s) {
        os << "mu " << wa.alphabet.name(s) << '\n';
        for (std::size_t i = 0; i < wa.mu[s].rows(); ++i)
            row(wa.mu[s].row(i));
    }
    os << "final ";
    row(wa.final);
    return os.str();
}

inline WeightedAutomaton parse_weighted(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto tokens = detail::split_tokens(line);
        if (!tokens.empty())
            lines.emplace_back(lineno, std::move(tokens));
    }
    std::size_t k = 0;
    auto expect = [&](const char* key) -> std::vector<std::string> {
        if (k >= lines.size())
            throw parse_error(lineno, std::string("expected '") + key + "'");
        auto& [ln, toks] = lines[k];
        if (toks.front() != key)
            throw parse_error(ln, std::string("expected '") + key + "'");
        ++k;
        return {toks.begin() + 1, toks.end()};
    };
    auto rationals = [](const std::vector<std::string>& toks, std::size_t ln, Orientation o) {
        RVector v(toks.size(), o);
        for (std::size_t i = 0; i < toks.size(); ++i)
            v[i] = parse_rational(toks[i], ln);
        return v;
    };
    if (expect("weighted").size() != 0)
        throw parse_error(lines[0].first, "header takes no arguments");
    WeightedAutomaton wa;
    wa.alphabet = detail::make_alphabet(expect("alphabet"));
    const std::size_t init_line = k < lines.size() ? lines[k].first : lineno;
    wa.initial = rationals(expect("initial"), init_line, Orientation::row);
    const std::size_t n = wa.initial.size();
    for (Symbol s = 0; s < wa.alphabet.size(); ++s) {
        const auto header = expect("mu");
        if (header.size() != 1 || header[0] != wa.alphabet.name(s))
            throw parse_error(lines[k - 1].first, "expected 'mu " + wa.alphabet.name(s) + "'");
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (k >= lines.size())
                throw parse_error(lineno, "missing matrix row");
            const auto& [ln, toks] = lines[k++];
            if (toks.size() != n)
                throw parse_error(ln, "matrix row has wrong length");
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = parse_rational(toks[j], ln);
        }
        wa.mu.push_back(std::move(m));
    }
    const std::size_t fin_line = k < lines.size() ? lines[k].first : lineno;
    wa.final = rationals(expect("final"), fin_line, Orientation::column);
    if (k != lines.size())
        throw parse_error(lines[k].first, "trailing content");
    try {
        wa.validate();
    } catch (const dimension_error& e) {
        throw parse_error(0, e.what());
    }
    return wa;
}

} // namespace normality

#endif // NORMALITY_WEIGHTED_HPP
