#ifndef NORMALITY_EMPIRICAL_HPP
#define NORMALITY_EMPIRICAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "automata.hpp"
#include "automaton.hpp"
#include "decision.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace normality {

/// Name of digit d in bases up to 36: 0-9 then a-z.
inline std::string digit_name(std::size_t d) {
    if (d < 10)
        return std::string(1, static_cast<char>('0' + d));
    return std::string(1, static_cast<char>('a' + (d - 10)));
}

/// Streams the base-b Champernowne word 0 1 2 ... b (b+1) ... digit by digit.
class ChampernowneSource {
public:
    explicit ChampernowneSource(std::size_t base) : base_(base) {
        if (base < 2 || base > 36)
            throw error("champernowne: base must be in [2, 36]");
        load();
    }

    std::size_t base() const noexcept { return base_; }

    Symbol next() {
        if (pos_ == digits_.size()) {
            ++number_;
            load();
        }
        return digits_[pos_++];
    }

private:
    void load() {
        digits_.clear();
        std::uint64_t n = number_;
        do {
            digits_.push_back(static_cast<Symbol>(n % base_));
            n /= base_;
        } while (n > 0);
        std::reverse(digits_.begin(), digits_.end());
        pos_ = 0;
    }

    std::size_t base_;
    std::uint64_t number_ = 0;
    std::vector<Symbol> digits_;
    std::size_t pos_ = 0;
};

/// First n digits of the base-b Champernowne word, as digit values.
inline Word champernowne(std::size_t base, std::size_t n) {
    ChampernowneSource src(base);
    Word w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        w.push_back(src.next());
    return w;
}

/// Number of (possibly overlapping) occurrences of v in w.
template <class Seq>
std::size_t count_occurrences(const Seq& w, const Seq& v) {
    if (std::size(v) == 0)
        throw error("count_occurrences: empty pattern");
    if (std::size(v) > std::size(w))
        return 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i + std::size(v) <= std::size(w); ++i)
        if (std::equal(std::begin(v), std::end(v), std::begin(w) + static_cast<std::ptrdiff_t>(i)))
            ++n;
    return n;
}

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--)
        r *= b;
    return r;
}

/// Index of w among words of its length in lexicographic order.
inline std::uint64_t block_code(const Word& w, std::size_t alphabet_size) {
    std::uint64_t c = 0;
    for (Symbol s : w)
        c = c * alphabet_size + s;
    return c;
}

/// Sliding occurrence counts of every block of length 1..max_block over a stream.
class BlockCounter {
public:
    BlockCounter(std::size_t alphabet_size, std::size_t max_block)
        : m_(alphabet_size), k_(max_block), codes_(max_block + 1, 0), counts_(max_block + 1) {
        if (alphabet_size == 0)
            throw alphabet_error("BlockCounter: empty alphabet");
        for (std::size_t n = 1; n <= k_; ++n)
            counts_[n].assign(ipow(m_, n), 0);
    }

    void push(Symbol b) {
        ++length_;
        for (std::size_t n = 1; n <= k_; ++n) {
            codes_[n] = (codes_[n] * m_ + b) % counts_[n].size();
            if (length_ >= n)
                ++counts_[n][codes_[n]];
        }
    }

    std::uint64_t length() const noexcept { return length_; }
    std::size_t max_block() const noexcept { return k_; }

    std::uint64_t count(const Word& w) const {
        if (w.empty() || w.size() > k_)
            throw error("BlockCounter: block length out of range");
        return counts_[w.size()][block_code(w, m_)];
    }

    /// Number of windows of length n seen, i.e. length - n + 1 (0 if too short).
    std::uint64_t windows(std::size_t n) const { return length_ >= n ? length_ - n + 1 : 0; }

private:
    std::size_t m_, k_;
    std::vector<std::uint64_t> codes_;
    std::vector<std::vector<std::uint64_t>> counts_;
    std::uint64_t length_ = 0;
};

/// Counts of each block of length n at positions 0, n, 2n, ...
inline std::vector<std::uint64_t> aligned_counts(const Word& w, std::size_t n, std::size_t alphabet_size) {
    std::vector<std::uint64_t> counts(ipow(alphabet_size, n), 0);
    for (std::size_t i = 0; i + n <= w.size(); i += n)
        counts[block_code(Word(w.begin() + static_cast<std::ptrdiff_t>(i),
                               w.begin() + static_cast<std::ptrdiff_t>(i + n)),
                          alphabet_size)]++;
    return counts;
}

/*
 * Follows the run of an unambiguous trimmed transducer on a stream of input
 * symbols.
 *
 * On a finite prefix several runs may still be extendable, so every surviving
 * candidate is tracked together with the output and states it has produced past
 * the longest common prefix shared by all candidates. That common prefix is
 * committed as soon as it is known. Candidates in states that cannot reach a
 * component with a final state and spectral radius 1 are pruned: no normal input
 * has an accepting run through them.
 */
class RunTracker {
public:
    struct Candidate {
        State state;
        Word pending_output;
        std::vector<State> pending_states;
    };

    /// t must be trimmed and unambiguous.
    explicit RunTracker(const Transducer& t) : t_(t), a_(t.input.size()) {
        edges_.resize(t.num_states() * a_);
        for (const auto& tr : t.transitions)
            edges_[tr.src * a_ + tr.input].push_back(&tr);

        const auto scc = scc_decompose(t);
        std::vector<std::size_t> targets;
        for (auto id : analyzable_components(t, scc))
            for (State s : scc.components[id].members)
                targets.push_back(s);
        alive_ = detail::reach(detail::reversed(successor_lists(t)), targets);
        for (State i : t.initial)
            if (alive_[i])
                candidates_.push_back({i, {}, {i}});
        if (candidates_.empty())
            throw no_run_error(0);
        commit();
    }

    void step(Symbol a) {
        if (a >= a_)
            throw alphabet_error("run: input symbol outside the alphabet");
        next_.clear();
        for (auto& c : candidates_)
            for (const auto* tr : edges_[c.state * a_ + a]) {
                if (!alive_[tr->dst])
                    continue;
                const bool dup = std::any_of(next_.begin(), next_.end(),
                                             [&](const Candidate& o) { return o.state == tr->dst; });
                if (dup)
                    continue;
                Candidate n{tr->dst, c.pending_output, c.pending_states};
                n.pending_output.insert(n.pending_output.end(), tr->output.begin(), tr->output.end());
                n.pending_states.push_back(tr->dst);
                next_.push_back(std::move(n));
            }
        ++position_;
        if (next_.empty())
            throw no_run_error(position_);
        std::swap(candidates_, next_);
        commit();
    }

    /// Output committed since the last call.
    Word take_output() { return std::exchange(output_, {}); }
    std::vector<State> take_states() { return std::exchange(states_, {}); }

    const std::vector<Candidate>& candidates() const noexcept { return candidates_; }
    std::size_t position() const noexcept { return position_; }
    /// Most recent committed state; the run is known to have passed through it.
    State last_committed_state() const noexcept { return last_state_; }

private:
    template <class T>
    static std::size_t common_prefix(const std::vector<Candidate>& cs, std::vector<T> Candidate::*field) {
        std::size_t len = (cs.front().*field).size();
        for (const auto& c : cs) {
            const auto& v = c.*field;
            std::size_t i = 0;
            const auto& ref = cs.front().*field;
            while (i < len && i < v.size() && v[i] == ref[i])
                ++i;
            len = i;
        }
        return len;
    }

    void commit() {
        const std::size_t out_len = common_prefix(candidates_, &Candidate::pending_output);
        const std::size_t st_len = common_prefix(candidates_, &Candidate::pending_states);
        const auto& ref = candidates_.front();
        output_.insert(output_.end(), ref.pending_output.begin(),
                       ref.pending_output.begin() + static_cast<std::ptrdiff_t>(out_len));
        states_.insert(states_.end(), ref.pending_states.begin(),
                       ref.pending_states.begin() + static_cast<std::ptrdiff_t>(st_len));
        if (st_len > 0)
            last_state_ = ref.pending_states[st_len - 1];
        for (auto& c : candidates_) {
            c.pending_output.erase(c.pending_output.begin(),
                                   c.pending_output.begin() + static_cast<std::ptrdiff_t>(out_len));
            c.pending_states.erase(c.pending_states.begin(),
                                   c.pending_states.begin() + static_cast<std::ptrdiff_t>(st_len));
        }
    }

    const Transducer& t_;
    std::size_t a_;
    std::vector<std::vector<const TransducerTransition*>> edges_;
    std::vector<bool> alive_;
    std::vector<Candidate> candidates_, next_;
    Word output_;
    std::vector<State> states_;
    State last_state_ = 0;
    std::size_t position_ = 0;
};

struct RunResult {
    Transducer trimmed;        // state indices below refer to this machine
    Word output;               // longest common prefix of the candidates' outputs
    std::vector<State> trace;  // committed state sequence
    std::vector<Word> candidate_outputs;
    std::vector<State> candidate_states;
};

/// Runs t on the finite input x. Throws no_run_error when x is not a prefix of a
/// sequence accepted through a component with a final state and radius 1.
inline RunResult run_transducer(const Transducer& t, const Word& x) {
    RunResult r;
    r.trimmed = trim(t);
    RunTracker run(r.trimmed);
    for (Symbol a : x)
        run.step(a);
    r.output = run.take_output();
    r.trace = run.take_states();
    for (const auto& c : run.candidates()) {
        Word full = r.output;
        full.insert(full.end(), c.pending_output.begin(), c.pending_output.end());
        r.candidate_outputs.push_back(std::move(full));
        r.candidate_states.push_back(c.state);
    }
    return r;
}

/// Input generator description, e.g. "champernowne:2".
struct SourceSpec {
    std::string kind = "champernowne";
    std::size_t base = 2;

    static SourceSpec parse(std::string_view text) {
        SourceSpec s;
        const auto colon = text.find(':');
        s.kind = std::string(text.substr(0, colon));
        if (s.kind != "champernowne")
            throw error("unknown source '" + s.kind + "'");
        if (colon != std::string_view::npos) {
            const std::string b(text.substr(colon + 1));
            if (b.empty() || b.find_first_not_of("0123456789") != std::string::npos)
                throw error("malformed source base '" + b + "'");
            s.base = std::stoul(b);
        }
        return s;
    }
};

struct BlockRow {
    Word block;
    std::uint64_t count = 0;
    Rational empirical;      // count / windows
    double empirical_decimal = 0;
    Rational predicted;
    double deviation = 0;    // |empirical - predicted|
};

struct FrequencyReport {
    Alphabet alphabet;
    std::uint64_t input_length = 0;
    std::uint64_t output_length = 0;
    std::size_t component = 0;          // component of the trimmed transducer
    std::vector<std::string> component_states;
    std::vector<BlockRow> rows;         // length-lexicographic, lengths 1..max_block

    double max_deviation() const {
        double m = 0;
        for (const auto& r : rows)
            m = std::max(m, r.deviation);
        return m;
    }

    const BlockRow& row(const Word& w) const {
        for (const auto& r : rows)
            if (r.block == w)
                return r;
        throw error("FrequencyReport: no row for block");
    }
};

/// Feeds a generated prefix through t, counts sliding block occurrences in the
/// committed output, and compares them with the exact limiting frequencies of
/// the component the run settles in.
inline FrequencyReport compare_frequencies(const Transducer& t, const SourceSpec& source,
                                           std::size_t prefix_len, std::size_t max_block) {
    const Transducer trimmed = trim(t);
    if (trimmed.empty())
        throw empty_language();
    std::vector<Symbol> digit_to_input(source.base);
    for (std::size_t d = 0; d < source.base; ++d) {
        const auto s = trimmed.input.find(digit_name(d));
        if (!s)
            throw alphabet_error("source digit '" + digit_name(d) + "' is not an input symbol");
        digit_to_input[d] = *s;
    }

    FrequencyReport rep;
    rep.alphabet = trimmed.output;
    rep.input_length = prefix_len;
    BlockCounter counter(trimmed.output.size(), max_block);
    ChampernowneSource src(source.base);
    RunTracker run(trimmed);
    for (std::size_t i = 0; i < prefix_len; ++i) {
        run.step(digit_to_input[src.next()]);
        for (Symbol b : run.take_output())
            counter.push(b);
        run.take_states();
    }
    rep.output_length = counter.length();

    const auto scc = scc_decompose(trimmed);
    rep.component = scc.component_of[run.last_committed_state()];
    for (State s : scc.components[rep.component].members)
        rep.component_states.push_back(trimmed.states[s]);
    const auto analysis = analyze_component(trimmed, scc, rep.component);
    for (const auto& [w, predicted] : block_table(analysis.frequency, max_block)) {
        if (w.empty())
            continue;
        BlockRow row;
        row.block = w;
        row.count = counter.count(w);
        const auto windows = counter.windows(w.size());
        row.empirical = windows ? Rational(Integer(row.count), Integer(windows)) : Rational(0);
        row.empirical_decimal = to_double(row.empirical);
        row.predicted = predicted;
        row.deviation = std::abs(to_double(row.empirical - predicted));
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace normality

#endif // NORMALITY_EMPIRICAL_HPP
