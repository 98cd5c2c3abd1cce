#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace normality;
using namespace normality::testing;

namespace {

std::string digits_of(const Word& w) {
    std::string s;
    for (Symbol d : w)
        s += digit_name(d);
    return s;
}

/// Champernowne prefix built by writing the naturals with std::to_chars-style
/// base conversion, independently of the streaming source.
std::string champernowne_oracle(unsigned base, std::size_t n) {
    std::string out;
    for (unsigned long k = 0; out.size() < n; ++k) {
        std::string digits;
        unsigned long v = k;
        do {
            digits.insert(digits.begin(), "0123456789abcdefghijklmnopqrstuvwxyz"[v % base]);
            v /= base;
        } while (v);
        out += digits;
    }
    out.resize(n);
    return out;
}

const SourceSpec binary = SourceSpec::parse("champernowne:2");

} // namespace

TEST_CASE("champernowne prefixes") {
    CHECK(digits_of(champernowne(10, 16)) == "0123456789101112");
    CHECK(digits_of(champernowne(2, 12)) == "011011100101");
    for (std::size_t b = 2; b <= 16; ++b)
        CHECK(digits_of(champernowne(b, 1)) == "0");
    for (unsigned b : {2u, 3u, 7u, 10u, 16u, 36u})
        CHECK(digits_of(champernowne(b, 5000)) == champernowne_oracle(b, 5000));
    CHECK_THROWS_AS(ChampernowneSource(1), error);
    CHECK_THROWS_AS(ChampernowneSource(37), error);
}

TEST_CASE("count occurrences") {
    CHECK(count_occurrences(std::string("abbab"), std::string("ab")) == 2);
    CHECK(count_occurrences(std::string("aaaa"), std::string("aa")) == 3);
    CHECK(count_occurrences(std::string("ab"), std::string("abc")) == 0);
    CHECK_THROWS_AS(count_occurrences(std::string("ab"), std::string()), error);
}

TEST_CASE("block counter matches direct counting") {
    std::mt19937 rng(127);
    std::uniform_int_distribution<std::size_t> sym(0, 2);
    Word w(500);
    for (auto& s : w)
        s = sym(rng);
    BlockCounter counter(3, 4);
    for (Symbol s : w)
        counter.push(s);
    for (std::size_t n = 1; n <= 4; ++n) {
        std::uint64_t total = 0;
        for (const auto& v : words_of_length(3, n)) {
            CHECK(counter.count(v) == count_occurrences(w, v));
            total += counter.count(v);
        }
        CHECK(total == w.size() - n + 1);
        CHECK(counter.windows(n) == w.size() - n + 1);
    }
    CHECK_THROWS_AS(counter.count(Word{}), error);
    CHECK_THROWS_AS(counter.count(Word(5, 0)), error);
}

TEST_CASE("aligned counts") {
    const Word w = Alphabet::digits(2).parse_word("0110111");
    const auto c = aligned_counts(w, 2, 2);
    // blocks 01, 10, 11 at positions 0, 2, 4
    CHECK(c == std::vector<std::uint64_t>{0, 1, 1, 1});
}

TEST_CASE("running transducers on finite prefixes") {
    const auto bits = Alphabet::digits(2);

    // fig2.t on 00: the branch 1 -> 3 is still open after the first symbol and
    // 1 -> 1 -> 3 after the second, so only the first output symbol is certain.
    const auto r2 = run_transducer(load_transducer("fig2.t"), bits.parse_word("00"));
    CHECK(bits.format(r2.output) == "0");
    bool via_one = false;
    for (std::size_t i = 0; i < r2.candidate_states.size(); ++i)
        if (r2.trimmed.states[r2.candidate_states[i]] == "1") {
            via_one = true;
            CHECK(bits.format(r2.candidate_outputs[i]) == "00");
        }
    CHECK(via_one);
    // 0001: candidates 1 1 1 1 2 (output 00010) and 1 1 1 3 4 (output 001)
    const auto r3 = run_transducer(load_transducer("fig2.t"), bits.parse_word("0001"));
    CHECK(bits.format(r3.output) == "00");
    std::set<std::string> outs;
    for (const auto& o : r3.candidate_outputs)
        outs.insert(bits.format(o));
    CHECK(outs == std::set<std::string>{"00010", "001"});

    const auto id = load_transducer("identity.t");
    const Word x = bits.parse_word("0110100111");
    const auto ri = run_transducer(id, x);
    CHECK(ri.output == x);
    CHECK(ri.trace.size() == x.size() + 1);

    // fig6.t on 01 along 1 -> 2 -> 2 emits 0 then 1
    const auto r6 = run_transducer(load_transducer("fig6.t"), bits.parse_word("01"));
    CHECK(bits.format(r6.output) == "0");
    bool along_two = false;
    for (std::size_t i = 0; i < r6.candidate_states.size(); ++i)
        if (r6.trimmed.states[r6.candidate_states[i]] == "2") {
            along_two = true;
            CHECK(bits.format(r6.candidate_outputs[i]) == "01");
        }
    CHECK(along_two);
    // state 4 only carries 0^ω, so it is pruned
    for (State s : r6.candidate_states)
        CHECK(r6.trimmed.states[s] != "4");
}

TEST_CASE("committed output is a prefix of every candidate output") {
    std::mt19937 rng(131);
    std::uniform_int_distribution<std::size_t> bit(0, 1);
    for (int i = 0; i < 40; ++i) {
        const auto t = with_random_outputs(rng, load_automaton("fig1.a"));
        Word x(30);
        for (auto& b : x)
            b = bit(rng);
        try {
            const auto r = run_transducer(t, x);
            for (const auto& out : r.candidate_outputs) {
                REQUIRE(out.size() >= r.output.size());
                CHECK(std::equal(r.output.begin(), r.output.end(), out.begin()));
            }
        } catch (const no_run_error& e) {
            CHECK(e.position() <= x.size());
        }
    }
}

TEST_CASE("inputs without a run") {
    const auto bits = Alphabet::digits(2);
    // 0 leads to {2, 3}, the next 0 only to 1, which has no 1-transition
    try {
        run_transducer(load_transducer("fig6.t"), bits.parse_word("0011"));
        FAIL("expected no_run_error");
    } catch (const no_run_error& e) {
        CHECK(e.position() == 3);
    }
    try {
        run_transducer(load_transducer("fig6.t"), bits.parse_word("1"));
        FAIL("expected no_run_error");
    } catch (const no_run_error& e) {
        CHECK(e.position() == 1);
    }
}

TEST_CASE("source specifications") {
    CHECK(SourceSpec::parse("champernowne:10").base == 10);
    CHECK(SourceSpec::parse("champernowne").base == 2);
    CHECK_THROWS_AS(SourceSpec::parse("random:2"), error);
    CHECK_THROWS_AS(SourceSpec::parse("champernowne:x"), error);
    CHECK_THROWS_AS(compare_frequencies(load_transducer("fig2.t"), SourceSpec::parse("champernowne:3"), 10, 1),
                    alphabet_error);
}

TEST_CASE("empirical frequencies approach the exact ones") {
    const auto f2 = compare_frequencies(load_transducer("fig2.t"), binary, 1000000, 2);
    CHECK(f2.row({0}).predicted == q(9, 15));
    CHECK(f2.row({0}).deviation < 0.05);

    const auto f6 = compare_frequencies(load_transducer("fig6.t"), binary, 1000000, 2);
    CHECK(f6.component_states == std::vector<std::string>{"1", "2", "3"});
    for (const auto& r : f6.rows)
        CHECK(r.deviation < 0.05);

    const auto fi = compare_frequencies(load_transducer("identity.t"), binary, 1000000, 3);
    CHECK(fi.output_length == 1000000);
    for (const auto& r : fi.rows) {
        CHECK(r.predicted == Rational(1) / Rational(Integer(1) << r.block.size()));
        CHECK(r.deviation < 0.05);
    }
}

TEST_CASE("sliding counts are consistent") {
    for (const char* name : {"fig2.t", "fig6.t", "identity.t"}) {
        const auto rep = compare_frequencies(load_transducer(name), binary, 100000, 4);
        for (std::size_t n = 1; n <= 4; ++n) {
            std::uint64_t total = 0;
            Rational predicted = 0;
            for (const auto& r : rep.rows)
                if (r.block.size() == n) {
                    total += r.count;
                    predicted += r.predicted;
                }
            CHECK(total == rep.output_length - n + 1);
            CHECK(predicted == 1);
        }
    }
}

TEST_CASE("aligned and sliding frequencies agree on champernowne") {
    // An empirical bound at this prefix length, not an exact statement.
    const Word x = champernowne(2, 1000000);
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto aligned = aligned_counts(x, n, 2);
        const double blocks = static_cast<double>(x.size() / n);
        for (const auto& w : words_of_length(2, n)) {
            const double sliding = static_cast<double>(count_occurrences(x, w)) / (x.size() - n + 1);
            const double al = static_cast<double>(aligned[block_code(w, 2)]) / blocks;
            CHECK(std::abs(sliding - al) < 0.05);
        }
    }
}

TEST_CASE("deviation shrinks with the prefix length on fig2.t") {
    // Regression guard on one observed trend; nothing bounds the convergence rate.
    const auto t = load_transducer("fig2.t");
    const double small = compare_frequencies(t, binary, 10000, 1).row({0}).deviation;
    const double large = compare_frequencies(t, binary, 1000000, 1).row({0}).deviation;
    CHECK(large <= small);
}
