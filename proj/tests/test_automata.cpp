#include <catch_amalgamated.hpp>

#include <functional>

#include "test_support.hpp"

using namespace normality;
using namespace normality::testing;

namespace {

std::set<std::string> names_of(const std::vector<std::string>& states, const std::vector<State>& ids) {
    std::set<std::string> out;
    for (State s : ids)
        out.insert(states[s]);
    return out;
}

/*
 * Number of accepting runs (capped at 2) of a on the ultimately periodic word
 * u·v^ω, computed on the finite graph of (state, position in the lasso) pairs.
 * A node is live when it reaches a final node lying on a cycle; two runs exist
 * iff two live initial nodes exist or some live node reachable through live
 * nodes has two live successors.
 */
int lasso_runs(const Automaton& a, const Word& u, const Word& v) {
    const std::size_t len = u.size() + v.size(), n = a.num_states();
    auto sym = [&](std::size_t pos) { return pos < u.size() ? u[pos] : v[pos - u.size()]; };
    auto next_pos = [&](std::size_t pos) { return pos + 1 < len ? pos + 1 : u.size(); };
    const std::size_t nodes = n * len;
    std::vector<std::vector<std::size_t>> succ(nodes);
    for (State q = 0; q < n; ++q)
        for (std::size_t pos = 0; pos < len; ++pos)
            for (const auto& t : a.transitions)
                if (t.src == q && t.symbol == sym(pos))
                    succ[q * len + pos].push_back(t.dst * len + next_pos(pos));

    auto reachable_from = [&](std::size_t x) {
        std::vector<bool> seen(nodes, false);
        std::vector<std::size_t> todo{x};
        seen[x] = true;
        while (!todo.empty()) {
            const auto y = todo.back();
            todo.pop_back();
            for (auto z : succ[y])
                if (!seen[z])
                    todo.push_back(z), seen[z] = true;
        }
        return seen;
    };
    std::vector<std::vector<bool>> reach(nodes);
    for (std::size_t x = 0; x < nodes; ++x)
        reach[x] = reachable_from(x);
    const auto is_final = membership(a, a.final);
    std::vector<bool> good(nodes, false);
    for (std::size_t f = 0; f < nodes; ++f)
        if (is_final[f / len])
            for (auto s : succ[f])
                good[f] = good[f] || reach[s][f];
    std::vector<bool> live(nodes, false);
    for (std::size_t x = 0; x < nodes; ++x)
        for (std::size_t f = 0; f < nodes; ++f)
            live[x] = live[x] || (good[f] && reach[x][f]);

    std::vector<std::size_t> starts;
    for (State i : a.initial)
        if (live[i * len])
            starts.push_back(i * len);
    if (starts.size() != 1)
        return std::min<int>(static_cast<int>(starts.size()), 2);
    for (std::size_t x = 0; x < nodes; ++x) {
        if (!live[x] || !reach[starts[0]][x])
            continue;
        int live_succ = 0;
        for (auto s : succ[x])
            live_succ += live[s] ? 1 : 0;
        if (live_succ >= 2)
            return 2;
    }
    return 1;
}

/// Bounded search: some lasso u·v^ω with |u| + |v| <= max_len has two accepting runs.
bool ambiguous_by_enumeration(const Automaton& a, std::size_t max_len) {
    for (std::size_t total = 1; total <= max_len; ++total)
        for (std::size_t lu = 0; lu < total; ++lu)
            for (const auto& u : words_of_length(a.alphabet.size(), lu))
                for (const auto& v : words_of_length(a.alphabet.size(), total - lu))
                    if (lasso_runs(a, u, v) >= 2)
                        return true;
    return false;
}

/// Arbitrary automaton over {0,1}: each possible transition present with probability p.
Automaton random_automaton(std::mt19937& rng, std::size_t n, double p) {
    std::bernoulli_distribution edge(p), coin(0.4);
    Automaton a;
    a.alphabet = Alphabet::digits(2);
    for (std::size_t i = 0; i < n; ++i)
        a.states.push_back(std::to_string(i));
    for (State s = 0; s < n; ++s)
        for (Symbol x = 0; x < 2; ++x)
            for (State d = 0; d < n; ++d)
                if (edge(rng))
                    a.transitions.push_back({s, x, d});
    a.initial = {0};
    for (State s = 1; s < n; ++s)
        if (coin(rng))
            a.initial.push_back(s);
    for (State s = 0; s < n; ++s)
        if (coin(rng))
            a.final.push_back(s);
    return a;
}

} // namespace

TEST_CASE("parse the sample transducers") {
    const auto t2 = load_transducer("fig2.t");
    CHECK(t2.num_states() == 4);
    CHECK(t2.transitions.size() == 8);
    CHECK(t2.input.size() == 2);
    CHECK(t2.output.size() == 2);
    // 1 -1|10-> 2
    const auto& long_one = t2.transitions[1];
    CHECK(t2.states[long_one.src] == "1");
    CHECK(t2.states[long_one.dst] == "2");
    CHECK(t2.output.format(long_one.output) == "10");
    // 3 -1|ε-> 4
    CHECK(t2.transitions[4].output.empty());

    const auto t6 = load_transducer("fig6.t");
    CHECK(t6.num_states() == 4);
    CHECK(t6.transitions.size() == 8);
    CHECK(names_of(t6.states, t6.initial) == std::set<std::string>{"1"});
    CHECK(names_of(t6.states, t6.final) == std::set<std::string>{"2", "4"});
}

TEST_CASE("parse errors carry line numbers") {
    const std::string head = "transducer\nin 0 1\nout 0 1\nstates a b\ninitial a\nfinal a\n";
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_transducer(text);
        } catch (const parse_error& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of(head + "t a 0 0 c\n") == 7);        // undeclared state
    CHECK(line_of(head + "t a 2 0 b\n") == 7);        // unknown input symbol
    CHECK(line_of(head + "t a 0 02 b\n") == 7);       // unknown output symbol
    CHECK(line_of(head + "t a 0 0 b\nt a 0 0 b\n") == 8); // duplicate transition
    CHECK(line_of(head + "t a 0 b\n") == 7);          // wrong arity
    CHECK(line_of(head + "bogus\n") == 7);
    CHECK_THROWS_AS(parse_transducer("automaton\nin 0\nstates a\ninitial a\nfinal a\n"), parse_error);
    CHECK_THROWS_AS(parse_transducer(""), parse_error);
    // comments and blank lines are ignored
    CHECK_NOTHROW(parse_transducer("# c\n" + head + "\nt a 0 - b # trailing\n"));
}

TEST_CASE("format round trip") {
    for (const char* name : {"fig2.t", "fig6.t", "identity.t"}) {
        const auto t = load_transducer(name);
        const auto again = parse_transducer(write_transducer(t));
        CHECK(again.states == t.states);
        CHECK(again.transitions == t.transitions);
        CHECK(again.initial == t.initial);
        CHECK(again.final == t.final);
    }
    const auto a = load_automaton("fig1.a");
    const auto again = parse_automaton(write_automaton(a));
    CHECK(again.transitions == a.transitions);
}

TEST_CASE("multi-character symbols") {
    const auto t = parse_transducer("transducer\nin lo hi\nout x yy\nstates s\ninitial s\nfinal s\n"
                                    "t s lo x,yy s\nt s hi - s\n");
    CHECK(t.transitions[0].output == Word{0, 1});
    CHECK(t.output.format(t.transitions[0].output) == "x,yy");
    CHECK(t.output.parse_word("yy,x") == Word{1, 0});
}

TEST_CASE("trim") {
    const auto t2 = load_transducer("fig2.t");
    const auto trimmed = trim(t2);
    CHECK(trimmed.states == t2.states);
    CHECK(trimmed.transitions == t2.transitions);

    auto extra = t2;
    extra.states.push_back("9");
    const auto cleaned = trim(extra);
    CHECK(cleaned.states == t2.states);

    // A final state reachable only through a dead end, never on a cycle.
    const auto dead = parse_automaton("automaton\nin 0\nstates a b\ninitial a\nfinal b\nt a 0 b\n");
    CHECK(trim(dead).empty());
    const auto unreachable =
        parse_automaton("automaton\nin 0\nstates a b\ninitial a\nfinal b\nt a 0 a\nt b 0 b\n");
    const auto u = trim(unreachable);
    CHECK(u.empty());

    // a -> b where only a loops through the final state: b is dropped.
    const auto tail = parse_automaton("automaton\nin 0 1\nstates a b\ninitial a\nfinal a\nt a 0 a\nt a 1 b\n");
    CHECK(trim(tail).states == std::vector<std::string>{"a"});
}

TEST_CASE("trim is idempotent") {
    std::mt19937 rng(17);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_automaton(rng, 1 + i % 5, 0.25);
        const auto once = trim(a);
        const auto twice = trim(once);
        CHECK(twice.states == once.states);
        CHECK(twice.transitions == once.transitions);
        // every surviving state lies on an accepting run
        for (State s = 0; s < once.num_states(); ++s) {
            auto from_s = once;
            from_s.initial = {s};
            CHECK(trim(from_s).num_states() > 0);
        }
    }
}

TEST_CASE("input automaton") {
    const auto a = input_automaton(load_transducer("fig2.t"));
    const auto fig1 = load_automaton("fig1.a");
    CHECK(a.states == fig1.states);
    CHECK(std::set<AutomatonTransition>(a.transitions.begin(), a.transitions.end()) ==
          std::set<AutomatonTransition>(fig1.transitions.begin(), fig1.transitions.end()));
    CHECK(a.initial == fig1.initial);
    CHECK(a.final == fig1.final);

    Transducer empty;
    empty.states = {"s"};
    empty.input = Alphabet::digits(2);
    empty.output = Alphabet::digits(2);
    CHECK(input_automaton(empty).transitions.empty());

    // two outputs on the same edge collapse to one input transition
    const auto two = parse_transducer("transducer\nin 0\nout 0 1\nstates s\ninitial s\nfinal s\n"
                                      "t s 0 0 s\nt s 0 1 s\n");
    CHECK(input_automaton(two).transitions.size() == 1);
}

TEST_CASE("scc decomposition") {
    const auto t6 = load_transducer("fig6.t");
    const auto scc = scc_decompose(t6);
    REQUIRE(scc.size() == 2);
    CHECK(names_of(t6.states, scc.components[0].members) == std::set<std::string>{"1", "2", "3"});
    CHECK(names_of(t6.states, scc.components[1].members) == std::set<std::string>{"4"});
    CHECK(scc.components[0].contains_final);
    CHECK(scc.components[1].contains_final);
    CHECK_FALSE(scc.components[1].is_trivial);

    CHECK(scc_decompose(load_automaton("fig1.a")).size() == 1);

    const auto dag = parse_automaton("automaton\nin 0\nstates a b c\ninitial a\nfinal c\nt a 0 b\nt b 0 c\nt a 0 c\n");
    const auto d = scc_decompose(dag);
    CHECK(d.size() == 3);
    for (const auto& c : d.components)
        CHECK(c.is_trivial);
}

TEST_CASE("scc decomposition partitions states and its quotient is acyclic") {
    std::mt19937 rng(23);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_automaton(rng, 1 + i % 6, 0.2);
        const auto scc = scc_decompose(a);
        std::vector<int> seen(a.num_states(), 0);
        for (std::size_t c = 0; c < scc.size(); ++c)
            for (State s : scc.components[c].members) {
                ++seen[s];
                CHECK(scc.component_of[s] == c);
            }
        for (int x : seen)
            CHECK(x == 1);
        // same component iff mutually reachable
        const auto adj = successor_lists(a);
        std::vector<std::vector<bool>> reach(a.num_states());
        for (State s = 0; s < a.num_states(); ++s) {
            std::vector<bool> r(a.num_states(), false);
            std::vector<State> todo{s};
            r[s] = true;
            while (!todo.empty()) {
                const State x = todo.back();
                todo.pop_back();
                for (State y : adj[x])
                    if (!r[y])
                        r[y] = true, todo.push_back(y);
            }
            reach[s] = r;
        }
        for (State s = 0; s < a.num_states(); ++s)
            for (State t = 0; t < a.num_states(); ++t)
                CHECK((scc.component_of[s] == scc.component_of[t]) == (reach[s][t] && reach[t][s]));
    }
}

TEST_CASE("determinism") {
    CHECK_FALSE(is_deterministic(load_automaton("fig1.a")));
    CHECK_FALSE(is_deterministic(input_automaton(load_transducer("fig6.t"))));
    CHECK(is_deterministic(parse_automaton("automaton\nin a\nstates s\ninitial s\nfinal s\nt s a s\n")));
    CHECK(is_deterministic(load_automaton("parity.a")));
    CHECK(is_complete(load_automaton("parity.a")));
    CHECK_FALSE(is_complete(load_automaton("fig1.a")));
}

TEST_CASE("unambiguity examples") {
    CHECK(check_unambiguous(load_automaton("fig1.a")).unambiguous);
    CHECK(check_unambiguous(input_automaton(load_transducer("fig2.t"))).unambiguous);
    CHECK(check_unambiguous(input_automaton(load_transducer("fig6.t"))).unambiguous);
    CHECK(check_unambiguous(load_automaton("parity.a")).unambiguous);

    const auto doubled =
        parse_automaton("automaton\nin a\nstates p q\ninitial p q\nfinal p q\nt p a p\nt q a q\n");
    const auto r = check_unambiguous(doubled);
    REQUIRE_FALSE(r.unambiguous);
    REQUIRE(r.witness);
    CHECK(lasso_runs(doubled, r.witness->prefix, r.witness->loop) == 2);
}

TEST_CASE("unambiguity: a later divergence is found") {
    // On 0^ω the run may switch from s to t at any time; both loops are final.
    const auto a = parse_automaton("automaton\nin 0\nstates s t\ninitial s\nfinal s t\nt s 0 s\nt s 0 t\nt t 0 t\n");
    const auto r = check_unambiguous(a);
    REQUIRE_FALSE(r.unambiguous);
    CHECK(lasso_runs(a, r.witness->prefix, r.witness->loop) == 2);

    // The branch into t is harmless when t is not final.
    const auto b = trim(parse_automaton(
        "automaton\nin 0\nstates s t\ninitial s\nfinal s\nt s 0 s\nt s 0 t\nt t 0 t\n"));
    CHECK(check_unambiguous(b).unambiguous);
}

TEST_CASE("deterministic automata are unambiguous") {
    std::mt19937 rng(29);
    for (int i = 0; i < 100; ++i) {
        const auto a = trim(random_dfa(rng, 1 + i % 6, false));
        if (a.empty())
            continue;
        CHECK(check_unambiguous(a).unambiguous);
    }
}

TEST_CASE("check_unambiguous agrees with a lasso-enumeration oracle") {
    // Witnesses of ambiguity are verified exactly by counting accepting runs on
    // the returned lasso. In the other direction the oracle searches all lassos
    // u·v^ω with |u| + |v| <= 8; this bounded search is an approximation that
    // can only miss ambiguity, never invent it.
    std::mt19937 rng(31);
    int ambiguous = 0, unambiguous = 0;
    for (int i = 0; i < 300; ++i) {
        const auto a = trim(random_automaton(rng, 1 + i % 4, 0.18));
        if (a.empty())
            continue;
        const auto r = check_unambiguous(a);
        if (r.unambiguous) {
            ++unambiguous;
            CHECK_FALSE(ambiguous_by_enumeration(a, 8));
        } else {
            ++ambiguous;
            REQUIRE(r.witness);
            CHECK_FALSE(r.witness->loop.empty());
            CHECK(lasso_runs(a, r.witness->prefix, r.witness->loop) == 2);
            CHECK(ambiguous_by_enumeration(a, 8));
        }
    }
    CHECK(ambiguous > 20);
    CHECK(unambiguous > 20);
}

TEST_CASE("components of an unambiguous automaton are unambiguous") {
    std::mt19937 rng(37);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 60; ++i) {
        const auto a = trim(random_automaton(rng, 2 + i % 4, 0.2));
        if (a.empty() || !check_unambiguous(a).unambiguous)
            continue;
        ++checked;
        const auto scc = scc_decompose(a);
        for (std::size_t c = 0; c < scc.size(); ++c) {
            std::vector<bool> keep(a.num_states(), false);
            for (State s : scc.components[c].members)
                keep[s] = true;
            for (State s : scc.components[c].members) {
                auto part = a;
                part.initial = {s};
                const auto sub = trim(restrict_to(part, keep));
                if (!sub.empty())
                    CHECK(check_unambiguous(sub).unambiguous);
            }
        }
    }
    CHECK(checked >= 30);
}
