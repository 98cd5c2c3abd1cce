#ifndef NORMALITY_FORMAT_HPP
#define NORMALITY_FORMAT_HPP

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "automaton.hpp"
#include "error.hpp"

namespace normality {

/*
 * Line-oriented machine format. '#' starts a comment.
 *
 *   transducer                     (or: automaton)
 *   in 0 1
 *   out 0 1                        (transducers only)
 *   states 1 2 3 4
 *   initial 1
 *   final 1
 *   t 1 1 10 2                     (transducer: src input output dst; '-' = empty output)
 *   t 1 0 3                        (automaton: src symbol dst)
 *
 * Output words over single-character alphabets are written unseparated;
 * otherwise symbols are separated by commas.
 */

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

struct RawMachine {
    std::string kind;
    std::vector<std::string> in, out, states, initial, final;
    bool has_in = false, has_out = false, has_states = false, has_initial = false, has_final = false;
    struct Edge {
        std::size_t line;
        std::vector<std::string> fields;
    };
    std::vector<Edge> edges;
};

inline RawMachine read_raw(std::string_view text) {
    RawMachine raw;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    auto set_list = [](bool& seen, std::vector<std::string>& dst, std::vector<std::string> src,
                       std::size_t ln, const std::string& key) {
        if (seen)
            throw parse_error(ln, "duplicate '" + key + "' declaration");
        seen = true;
        std::set<std::string> uniq(src.begin(), src.end());
        if (uniq.size() != src.size())
            throw parse_error(ln, "repeated entry in '" + key + "'");
        dst = std::move(src);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto tokens = split_tokens(line);
        if (tokens.empty())
            continue;
        const std::string key = tokens.front();
        tokens.erase(tokens.begin());
        if (raw.kind.empty()) {
            if ((key != "transducer" && key != "automaton") || !tokens.empty())
                throw parse_error(lineno, "expected header 'transducer' or 'automaton'");
            raw.kind = key;
            continue;
        }
        if (key == "in" || key == "alphabet")
            set_list(raw.has_in, raw.in, std::move(tokens), lineno, key);
        else if (key == "out")
            set_list(raw.has_out, raw.out, std::move(tokens), lineno, key);
        else if (key == "states")
            set_list(raw.has_states, raw.states, std::move(tokens), lineno, key);
        else if (key == "initial")
            set_list(raw.has_initial, raw.initial, std::move(tokens), lineno, key);
        else if (key == "final")
            set_list(raw.has_final, raw.final, std::move(tokens), lineno, key);
        else if (key == "t")
            raw.edges.push_back({lineno, std::move(tokens)});
        else
            throw parse_error(lineno, "unknown keyword '" + key + "'");
    }
    if (raw.kind.empty())
        throw parse_error(0, "empty input: missing header");
    if (!raw.has_in)
        throw parse_error(0, "missing 'in' declaration");
    if (!raw.has_states)
        throw parse_error(0, "missing 'states' declaration");
    if (raw.kind == "transducer" && !raw.has_out)
        throw parse_error(0, "missing 'out' declaration");
    if (raw.kind == "automaton" && raw.has_out)
        throw parse_error(0, "'out' is not allowed in an automaton");
    return raw;
}

inline State lookup_state(const std::vector<std::string>& states, const std::string& name,
                          std::size_t line) {
    if (auto s = find_state(states, name))
        return *s;
    throw parse_error(line, "unknown state '" + name + "'");
}

inline Symbol lookup_symbol(const Alphabet& a, const std::string& name, std::size_t line) {
    if (auto s = a.find(name))
        return *s;
    throw parse_error(line, "unknown symbol '" + name + "'");
}

inline std::vector<State> lookup_states(const std::vector<std::string>& states,
                                        const std::vector<std::string>& names) {
    std::vector<State> out;
    for (const auto& n : names)
        out.push_back(lookup_state(states, n, 0));
    std::sort(out.begin(), out.end());
    return out;
}

inline Alphabet make_alphabet(const std::vector<std::string>& names) {
    for (const auto& n : names)
        if (n == "-" || n.find(',') != std::string::npos)
            throw parse_error(0, "symbol '" + n + "' is reserved");
    return Alphabet(names);
}

template <class T>
void reject_duplicates(const std::vector<T>& transitions, const std::vector<std::size_t>& lines) {
    std::set<T> seen;
    for (std::size_t i = 0; i < transitions.size(); ++i)
        if (!seen.insert(transitions[i]).second)
            throw parse_error(lines[i], "duplicate transition");
}

} // namespace detail

inline Transducer parse_transducer(std::string_view text) {
    const auto raw = detail::read_raw(text);
    if (raw.kind != "transducer")
        throw parse_error(1, "expected a transducer");
    Transducer t;
    t.states = raw.states;
    t.input = detail::make_alphabet(raw.in);
    t.output = detail::make_alphabet(raw.out);
    t.initial = detail::lookup_states(t.states, raw.initial);
    t.final = detail::lookup_states(t.states, raw.final);
    std::vector<std::size_t> lines;
    for (const auto& e : raw.edges) {
        if (e.fields.size() != 4)
            throw parse_error(e.line, "transition needs 4 fields: src input output dst");
        TransducerTransition tr;
        tr.src = detail::lookup_state(t.states, e.fields[0], e.line);
        tr.input = detail::lookup_symbol(t.input, e.fields[1], e.line);
        try {
            tr.output = t.output.parse_word(e.fields[2]);
        } catch (const alphabet_error& err) {
            throw parse_error(e.line, err.what());
        }
        tr.dst = detail::lookup_state(t.states, e.fields[3], e.line);
        t.transitions.push_back(std::move(tr));
        lines.push_back(e.line);
    }
    detail::reject_duplicates(t.transitions, lines);
    return t;
}

inline Automaton parse_automaton(std::string_view text) {
    const auto raw = detail::read_raw(text);
    if (raw.kind != "automaton")
        throw parse_error(1, "expected an automaton");
    Automaton a;
    a.states = raw.states;
    a.alphabet = detail::make_alphabet(raw.in);
    a.initial = detail::lookup_states(a.states, raw.initial);
    a.final = detail::lookup_states(a.states, raw.final);
    std::vector<std::size_t> lines;
    for (const auto& e : raw.edges) {
        if (e.fields.size() != 3)
            throw parse_error(e.line, "transition needs 3 fields: src symbol dst");
        a.transitions.push_back({detail::lookup_state(a.states, e.fields[0], e.line),
                                 detail::lookup_symbol(a.alphabet, e.fields[1], e.line),
                                 detail::lookup_state(a.states, e.fields[2], e.line)});
        lines.push_back(e.line);
    }
    detail::reject_duplicates(a.transitions, lines);
    return a;
}

using Machine = std::variant<Transducer, Automaton>;

inline Machine parse_machine(std::string_view text) {
    const auto raw = detail::read_raw(text);
    if (raw.kind == "transducer")
        return parse_transducer(text);
    return parse_automaton(text);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Machine load_machine(const std::string& path) { return parse_machine(read_file(path)); }

namespace detail {

inline void write_names(std::ostream& os, const char* key, const std::vector<std::string>& names) {
    os << key;
    for (const auto& n : names)
        os << ' ' << n;
    os << '\n';
}

inline void write_states(std::ostream& os, const char* key, const std::vector<std::string>& names,
                         const std::vector<State>& subset) {
    os << key;
    for (State s : subset)
        os << ' ' << names[s];
    os << '\n';
}

} // namespace detail

inline std::string write_transducer(const Transducer& t) {
    std::ostringstream os;
    os << "transducer\n";
    detail::write_names(os, "in", t.input.names());
    detail::write_names(os, "out", t.output.names());
    detail::write_names(os, "states", t.states);
    detail::write_states(os, "initial", t.states, t.initial);
    detail::write_states(os, "final", t.states, t.final);
    for (const auto& tr : t.transitions)
        os << "t " << t.states[tr.src] << ' ' << t.input.name(tr.input) << ' '
           << t.output.format(tr.output) << ' ' << t.states[tr.dst] << '\n';
    return os.str();
}

inline std::string write_automaton(const Automaton& a) {
    std::ostringstream os;
    os << "automaton\n";
    detail::write_names(os, "in", a.alphabet.names());
    detail::write_names(os, "states", a.states);
    detail::write_states(os, "initial", a.states, a.initial);
    detail::write_states(os, "final", a.states, a.final);
    for (const auto& tr : a.transitions)
        os << "t " << a.states[tr.src] << ' ' << a.alphabet.name(tr.symbol) << ' '
           << a.states[tr.dst] << '\n';
    return os.str();
}

} // namespace normality

#endif // NORMALITY_FORMAT_HPP
