// normality: command-line front end.
//
// Exit codes: check returns 0 (preserves), 1 (does not), 2 (invalid input).
// Other commands return 0 on success and 2 on invalid input; freq returns 1
// when a deviation reaches the tolerance.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

#include <normality/normality.hpp>

using namespace normality;

namespace {

constexpr int exit_invalid = 2;

std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? sep : "") + xs[i];
    return out;
}

std::string member_names(const std::vector<std::string>& states, const std::vector<State>& members) {
    std::vector<std::string> names;
    for (State s : members)
        names.push_back(states[s]);
    return join(names);
}

/// Matrix with a header row and column of state names, columns right-aligned.
void print_matrix(std::ostream& os, const std::string& title, const RMatrix& m,
                  const std::vector<std::string>& names) {
    std::size_t width = 1;
    for (const auto& n : names)
        width = std::max(width, n.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            width = std::max(width, format_rational(m(i, j)).size());
    os << title << ":\n" << std::setw(static_cast<int>(width + 2)) << "";
    for (const auto& n : names)
        os << ' ' << std::setw(static_cast<int>(width)) << n;
    os << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << "  " << std::setw(static_cast<int>(width)) << names[i];
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << ' ' << std::setw(static_cast<int>(width)) << format_rational(m(i, j));
        os << '\n';
    }
}

void print_vector(std::ostream& os, const std::string& title, const RVector& v) {
    std::vector<std::string> xs;
    for (const auto& x : v)
        xs.push_back(format_rational(x));
    os << title << ": " << join(xs) << '\n';
}

Transducer load_transducer_file(const std::string& path) {
    auto m = load_machine(path);
    if (auto* t = std::get_if<Transducer>(&m))
        return std::move(*t);
    throw error(path + ": expected a transducer, found an automaton");
}

Automaton load_automaton_file(const std::string& path) {
    auto m = load_machine(path);
    if (auto* a = std::get_if<Automaton>(&m))
        return std::move(*a);
    throw error(path + ": expected an automaton, found a transducer");
}

std::string format_lasso(const Alphabet& a, const LassoWord& w) {
    return a.format(w.prefix) + " (" + a.format(w.loop) + ")^ω";
}

// check ----------------------------------------------------------------------

int cmd_check(const std::string& path, const std::string& format) {
    const Transducer t = load_transducer_file(path);
    Verdict v;
    try {
        v = preserves_normality(t);
    } catch (const ambiguous_error& e) {
        throw error(std::string(e.what()) + ": two accepting runs on " + format_lasso(t.input, e.witness()));
    }
    const Alphabet& out = v.trimmed.output;
    std::ostream& os = std::cout;
    if (format == "machine") {
        auto frac = [](const Rational& r) { return format_rational(r, true); };
        os << "preserves=" << (v.preserves ? "true" : "false") << '\n';
        os << "empty_normal_domain=" << (v.empty_normal_domain ? "true" : "false") << '\n';
        os << "states_after_trim=" << v.trimmed.num_states() << '\n';
        os << "components=" << v.scc_reports.size() << '\n';
        for (const auto& r : v.scc_reports) {
            const std::string key = "component." + std::to_string(r.id) + ".";
            os << key << "states=" << join(r.names, ",") << '\n';
            os << key << "final=" << (r.contains_final ? "true" : "false") << '\n';
            os << key << "radius_one=" << (r.radius_one ? "true" : "false") << '\n';
            os << key << "analyzed=" << (r.analyzed ? "true" : "false") << '\n';
            if (!r.analyzed)
                continue;
            os << key << "preserves=" << (r.preserves ? "true" : "false") << '\n';
            if (r.no_infinite_output)
                os << key << "no_infinite_output=true\n";
            if (r.witness) {
                os << key << "witness=" << out.format(r.witness->word) << '\n';
                os << key << "freq=" << frac(r.witness->computed) << '\n';
                os << key << "expected=" << frac(r.witness->expected) << '\n';
            }
        }
    } else {
        os << path << ": " << v.trimmed.num_states() << " states after trim, unambiguous\n";
        for (const auto& r : v.scc_reports) {
            os << "component " << r.id << " {" << join(r.names) << "}: ";
            if (!r.contains_final) {
                os << "no final state, skipped\n";
                continue;
            }
            if (!r.radius_one) {
                os << "spectral radius < 1, skipped\n";
                continue;
            }
            if (r.preserves) {
                os << "frequencies are uniform\n";
                continue;
            }
            if (r.no_infinite_output) {
                os << "output is finite on some normal inputs\n";
                continue;
            }
            os << "freq(" << out.format(r.witness->word) << ") = " << format_rational(r.witness->computed)
               << ", expected " << format_rational(r.witness->expected) << '\n';
        }
        if (v.empty_normal_domain)
            os << "no component carries a normal input: the answer holds vacuously\n";
        os << (v.preserves ? "preserves normality" : "does not preserve normality") << '\n';
    }
    return v.preserves ? 0 : 1;
}

// info -----------------------------------------------------------------------

template <class M>
int info_of(const M& machine, std::ostream& os) {
    const M trimmed = trim(machine);
    if (trimmed.empty()) {
        os << "empty after trim\n";
        return 0;
    }
    os << "states after trim: " << join(trimmed.states) << '\n';
    Automaton input;
    if constexpr (std::is_same_v<M, Transducer>)
        input = input_automaton(trimmed);
    else
        input = trimmed;
    const auto u = check_unambiguous(input);
    os << "unambiguous: " << (u.unambiguous ? "yes" : "no, two runs on " + format_lasso(input.alphabet, *u.witness))
       << '\n';
    os << "deterministic: " << (is_deterministic(input) ? "yes" : "no") << '\n';
    const auto scc = scc_decompose(trimmed);
    for (std::size_t id = 0; id < scc.size(); ++id) {
        const auto& c = scc.components[id];
        std::vector<bool> keep(trimmed.num_states(), false);
        for (State s : c.members)
            keep[s] = true;
        const M part = restrict_to(trimmed, keep);
        const RMatrix m = adjacency_matrix(part);
        os << "\ncomponent " << id << " {" << member_names(trimmed.states, c.members) << "}"
           << (c.contains_final ? ", final" : "") << (c.is_trivial ? ", trivial" : "") << '\n';
        print_matrix(os, "M", m, part.states);
        const bool one = !c.is_trivial && radius_is_one(m);
        os << "spectral radius: ";
        if (one)
            os << "1\n";
        else if (m.rows() == 1)
            os << format_rational(m(0, 0)) << '\n';
        else
            os << "< 1\n";
        if (!one || !u.unambiguous)
            continue;
        const auto d = perron_vectors(m);
        print_vector(os, "alpha", d.alpha);
        print_vector(os, "pi", d.pi);
        print_vector(os, "pi*alpha", d.state_distribution());
        print_matrix(os, "P", d.p, part.states);
    }
    return 0;
}

int cmd_info(const std::string& path) {
    const Machine m = load_machine(path);
    return std::visit([](const auto& x) { return info_of(x, std::cout); }, m);
}

// matrices / weights -----------------------------------------------------------

/// Components to report: the requested one, or every analyzable one.
std::vector<std::size_t> selected_components(const Transducer& trimmed, const SccDecomposition& scc,
                                             const std::optional<std::size_t>& requested) {
    if (requested) {
        if (*requested >= scc.size())
            throw error("no component " + std::to_string(*requested) + " (there are " +
                        std::to_string(scc.size()) + ")");
        return {*requested};
    }
    return analyzable_components(trimmed, scc);
}

Transducer validated(const std::string& path) {
    const Transducer trimmed = trim(load_transducer_file(path));
    if (trimmed.empty())
        throw empty_language();
    const auto u = check_unambiguous(input_automaton(trimmed));
    if (!u.unambiguous)
        throw error("transducer is ambiguous: two accepting runs on " + format_lasso(trimmed.input, *u.witness));
    return trimmed;
}

int cmd_matrices(const std::string& path, const std::optional<std::size_t>& requested) {
    const Transducer trimmed = validated(path);
    const auto scc = scc_decompose(trimmed);
    const auto ids = selected_components(trimmed, scc, requested);
    if (ids.empty())
        std::cout << "no component with a final state and spectral radius 1\n";
    for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto a = analyze_component(trimmed, scc, ids[k]);
        const auto& names = a.normalized.states;
        std::ostream& os = std::cout;
        if (k)
            os << '\n';
        os << "# component " << ids[k] << " {" << member_names(trimmed.states, scc.components[ids[k]].members)
           << "}\n";
        os << "states: " << join(names) << '\n';
        print_matrix(os, "E", a.matrices.e, names);
        print_matrix(os, "E*", a.matrices.e_star, names);
        for (Symbol b = 0; b < a.matrices.d.size(); ++b)
            print_matrix(os, "D_" + a.normalized.output.name(b), a.matrices.d[b], names);
        print_matrix(os, "P^", a.matrices.p_hat, names);
        print_vector(os, "pi^", a.matrices.pi_hat);
        os << write_weighted(a.frequency);
    }
    return 0;
}

int cmd_weights(const std::string& path, const std::optional<std::size_t>& requested, std::size_t max_len) {
    const Transducer trimmed = validated(path);
    const auto scc = scc_decompose(trimmed);
    const auto ids = selected_components(trimmed, scc, requested);
    if (ids.empty())
        std::cout << "no component with a final state and spectral radius 1\n";
    for (auto id : ids) {
        if (ids.size() > 1 || requested)
            std::cout << "# component " << id << " {" << member_names(trimmed.states, scc.components[id].members)
                      << "}\n";
        const auto a = analyze_component(trimmed, scc, id);
        for (const auto& [w, x] : block_table(a.frequency, max_len))
            if (!w.empty())
                std::cout << trimmed.output.format(w) << " = " << format_rational(x) << '\n';
    }
    return 0;
}

// select / freq ------------------------------------------------------------------

int cmd_select(const std::string& mode, const std::string& path, const std::string& word) {
    const Automaton dfa = load_automaton_file(path);
    const Word x = dfa.alphabet.parse_word(word);
    const auto m = mode == "oblivious" ? SelectionMode::oblivious : SelectionMode::nonoblivious;
    std::cout << dfa.alphabet.format(prefix_select(x, dfa, m)) << '\n';
    return 0;
}

int cmd_freq(const std::string& path, const std::string& source, std::size_t len, std::size_t max_block,
             const std::string& report, double tolerance) {
    const Transducer t = validated(path);
    const auto rep = compare_frequencies(t, SourceSpec::parse(source), len, max_block);
    std::ostream& os = std::cout;
    if (report == "csv") {
        os << "block,count,empirical,predicted,deviation\n";
        for (const auto& r : rep.rows)
            os << rep.alphabet.format(r.block) << ',' << r.count << ',' << std::setprecision(6) << std::fixed
               << r.empirical_decimal << ',' << format_rational(r.predicted, true) << ',' << r.deviation << '\n';
    } else {
        os << "input " << rep.input_length << " symbols, output " << rep.output_length << " symbols\n";
        os << "component " << rep.component << " {" << join(rep.component_states) << "}\n";
        os << std::left << std::setw(10) << "block" << std::setw(12) << "count" << std::setw(12) << "empirical"
           << std::setw(12) << "predicted" << "deviation\n";
        for (const auto& r : rep.rows)
            os << std::setw(10) << rep.alphabet.format(r.block) << std::setw(12) << r.count << std::setw(12)
               << std::setprecision(6) << std::fixed << r.empirical_decimal << std::setw(12)
               << format_rational(r.predicted) << r.deviation << '\n';
        os << "max deviation " << rep.max_deviation() << " (tolerance " << tolerance << ")\n";
    }
    return rep.max_deviation() < tolerance ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide and measure normality preservation by finite-state transducers"};
    app.require_subcommand(1);

    std::string path, format = "text";
    auto* check = app.add_subcommand("check", "decide whether a transducer preserves normality");
    check->add_option("file", path, "transducer file")->required();
    check->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "machine"}));

    auto* info = app.add_subcommand("info", "components, adjacency matrices, Perron vectors");
    info->add_option("file", path, "automaton or transducer file")->required();

    std::optional<std::size_t> scc;
    auto* matrices = app.add_subcommand("matrices", "dump E, E*, D_b, P^, pi^ and the frequency automaton");
    matrices->add_option("file", path, "transducer file")->required();
    matrices->add_option("--scc", scc, "component id (default: every analyzable one)");

    std::size_t max_len = 3;
    auto* weights = app.add_subcommand("weights", "limiting frequency of each output block");
    weights->add_option("file", path, "transducer file")->required();
    weights->add_option("--scc", scc, "component id (default: every analyzable one)");
    weights->add_option("--max-len", max_len, "longest block")->capture_default_str();

    std::string mode, word;
    auto* select = app.add_subcommand("select", "prefix selection of a word by a deterministic automaton");
    select->add_option("--mode", mode, "selection rule")
        ->required()
        ->check(CLI::IsMember({"oblivious", "nonoblivious"}));
    select->add_option("dfa", path, "complete deterministic automaton file")->required();
    select->add_option("word", word, "input word")->required();

    std::string source = "champernowne:2", report = "text";
    std::size_t len = 1000000, max_block = 2;
    double tolerance = 0.05;
    auto* freq = app.add_subcommand("freq", "compare empirical and exact output block frequencies");
    freq->add_option("file", path, "transducer file")->required();
    freq->add_option("--source", source, "input generator, champernowne:<base>")->capture_default_str();
    freq->add_option("--len", len, "input prefix length")->capture_default_str();
    freq->add_option("--max-block", max_block, "longest block counted")->capture_default_str();
    freq->add_option("--report", report, "output format")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    freq->add_option("--tolerance", tolerance, "largest accepted deviation")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (*check)
            return cmd_check(path, format);
        if (*info)
            return cmd_info(path);
        if (*matrices)
            return cmd_matrices(path, scc);
        if (*weights)
            return cmd_weights(path, scc, max_len);
        if (*select)
            return cmd_select(mode, path, word);
        if (*freq)
            return cmd_freq(path, source, len, max_block, report, tolerance);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    return exit_invalid;
}
