#ifndef NORMALITY_ERROR_HPP
#define NORMALITY_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace normality {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class dimension_error : public error {
public:
    using error::error;
};

/// A square system that has no unique solution; carries the rank found.
class singular_error : public error {
public:
    singular_error(std::size_t rank, std::size_t size)
        : error("singular matrix: rank " + std::to_string(rank) + " < " + std::to_string(size)),
          rank_(rank) {}
    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

/// A nullspace was expected to be one-dimensional but is not.
class rank_error : public error {
public:
    explicit rank_error(std::size_t dimension)
        : error("nullspace has dimension " + std::to_string(dimension) + ", expected 1"),
          dimension_(dimension) {}
    std::size_t dimension() const noexcept { return dimension_; }

private:
    std::size_t dimension_;
};

class stochasticity_error : public error {
public:
    using error::error;
};

class positivity_error : public error {
public:
    using error::error;
};

/// Syntax or validation error in a text file; line is 1-based, 0 when unknown.
class parse_error : public error {
public:
    parse_error(std::size_t line, const std::string& what)
        : error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class alphabet_error : public error {
public:
    using error::error;
};

class automaton_error : public error {
public:
    using error::error;
};

/// Every transition of a strongly connected component reachable by empty-output
/// runs forms a trap: the output of a normal input would be finite.
class no_infinite_output : public error {
public:
    no_infinite_output() : error("component has an empty-output trap; output is finite") {}
};

class empty_language : public error {
public:
    empty_language() : error("machine accepts no sequence (empty after trim)") {}
};

/// Input word is not the prefix of any sequence accepted through an analyzable component.
class no_run_error : public error {
public:
    explicit no_run_error(std::size_t position)
        : error("no run survives at input position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace normality

#endif // NORMALITY_ERROR_HPP
