#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mgame {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integration produced a non-finite state.
class NumericsError : public Error {
public:
    NumericsError(std::size_t step, std::size_t component, const std::string& what)
        : Error(what), step_(step), component_(component) {}

    std::size_t step() const noexcept { return step_; }
    std::size_t component() const noexcept { return component_; }

private:
    std::size_t step_;
    std::size_t component_;
};

class BracketError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(double best, const std::string& what) : Error(what), best_(best) {}

    /// Iterate with the smallest residual seen before giving up.
    double best() const noexcept { return best_; }

private:
    double best_;
};

class NoRootError : public Error {
public:
    NoRootError(std::size_t node, const std::string& what) : Error(what), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

/// Malformed scenario input. `line` is 0 when the problem is not tied to a line.
class ScenarioError : public Error {
public:
    ScenarioError(std::size_t line, const std::string& what) : Error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace mgame
