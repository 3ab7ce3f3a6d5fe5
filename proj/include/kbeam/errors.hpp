#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kbeam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid grid or solver configuration (even node count, bad tolerance, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite or otherwise unusable input data.
class InputError : public Error {
public:
    using Error::Error;
};

/// The theory rules out a positive solution for the requested parameters.
class NoPositiveSolution : public Error {
public:
    using Error::Error;
};

/// The parameters fall outside the regime where the solution is well posed
/// (b = 0 for the nonlinear eigenproblem).
class ParameterDegenerate : public Error {
public:
    using Error::Error;
};

/// An iteration did not reach its tolerance. Carries the last iterate when
/// one is available.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& what, std::vector<double> last_iterate = {})
        : Error(what), last_iterate_(std::move(last_iterate)) {}

    const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

private:
    std::vector<double> last_iterate_;
};

}  // namespace kbeam
