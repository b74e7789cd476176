#pragma once

#include <stdexcept>
#include <string>

namespace fpoly {

// Thrown when a config document is structurally invalid. `path` is the
// JSON pointer-ish location of the offending entry ("model.marginal").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error("config error at '" + path + "': " + what),
          path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature gave up before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double requested, double achieved)
        : std::runtime_error("quadrature did not converge (requested abs tol " +
                             std::to_string(requested) + ", achieved " +
                             std::to_string(achieved) + ")"),
          requested_(requested), achieved_(achieved) {}
    double requested_tolerance() const noexcept { return requested_; }
    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double requested_;
    double achieved_;
};

// A mixing-bound profile whose tail cannot be certified summable.
class NonSummableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An experiment was asked to run under a mixing profile that fails the
// required convergence condition and no override was given.
class HypothesisRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fpoly
