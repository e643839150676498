#pragma once

#include <stdexcept>
#include <string>

namespace corrgeom {

/// Bad arguments or malformed input data. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to reach its accuracy contract. Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string &what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

}  // namespace corrgeom
