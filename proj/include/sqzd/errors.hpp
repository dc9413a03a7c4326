// errors.hpp — exception types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace sqzd {

// Invalid physical or structural configuration (bad state parameters, bad
// bath spec, malformed scenario config). The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to converge or produced an invariant-violating
// value. The CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure while reading configs or writing artifacts.
// The CLI maps this to exit code 4.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sqzd
