#pragma once

#include <stdexcept>
#include <string>

namespace statecmp {

// Invalid input or precondition violation; the CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Internal numerical consistency failure (should not happen on valid input);
// also mapped to exit code 2 by the CLI.
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace statecmp
