#pragma once

#include <stdexcept>
#include <string>

namespace vfdeg {

// Bad user input: malformed expressions, unknown names, dimension mismatches.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A computation that cannot proceed or cannot be trusted: degenerate zeros,
// quadrature that fails to converge, a suspected zero on a block boundary,
// integrator breakdown, cross-validation disagreement.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vfdeg
