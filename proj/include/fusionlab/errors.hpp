#pragma once

#include <stdexcept>
#include <string>

namespace fusionlab {

// Bad user input (size mismatches, negative arguments, malformed words, ...).
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// An enumeration would exceed the configured cap.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check failed (two formulas that must agree do not).
struct verification_error : std::logic_error {
    explicit verification_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace fusionlab
