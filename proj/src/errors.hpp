#pragma once

#include <stdexcept>
#include <string>

namespace periraise {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Specific energy >= 0: no closed element set exists.
struct UnboundOrbitError : Error {
    explicit UnboundOrbitError(const std::string& msg) : Error(msg) {}
};

// Malformed input file (gravity coefficients, config, checkpoint).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Step-size underflow, exhausted propellant, non-finite state.
struct PropagationError : Error {
    explicit PropagationError(const std::string& msg) : Error(msg) {}
};

// API misuse (step after done, bad handle, bad argument).
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Non-finite loss during training.
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

}  // namespace periraise
