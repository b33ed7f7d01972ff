#pragma once

#include <stdexcept>
#include <string>

namespace ata {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input text could not be parsed; line/col are 1-based positions.
struct ParseError : Error {
    int line = 0;
    int col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " +
                std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

/// Automaton violates a structural requirement (guard partition, missing
/// rule row, dangling location, ...).
struct IllFormedAutomaton : Error {
    using Error::Error;
};

struct AlphabetMismatch : Error {
    using Error::Error;
};

/// A run handed to the encoder is not a lossy computation of the system.
struct InvalidRun : Error {
    using Error::Error;
};

/// A decision procedure exceeded its wall-clock budget.
struct TimeoutError : Error {
    using Error::Error;
};

} // namespace ata
