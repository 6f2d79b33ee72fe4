#pragma once

#include <stdexcept>
#include <string>

namespace pset {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A probability left the rationals (its √2 component is nonzero).
/// Reported rather than rounded, since every shipped scenario is rational.
struct IrrationalProbability : Error {
    using Error::Error;
};

/// A stage map had no rule for a creation monomial present in the state.
struct UnmatchedMonomial : Error {
    using Error::Error;
};

/// A register operation met a faulty or empty site where a normal one was required.
struct NonNormalState : Error {
    using Error::Error;
};

/// A permutation input was not a bijection.
struct InvalidPermutation : Error {
    using Error::Error;
};

/// Network wiring consumed a site twice in one stage, or similar.
struct WiringConflict : Error {
    using Error::Error;
};

/// A compiled stage failed the isometry check.
struct NonIsometricStage : Error {
    using Error::Error;
};

/// Argument outside its documented range (e.g. signal class d > r).
struct DomainError : Error {
    using Error::Error;
};

/// Scenario text failed to parse; carries a 1-based position.
struct ParseError : Error {
    int line = 0;
    int column = 0;

    ParseError(const std::string& msg, int line_, int column_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) +
                ": " + msg),
          line(line_),
          column(column_) {}
};

} // namespace pset
