// errors.hpp - exception hierarchy shared by all krho components
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace krho {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The distance accumulator would wrap around; never reported as a huge
/// finite value.
struct OverflowError : Error {
    using Error::Error;
};

/// A text input violated one of the file formats. `line` is 1-based,
/// 0 when the position is unknown.
struct FormatError : Error {
    std::size_t line;
    FormatError(std::size_t line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// The requested edge is not a shortcut (endpoints adjacent, or unreachable).
struct NotAShortcut : Error {
    using Error::Error;
};

/// An operation was invoked outside the regime its contract requires.
struct PreconditionViolated : Error {
    using Error::Error;
};

/// Generator parameters violate the construction's requirements.
struct ParameterViolation : Error {
    using Error::Error;
};

/// No subset of the supplied candidate pool solves the instance.
struct InfeasibleWithinPool : Error {
    using Error::Error;
};

/// The search node cap was exhausted before an answer was proven.
struct SearchBudgetExceeded : Error {
    using Error::Error;
};

/// The greedy solver found no candidate that makes progress.
struct Stalled : Error {
    using Error::Error;
};

/// A per-vertex structure was requested for a vertex that has its ball.
struct NotDeficient : Error {
    using Error::Error;
};

/// A structural guarantee failed. This always indicates a bug in the
/// library, never bad user input; callers should not catch it.
struct StructureViolation : Error {
    using Error::Error;
};

/// A hyperedge exceeds the rank bound of the target instance family.
struct RankTooLarge : Error {
    using Error::Error;
};

/// The supplied vertex set misses at least one hyperedge.
struct NotAHittingSet : Error {
    using Error::Error;
};

/// A shortcut set handed to a projection does not verify.
struct InvalidSolution : Error {
    using Error::Error;
};

/// A per-vertex neighbor-set assignment violates the closeness conditions.
struct IllegalAssignment : Error {
    using Error::Error;
};

}  // namespace krho
