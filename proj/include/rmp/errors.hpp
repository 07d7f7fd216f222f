#pragma once

#include <stdexcept>

namespace rmp {

/// Work refused because it would exceed a configured budget (series
/// truncation, oracle input size).
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal arithmetic invariant failed. Signals a bug in this library,
/// not bad input: e.g. a change-of-basis solve producing a non-integer.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A computed value contradicts a divisibility property the verified
/// congruence family guarantees. Must never fire on correct input data.
class TheoremViolationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The fit's row system stayed rank-deficient after every permitted retry.
class DegenerateSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A series cache file exists but fails integrity validation.
class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rmp
