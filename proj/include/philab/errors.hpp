#pragma once

#include <stdexcept>
#include <string>

namespace philab {

/// An operation's mathematical preconditions do not hold at the given
/// inputs. Callers may treat this as "no result here", not as a bug.
class InapplicableError : public std::runtime_error {
public:
    explicit InapplicableError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal cross-check failed: a solver or transform produced output
/// that does not verify. Always a bug, never an input condition.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace philab
