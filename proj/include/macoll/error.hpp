#pragma once

#include <stdexcept>
#include <string>

namespace macoll {

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when polynomial degrees or vector lengths do not match.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace macoll
