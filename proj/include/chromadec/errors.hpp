#pragma once

#include <stdexcept>
#include <string>

namespace chromadec {

/// A value lies outside the range an operation is defined on.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A vector, code word, or curve set has the wrong number of channels.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value combination violates a structural invariant (e.g. two opponent
/// channels positive at once).
class InconsistencyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed file content (bad header, truncated data, non-numeric field).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable file or unsupported container format.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chromadec
