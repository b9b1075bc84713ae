#ifndef HYBRIDCSP_ERRORS_HPP
#define HYBRIDCSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hybridcsp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Assignment length does not match the network.
class InvalidAssignmentError : public Error {
public:
    using Error::Error;
};

/// revise() was asked about a pair with no constraint between them.
class NoArcError : public Error {
public:
    using Error::Error;
};

/// A value that is not in the variable's current domain.
class InvalidValueError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// decode() on a member whose domain was wiped out.
class InfeasibleMemberError : public Error {
public:
    using Error::Error;
};

class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// Invalid solver parameters or harness configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The backtracking oracle exceeded its node budget.
class OracleBudgetError : public Error {
public:
    using Error::Error;
};

/// Malformed instance document. The message names the line or field.
class ParseError : public Error {
public:
    using Error::Error;
};

class VersionError : public ParseError {
public:
    using ParseError::ParseError;
};

/// A spatial-graph spec could not be realized on the grid.
class GenerationError : public Error {
public:
    using Error::Error;
};

}  // namespace hybridcsp

#endif  // HYBRIDCSP_ERRORS_HPP
