#pragma once

#include <stdexcept>
#include <string>

namespace commdeg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class OrderOverflow : public Error {
public:
    using Error::Error;
};

class ElementOutOfRange : public Error {
public:
    using Error::Error;
};

class ParentMismatch : public Error {
public:
    using Error::Error;
};

class NotNormal : public Error {
public:
    using Error::Error;
};

/// Word-grammar rejection; carries a 0-based position into the input text.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

/// Enumeration work would exceed the configured tuple budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// Backtracking search ran out of nodes; the answer is inconclusive,
/// which is distinct from a definite negative.
class SearchBudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A numeric gate failed (orthogonality residual, integer snap, ...).
/// Results guarded by such a gate are never returned unverified.
class NumericalFailure : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class FixtureMissing : public Error {
public:
    using Error::Error;
};

} // namespace commdeg
