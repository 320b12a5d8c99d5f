#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ftsc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ValidationKind {
    EmptyInput,
    DuplicateSymbol,
    ComplementaryPair,
    InvalidSymbol,
    UnknownSymbol,
    TautologicalClause,
};

const char* to_string(ValidationKind kind);

// Violation of the input constraints on literal lists and clause sets.
class ValidationError : public Error {
public:
    ValidationError(ValidationKind kind, std::string symbol);

    [[nodiscard]] ValidationKind kind() const { return kind_; }
    [[nodiscard]] const std::string& symbol() const { return symbol_; }

private:
    ValidationKind kind_;
    std::string symbol_;
};

class UnboundSymbol : public Error {
public:
    explicit UnboundSymbol(std::string symbol)
        : Error("unbound symbol: " + symbol), symbol_(std::move(symbol)) {}
    [[nodiscard]] const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t index, std::size_t lo, std::size_t hi)
        : Error("index " + std::to_string(index) + " outside [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "]") {}
};

class EnumerationCapExceeded : public Error {
public:
    EnumerationCapExceeded(std::size_t n, std::size_t cap)
        : Error("enumeration of " + std::to_string(n) + "! permutations exceeds cap n <= " +
                std::to_string(cap) + "; override the cap explicitly to proceed") {}
};

// A clause set that does not have the triangular shape.
class MalformedFtsc : public Error {
public:
    using Error::Error;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& variable)
        : Error("variable '" + variable + "' has no grounding domain") {}
};

class EmptyDomain : public Error {
public:
    explicit EmptyDomain(const std::string& variable)
        : Error("grounding domain for variable '" + variable + "' is empty") {}
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class HeaderMismatch : public Error {
public:
    using Error::Error;
};

class SchemaViolation : public Error {
public:
    SchemaViolation(const std::string& field, const std::string& message)
        : Error(field + ": " + message), field_(field) {}
    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

class UncertifiedTheorem : public Error {
public:
    using Error::Error;
};

class NonGroundClause : public Error {
public:
    using Error::Error;
};

class MissingScenarioMetadata : public Error {
public:
    using Error::Error;
};

}  // namespace ftsc
