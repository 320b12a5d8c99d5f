#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ftsc/errors.hpp"

namespace ftsc {

// Interned atom identifier: the position of the symbol in its Signature.
struct SymbolId {
    std::uint32_t value = 0;

    friend auto operator<=>(SymbolId, SymbolId) = default;
};

class Literal {
public:
    constexpr Literal(SymbolId symbol, bool positive)
        : code_(symbol.value * 2u + (positive ? 0u : 1u)) {}

    [[nodiscard]] constexpr SymbolId symbol() const { return SymbolId{code_ / 2u}; }
    [[nodiscard]] constexpr bool positive() const { return (code_ & 1u) == 0u; }
    [[nodiscard]] constexpr Literal negated() const { return Literal(code_ ^ 1u); }
    [[nodiscard]] constexpr Literal operator~() const { return negated(); }

    // Orders by (symbol index, positive before negative).
    friend constexpr auto operator<=>(Literal, Literal) = default;

private:
    constexpr explicit Literal(std::uint32_t code) : code_(code) {}
    std::uint32_t code_;
};

inline constexpr Literal pos(std::uint32_t symbol) { return Literal(SymbolId{symbol}, true); }
inline constexpr Literal neg(std::uint32_t symbol) { return Literal(SymbolId{symbol}, false); }

// A literal as it arrives from outside: a name plus polarity.
struct InputLiteral {
    std::string symbol;
    bool positive = true;
    std::size_t arity = 0;
    bool ground = true;  // false for first-order atoms that still carry variables

    friend bool operator==(const InputLiteral&, const InputLiteral&) = default;
};

// Accepts "a", "~a", "!a", "¬a" (leading negation markers may repeat).
InputLiteral parse_input_literal(std::string_view text);

struct SymbolInfo {
    std::string name;
    std::size_t arity = 0;
    bool ground = true;

    friend bool operator==(const SymbolInfo&, const SymbolInfo&) = default;
};

// The ordered atom universe L = {x_1, ..., x_n}. Each symbol also remembers the
// polarity it had in the input list, so that x_t may itself be a negative literal.
class Signature {
public:
    Signature() = default;

    [[nodiscard]] std::size_t size() const { return symbols_.size(); }
    [[nodiscard]] bool empty() const { return symbols_.empty(); }
    [[nodiscard]] const SymbolInfo& info(SymbolId id) const { return symbols_.at(id.value); }
    [[nodiscard]] const std::string& name(SymbolId id) const { return symbols_.at(id.value).name; }
    [[nodiscard]] std::span<const SymbolInfo> symbols() const { return symbols_; }
    [[nodiscard]] std::optional<SymbolId> find(std::string_view name) const;
    [[nodiscard]] SymbolId id(std::string_view name) const;

    // The input literal x_{k+1} for symbol index k.
    [[nodiscard]] Literal input_literal(std::size_t k) const;

    // Names and arities only; input polarity is not part of symbol identity.
    friend bool operator==(const Signature& a, const Signature& b) { return a.symbols_ == b.symbols_; }

    // Builds a signature from names without applying the input constraints.
    // Used by parsers, where the symbol universe comes from a header.
    static Signature from_names(std::vector<std::string> names);

private:
    friend Signature validate_input(std::span<const InputLiteral> literals);

    std::vector<SymbolInfo> symbols_;
    std::vector<bool> input_positive_;
    std::unordered_map<std::string, std::uint32_t> index_;

    void add(SymbolInfo info, bool positive);
};

// Enforces non-complementarity and uniqueness; the signature keeps input order.
Signature validate_input(std::span<const InputLiteral> literals);
Signature validate_input(std::initializer_list<InputLiteral> literals);

class Clause {
public:
    Clause() = default;
    Clause(std::initializer_list<Literal> literals) : literals_(literals) {}
    explicit Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {}

    [[nodiscard]] std::span<const Literal> literals() const { return literals_; }
    [[nodiscard]] std::size_t size() const { return literals_.size(); }
    [[nodiscard]] bool empty() const { return literals_.empty(); }
    [[nodiscard]] bool contains(Literal l) const;
    [[nodiscard]] bool is_tautology() const;
    [[nodiscard]] bool is_canonical() const;

    auto begin() const { return literals_.begin(); }
    auto end() const { return literals_.end(); }

    // Sequence equality; use canonicalize() first for set semantics.
    friend bool operator==(const Clause&, const Clause&) = default;
    friend auto operator<=>(const Clause& a, const Clause& b) { return a.literals_ <=> b.literals_; }

private:
    std::vector<Literal> literals_;
};

// Sorted by (symbol index, polarity) with duplicates removed. Idempotent.
Clause canonicalize(const Clause& clause);

class ClauseSet {
public:
    ClauseSet() : signature_(std::make_shared<const Signature>()) {}
    ClauseSet(std::shared_ptr<const Signature> signature, std::vector<Clause> clauses);

    [[nodiscard]] const Signature& signature() const { return *signature_; }
    [[nodiscard]] const std::shared_ptr<const Signature>& shared_signature() const { return signature_; }
    [[nodiscard]] std::span<const Clause> clauses() const { return clauses_; }
    [[nodiscard]] const Clause& operator[](std::size_t i) const { return clauses_.at(i); }
    [[nodiscard]] std::size_t size() const { return clauses_.size(); }
    [[nodiscard]] std::size_t literal_count() const;

    // Copy with the clause at zero-based position `index` removed; order is kept.
    [[nodiscard]] ClauseSet without(std::size_t index) const;
    [[nodiscard]] ClauseSet with(Clause extra) const;

    // Structural equality: same symbol names and the same ordered clause list.
    friend bool operator==(const ClauseSet& a, const ClauseSet& b) {
        return a.signature() == b.signature() && a.clauses_ == b.clauses_;
    }

private:
    std::shared_ptr<const Signature> signature_;
    std::vector<Clause> clauses_;
};

// Equality ignoring clause order and literal order within clauses.
bool set_equal(const ClauseSet& a, const ClauseSet& b);

class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t size) : values_(size) {}

    // Bit k of `mask` is the value of symbol k.
    static Assignment from_mask(std::size_t size, std::uint64_t mask);

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::optional<bool> get(SymbolId id) const;
    void set(SymbolId id, bool value);
    void unset(SymbolId id);
    [[nodiscard]] bool is_total() const;

    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::vector<std::optional<bool>> values_;
};

// Throws UnboundSymbol when a literal's symbol has no value.
bool evaluate_literal(Literal literal, const Assignment& assignment);
bool evaluate_clause(const Clause& clause, const Assignment& assignment);
bool evaluate_set(const ClauseSet& set, const Assignment& assignment);

std::string to_string(Literal literal, const Signature& signature);
std::string to_string(const Clause& clause, const Signature& signature);
std::string to_string(const Assignment& assignment, const Signature& signature);

}  // namespace ftsc
