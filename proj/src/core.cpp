#include "ftsc/core.hpp"

#include <algorithm>
#include <cctype>

namespace ftsc {

const char* to_string(ValidationKind kind) {
    switch (kind) {
        case ValidationKind::EmptyInput: return "EmptyInput";
        case ValidationKind::DuplicateSymbol: return "DuplicateSymbol";
        case ValidationKind::ComplementaryPair: return "ComplementaryPair";
        case ValidationKind::InvalidSymbol: return "InvalidSymbol";
        case ValidationKind::UnknownSymbol: return "UnknownSymbol";
        case ValidationKind::TautologicalClause: return "TautologicalClause";
    }
    return "?";
}

ValidationError::ValidationError(ValidationKind kind, std::string symbol)
    : Error(std::string(to_string(kind)) + (symbol.empty() ? "" : "(" + symbol + ")")),
      kind_(kind),
      symbol_(std::move(symbol)) {}

namespace {

constexpr std::string_view kNegationSign = "\xC2\xAC";  // ¬

bool valid_symbol_name(std::string_view name) {
    if (name.empty()) return false;
    if (name.front() == '~' || name.front() == '!' || name.starts_with(kNegationSign)) return false;
    return std::none_of(name.begin(), name.end(),
                        [](unsigned char c) { return std::isspace(c) || std::iscntrl(c); });
}

}  // namespace

InputLiteral parse_input_literal(std::string_view text) {
    InputLiteral out;
    for (;;) {
        if (text.starts_with('~') || text.starts_with('!')) {
            text.remove_prefix(1);
        } else if (text.starts_with(kNegationSign)) {
            text.remove_prefix(kNegationSign.size());
        } else {
            break;
        }
        out.positive = !out.positive;
    }
    out.symbol = std::string(text);
    return out;
}

// --- Signature ---------------------------------------------------------------

std::optional<SymbolId> Signature::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return SymbolId{it->second};
}

SymbolId Signature::id(std::string_view name) const {
    if (auto found = find(name)) return *found;
    throw ValidationError(ValidationKind::UnknownSymbol, std::string(name));
}

Literal Signature::input_literal(std::size_t k) const {
    if (k >= symbols_.size()) throw IndexOutOfRange(k, 0, symbols_.size() - 1);
    return Literal(SymbolId{static_cast<std::uint32_t>(k)}, input_positive_[k]);
}

void Signature::add(SymbolInfo info, bool positive) {
    index_.emplace(info.name, static_cast<std::uint32_t>(symbols_.size()));
    symbols_.push_back(std::move(info));
    input_positive_.push_back(positive);
}

Signature Signature::from_names(std::vector<std::string> names) {
    Signature sig;
    for (auto& name : names) {
        if (sig.find(name)) throw ValidationError(ValidationKind::DuplicateSymbol, name);
        sig.add(SymbolInfo{std::move(name), 0, true}, true);
    }
    return sig;
}

Signature validate_input(std::span<const InputLiteral> literals) {
    if (literals.empty()) throw ValidationError(ValidationKind::EmptyInput, "");

    Signature sig;
    for (const auto& lit : literals) {
        if (!valid_symbol_name(lit.symbol)) throw ValidationError(ValidationKind::InvalidSymbol, lit.symbol);
        if (auto seen = sig.find(lit.symbol)) {
            bool same_polarity = sig.input_positive_[seen->value] == lit.positive;
            throw ValidationError(same_polarity ? ValidationKind::DuplicateSymbol
                                                : ValidationKind::ComplementaryPair,
                                  lit.symbol);
        }
        sig.add(SymbolInfo{lit.symbol, lit.arity, lit.ground}, lit.positive);
    }
    return sig;
}

Signature validate_input(std::initializer_list<InputLiteral> literals) {
    return validate_input(std::span<const InputLiteral>(literals.begin(), literals.size()));
}

// --- Clause -------------------------------------------------------------------

bool Clause::contains(Literal l) const {
    return std::find(literals_.begin(), literals_.end(), l) != literals_.end();
}

bool Clause::is_tautology() const {
    const Clause c = canonicalize(*this);
    auto lits = c.literals();
    for (std::size_t k = 1; k < lits.size(); ++k) {
        if (lits[k].symbol() == lits[k - 1].symbol()) return true;
    }
    return false;
}

bool Clause::is_canonical() const {
    return std::adjacent_find(literals_.begin(), literals_.end(),
                              [](Literal a, Literal b) { return !(a < b); }) == literals_.end();
}

Clause canonicalize(const Clause& clause) {
    std::vector<Literal> lits(clause.begin(), clause.end());
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    return Clause(std::move(lits));
}

// --- ClauseSet ----------------------------------------------------------------

ClauseSet::ClauseSet(std::shared_ptr<const Signature> signature, std::vector<Clause> clauses)
    : signature_(std::move(signature)), clauses_(std::move(clauses)) {
    if (!signature_) signature_ = std::make_shared<const Signature>();
    const auto n = signature_->size();
    for (const auto& clause : clauses_) {
        for (Literal l : clause) {
            if (l.symbol().value >= n) {
                throw ValidationError(ValidationKind::UnknownSymbol, "#" + std::to_string(l.symbol().value));
            }
        }
    }
}

std::size_t ClauseSet::literal_count() const {
    std::size_t total = 0;
    for (const auto& c : clauses_) total += c.size();
    return total;
}

ClauseSet ClauseSet::without(std::size_t index) const {
    if (index >= clauses_.size()) throw IndexOutOfRange(index, 0, clauses_.size() - 1);
    ClauseSet out = *this;
    out.clauses_.erase(out.clauses_.begin() + static_cast<std::ptrdiff_t>(index));
    return out;
}

ClauseSet ClauseSet::with(Clause extra) const {
    auto clauses = clauses_;
    clauses.push_back(std::move(extra));
    return ClauseSet(signature_, std::move(clauses));
}

bool set_equal(const ClauseSet& a, const ClauseSet& b) {
    if (!(a.signature() == b.signature())) return false;
    auto normalized = [](const ClauseSet& s) {
        std::vector<Clause> cs;
        cs.reserve(s.size());
        for (const auto& c : s.clauses()) cs.push_back(canonicalize(c));
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        return cs;
    };
    return normalized(a) == normalized(b);
}

// --- Assignment / evaluation ---------------------------------------------------

Assignment Assignment::from_mask(std::size_t size, std::uint64_t mask) {
    Assignment a(size);
    for (std::size_t k = 0; k < size; ++k) a.values_[k] = ((mask >> k) & 1u) != 0;
    return a;
}

std::optional<bool> Assignment::get(SymbolId id) const {
    if (id.value >= values_.size()) return std::nullopt;
    return values_[id.value];
}

void Assignment::set(SymbolId id, bool value) {
    if (id.value >= values_.size()) values_.resize(id.value + 1);
    values_[id.value] = value;
}

void Assignment::unset(SymbolId id) {
    if (id.value < values_.size()) values_[id.value].reset();
}

bool Assignment::is_total() const {
    return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
}

bool evaluate_literal(Literal literal, const Assignment& assignment) {
    auto value = assignment.get(literal.symbol());
    if (!value) throw UnboundSymbol("#" + std::to_string(literal.symbol().value));
    return *value == literal.positive();
}

bool evaluate_clause(const Clause& clause, const Assignment& assignment) {
    bool satisfied = false;
    for (Literal l : clause) satisfied = evaluate_literal(l, assignment) || satisfied;
    return satisfied;
}

bool evaluate_set(const ClauseSet& set, const Assignment& assignment) {
    for (const auto& c : set.clauses()) {
        for (Literal l : c) {
            if (!assignment.get(l.symbol())) throw UnboundSymbol(set.signature().name(l.symbol()));
        }
    }
    return std::all_of(set.clauses().begin(), set.clauses().end(),
                       [&](const Clause& c) { return evaluate_clause(c, assignment); });
}

// --- Rendering ------------------------------------------------------------------

std::string to_string(Literal literal, const Signature& signature) {
    std::string out = literal.positive() ? "" : std::string(kNegationSign);
    out += signature.name(literal.symbol());
    return out;
}

std::string to_string(const Clause& clause, const Signature& signature) {
    if (clause.empty()) return "\xE2\x8A\xA5";  // ⊥
    std::string out = "(";
    bool first = true;
    for (Literal l : clause) {
        if (!first) out += " \xE2\x88\xA8 ";  // ∨
        out += to_string(l, signature);
        first = false;
    }
    return out + ")";
}

std::string to_string(const Assignment& assignment, const Signature& signature) {
    std::string out = "{";
    for (std::size_t k = 0; k < assignment.size(); ++k) {
        auto v = assignment.get(SymbolId{static_cast<std::uint32_t>(k)});
        if (!v) continue;
        if (out.size() > 1) out += ", ";
        out += (k < signature.size() ? signature.name(SymbolId{static_cast<std::uint32_t>(k)})
                                     : "#" + std::to_string(k));
        out += *v ? "=true" : "=false";
    }
    return out + "}";
}

}  // namespace ftsc
