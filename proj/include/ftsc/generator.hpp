#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ftsc/core.hpp"

namespace ftsc {

// Elementary-operation counters for one FTSC construction.
struct BuildStats {
    std::uint64_t literal_emissions = 0;
    std::uint64_t comparisons = 0;

    [[nodiscard]] std::uint64_t total() const { return literal_emissions + comparisons; }
};

// A full triangular standard contradiction D_1..D_{n+1} over a chain of literals
// x_1..x_n. D_t = x_t ∨ ¬x_1 ∨ … ∨ ¬x_{t-1} for t <= n, D_{n+1} = ¬x_1 ∨ … ∨ ¬x_n.
// Clauses are stored canonically ordered; schema_literals() gives the printed order.
class Ftsc {
public:
    // The chain follows `permutation`, a permutation of signature indices.
    static Ftsc build(std::shared_ptr<const Signature> signature, std::span<const std::size_t> permutation,
                      BuildStats* stats = nullptr);

    // Recovers chain and permutation from a clause list, rejecting anything
    // that is not exactly triangular.
    static Ftsc from_clause_set(ClauseSet clauses);

    [[nodiscard]] std::size_t n() const { return chain_.size(); }
    [[nodiscard]] const ClauseSet& clauses() const { return clauses_; }
    [[nodiscard]] const Signature& signature() const { return clauses_.signature(); }
    [[nodiscard]] std::span<const std::size_t> permutation() const { return permutation_; }
    [[nodiscard]] std::uint64_t permutation_rank() const;

    // x_t for t in 1..n.
    [[nodiscard]] Literal chain_literal(std::size_t t) const;
    [[nodiscard]] std::span<const Literal> chain() const { return chain_; }

    // D_t for t in 1..n+1.
    [[nodiscard]] const Clause& clause(std::size_t t) const;
    [[nodiscard]] std::vector<Literal> schema_literals(std::size_t t) const;
    [[nodiscard]] std::string schema_text(std::size_t t) const;

    friend bool operator==(const Ftsc& a, const Ftsc& b) {
        return a.clauses_ == b.clauses_ && a.permutation_ == b.permutation_ && a.chain_ == b.chain_;
    }

private:
    Ftsc(ClauseSet clauses, std::vector<std::size_t> permutation, std::vector<Literal> chain)
        : clauses_(std::move(clauses)), permutation_(std::move(permutation)), chain_(std::move(chain)) {}

    ClauseSet clauses_;
    std::vector<std::size_t> permutation_;
    std::vector<Literal> chain_;
};

Ftsc build_ftsc(const Signature& signature, BuildStats* stats = nullptr);
Ftsc build_ftsc(std::shared_ptr<const Signature> signature, BuildStats* stats = nullptr);

// --- permutation enumeration ----------------------------------------------------

// n! for n <= 20; throws std::overflow_error beyond.
std::uint64_t factorial(std::size_t n);

// The permutation of {0..n-1} with the given rank in lexicographic order.
std::vector<std::size_t> permutation_at(std::size_t n, std::uint64_t rank);
std::uint64_t permutation_rank(std::span<const std::size_t> permutation);

struct EnumerationOptions {
    std::size_t cap = 10;
    bool override_cap = false;
};

// Lazily yields build_ftsc over every permutation of the signature in
// lexicographic order. A rank window [first, last) lets independent workers
// partition the permutation space.
class FtscEnumerator {
public:
    explicit FtscEnumerator(Signature signature, EnumerationOptions options = {});
    FtscEnumerator(Signature signature, std::uint64_t first, std::uint64_t last, EnumerationOptions options = {});

    std::optional<Ftsc> next();

    [[nodiscard]] std::uint64_t total() const { return total_; }
    [[nodiscard]] std::uint64_t position() const { return position_; }
    [[nodiscard]] const std::shared_ptr<const Signature>& signature() const { return signature_; }

private:
    std::shared_ptr<const Signature> signature_;
    std::uint64_t total_ = 0;
    std::uint64_t position_ = 0;
    std::uint64_t last_ = 0;
    std::vector<std::size_t> current_;
};

// --- theorems and proof traces ------------------------------------------------------

enum class StepKind { UnitDerivation, Assumption, Propagation, EmptyClause, Discharge };

const char* to_string(StepKind kind);
std::optional<StepKind> step_kind_from_string(std::string_view text);

// One replayable step. `clause` is a zero-based position in the premise set
// S∖{D_i}; `uses` cites earlier steps by index.
struct TraceStep {
    StepKind kind = StepKind::UnitDerivation;
    std::optional<Literal> literal;
    std::optional<std::size_t> clause;
    std::vector<std::size_t> uses;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ProofTrace {
    std::vector<TraceStep> steps;
    // The conjuncts the trace must establish.
    std::vector<Literal> goal;

    friend bool operator==(const ProofTrace&, const ProofTrace&) = default;
};

enum class Certification { Unchecked, Verified, Failed };

const char* to_string(Certification c);
std::optional<Certification> certification_from_string(std::string_view text);

// S∖{D_i} ⊢ ¬D_i, with ¬D_i kept as its list of unit conjuncts.
struct Theorem {
    std::shared_ptr<const Ftsc> source;
    std::size_t removed_index = 0;  // i in 1..n+1
    std::vector<Literal> conclusion;
    ProofTrace trace;
    Certification certified = Certification::Unchecked;

    [[nodiscard]] const Clause& removed_clause() const { return source->clause(removed_index); }
    [[nodiscard]] ClauseSet premises() const { return source->clauses().without(removed_index - 1); }
    [[nodiscard]] std::string statement() const;
};

// Position of D_t inside S∖{D_i}, and the inverse.
std::size_t premise_position(std::size_t removed_index, std::size_t t);
std::size_t clause_index_of_premise(std::size_t removed_index, std::size_t position);

std::vector<Literal> negated_conjuncts(const Ftsc& ftsc, std::size_t removed_index);
ProofTrace build_proof_trace(const Ftsc& ftsc, std::size_t removed_index);
std::vector<Theorem> derive_theorems(std::shared_ptr<const Ftsc> ftsc);

// Human-readable one-line summary of a theorem's trace, with D labels.
std::string summarize_trace(const Theorem& theorem);

}  // namespace ftsc
