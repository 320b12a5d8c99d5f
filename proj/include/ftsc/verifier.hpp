#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ftsc/core.hpp"
#include "ftsc/generator.hpp"

namespace ftsc {

enum class SatStatus { Satisfiable, Unsatisfiable };
enum class SatMethod { TruthTable, Dpll };

const char* to_string(SatStatus status);
const char* to_string(SatMethod method);

struct SatResult {
    SatStatus status = SatStatus::Unsatisfiable;
    std::optional<Assignment> witness;  // total, present iff satisfiable
    SatMethod method = SatMethod::TruthTable;

    [[nodiscard]] bool satisfiable() const { return status == SatStatus::Satisfiable; }
};

// Signatures up to this size are decided by exhaustive enumeration.
inline constexpr std::size_t kTruthTableCutoff = 16;

SatResult is_satisfiable(const ClauseSet& set);

// Both engines are exposed so they can be cross-checked. solve_truth_table
// refuses signatures wider than 24 symbols.
SatResult solve_truth_table(const ClauseSet& set);
// Branches on the lowest unassigned symbol, true first, after unit propagation.
SatResult solve_dpll(const ClauseSet& set);

struct MusReport {
    bool is_unsatisfiable = false;
    std::vector<SatResult> deletion_results;  // entry k: S without clause k
    bool is_mus = false;
};

MusReport check_mus(const ClauseSet& set);

// Outcome of each certification check, for diagnostics.
struct TheoremAudit {
    bool source_unsatisfiable = false;
    bool remainder_satisfiable = false;
    bool conclusion_matches_clause = false;  // conclusion = negations of D_i's literals
    std::vector<bool> conjunct_entailed;     // per conclusion literal l: S∖{D_i} ∪ {¬l} unsat

    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::string describe() const;
};

TheoremAudit audit_theorem(const Theorem& theorem);

// Returns a copy with certified = Verified or Failed.
Theorem check_theorem(const Theorem& theorem);

struct ReplayResult {
    bool ok = false;
    std::optional<std::size_t> failing_step;  // absent when the failure is about the goal
    std::string reason;

    explicit operator bool() const { return ok; }
};

ReplayResult replay_trace(const ProofTrace& trace, const ClauseSet& premises);

}  // namespace ftsc
