#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ftsc/explain.hpp"
#include "ftsc/generator.hpp"
#include "ftsc/scenario.hpp"

namespace ftsc {

inline constexpr int kReportSchemaVersion = 1;
extern const char* const kToolVersion;

struct ReportLiteral {
    std::string symbol;
    bool positive = true;

    friend bool operator==(const ReportLiteral&, const ReportLiteral&) = default;
};

struct ReportClause {
    std::size_t index = 0;  // t in D_t
    std::vector<ReportLiteral> literals;  // schema order, head first
    std::string text;
    std::string abstract;  // over chain positions: "(x2 ∨ ¬x1)"

    friend bool operator==(const ReportClause&, const ReportClause&) = default;
};

// Trace steps cite clauses by D index rather than premise position, so the
// report reads the same way the theorem statement does.
struct ReportStep {
    std::string kind;
    std::optional<ReportLiteral> literal;
    std::optional<std::size_t> clause;
    std::vector<std::size_t> uses;

    friend bool operator==(const ReportStep&, const ReportStep&) = default;
};

struct ReportTheorem {
    std::size_t removed_index = 0;
    std::string statement;
    std::vector<ReportLiteral> conclusion;
    std::string certification;
    std::size_t trace_step_count = 0;
    std::vector<ReportStep> trace;

    friend bool operator==(const ReportTheorem&, const ReportTheorem&) = default;
};

// One FTSC and its theorems.
struct ReportProblem {
    std::string scenario;  // empty for a bare literal list
    std::string domain;
    std::size_t instance = 0;
    std::size_t n = 0;
    std::uint64_t permutation_index = 0;
    std::vector<std::string> permutation;  // chain order, as input literals ("~a" when negative)
    std::vector<std::string> symbols;      // signature order
    std::vector<ReportClause> clauses;
    std::vector<ReportTheorem> theorems;

    friend bool operator==(const ReportProblem&, const ReportProblem&) = default;
};

struct ReportRanking {
    TheoremRef ref;
    Priority priority = Priority::Low;
    double score = 0.0;

    friend bool operator==(const ReportRanking&, const ReportRanking&) = default;
};

struct ReportMetadata {
    int schema_version = kReportSchemaVersion;
    std::string tool_version;
    std::string timestamp;
    std::string command;

    friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct Report {
    ReportMetadata metadata;
    std::vector<ReportProblem> problems;
    std::vector<Explanation> explanations;
    std::vector<ReportRanking> ranking;

    friend bool operator==(const Report&, const Report&) = default;
};

// UTC ISO-8601; honours SOURCE_DATE_EPOCH when set.
std::string report_timestamp();
ReportMetadata make_metadata(std::string command);

ReportProblem describe_problem(const Ftsc& ftsc, std::span<const Theorem> theorems, const Scenario* scenario = nullptr,
                               std::size_t instance = 0);
void add_ranking(Report& report, const RankedReport& ranked);

std::string to_json(const Report& report, int indent = 2);
// Throws ParseError on malformed JSON and SchemaViolation on missing fields.
Report report_from_json(std::string_view text);

// Rebuilds the clause set and theorems of a problem for independent checking.
// The theorems carry the report's conclusions and traces, marked Unchecked.
// Throws SchemaViolation or MalformedFtsc when the clauses are not an FTSC.
struct ReconstructedProblem {
    std::shared_ptr<const Ftsc> ftsc;
    std::vector<Theorem> theorems;
};
ClauseSet problem_clause_set(const ReportProblem& problem);
ReconstructedProblem reconstruct(const ReportProblem& problem);

// Plain-text table for terminals.
std::string render_text(const Report& report);

}  // namespace ftsc
