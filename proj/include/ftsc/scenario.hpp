#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ftsc/fol.hpp"

namespace ftsc {

enum class Priority { High, Medium, Low };

const char* to_string(Priority p);
std::optional<Priority> priority_from_string(std::string_view text);

struct RemediationRule {
    std::size_t clause_index = 0;  // 1..n+1
    std::string suggestion;
    std::string formal_annotation;  // opaque, never evaluated

    friend bool operator==(const RemediationRule&, const RemediationRule&) = default;
};

struct ScenarioAtom {
    fol::PredicateAtom atom;
    std::string gloss;
};

// A domain binding for one predicate list: glosses, rule sentences,
// remediations and declared priorities, all keyed by clause index D_i.
struct Scenario {
    std::string name;
    std::string domain_label;
    std::vector<std::string> variables;
    std::vector<ScenarioAtom> atoms;
    fol::GroundingDomain grounding;
    std::map<std::size_t, std::string> rule_texts;
    std::vector<RemediationRule> remediations;
    std::map<std::size_t, Priority> priorities;
    std::vector<std::size_t> flagged;

    [[nodiscard]] std::size_t n() const { return atoms.size(); }
    [[nodiscard]] std::vector<fol::PredicateAtom> predicate_atoms() const;
    [[nodiscard]] bool is_first_order() const;

    // Ground literal lists, one per grounding instance.
    [[nodiscard]] std::vector<std::vector<InputLiteral>> instances() const;
    [[nodiscard]] Signature signature(std::size_t instance = 0) const;

    [[nodiscard]] const RemediationRule* remediation(std::size_t clause_index) const;
    [[nodiscard]] std::optional<Priority> priority(std::size_t clause_index) const;
    [[nodiscard]] const std::string* rule_text(std::size_t clause_index) const;
};

// Parses and validates a scenario document (JSON; the format is described in README.md).
// Throws ParseError, SchemaViolation, or the core ValidationError.
Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::filesystem::path& path);

}  // namespace ftsc
