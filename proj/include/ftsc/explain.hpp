#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftsc/generator.hpp"
#include "ftsc/scenario.hpp"

namespace ftsc {

enum class RoleLabel {
    BaseOverconstraint,
    LocalConditional,
    IntermediateCausal,
    TreatmentTerminal,
    GlobalUnsat,
    GenericChain,
};

const char* to_string(RoleLabel role);
std::optional<RoleLabel> role_from_string(std::string_view text);

// Fixed mapping from clause position to its reading in a dependency chain:
// D_1 base, D_2 local conditional, D_3 intermediate, D_4..D_{n-1} generic
// chain links, D_n terminal obligation, D_{n+1} global constraint. Earlier
// rules win where they overlap for small n.
RoleLabel role_for(std::size_t removed_index, std::size_t n);

enum class Provenance { Template, ExternalModel };

const char* to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view text);

struct TheoremRef {
    std::string scenario;
    std::size_t scenario_order = 0;
    std::uint64_t permutation_id = 0;
    std::size_t removed_index = 0;

    friend bool operator==(const TheoremRef&, const TheoremRef&) = default;
};

struct Explanation {
    TheoremRef ref;
    std::size_t n = 0;
    RoleLabel role = RoleLabel::GenericChain;
    std::string narrative;
    std::string remediation;
    std::string formal_annotation;
    Provenance provenance = Provenance::Template;
    std::optional<Priority> declared_priority;
    std::optional<double> model_score;
    std::vector<std::string> diagnostics;

    friend bool operator==(const Explanation&, const Explanation&) = default;
};

struct VerbalizeOptions {
    std::size_t scenario_order = 0;
};

// Pure template rendering. Throws UncertifiedTheorem unless the theorem is
// Verified, and ArityMismatch when the scenario size differs from n.
Explanation verbalize(const Theorem& theorem, const Scenario& scenario, const VerbalizeOptions& options = {});

// Remediation used when the scenario declares none for the clause.
std::string generic_remediation(RoleLabel role, std::size_t removed_index);

// --- ranking ------------------------------------------------------------------------

struct RankingPolicy {
    enum class Kind { Declared, ExternalModel };

    Kind kind = Kind::Declared;
    // Scores sit inside priority bands: High [2/3, 1], Medium [1/3, 2/3), Low [0, 1/3).
    std::map<Priority, double> base_scores{{Priority::High, 0.9}, {Priority::Medium, 0.6}, {Priority::Low, 0.3}};
    // Additive per-index adjustments, clamped to the priority band.
    std::map<std::size_t, double> index_weights;
};

// Undeclared clauses: global clause Medium, earliest conditional (D_2) High,
// everything else Low.
Priority fallback_priority(std::size_t removed_index, std::size_t n);
Priority priority_for_score(double score);

struct RankedEntry {
    Explanation explanation;
    Priority priority = Priority::Low;
    double score = 0.0;
};

struct RankedReport {
    std::vector<RankedEntry> entries;  // descending score
};

// Orders by score, then scenario order, scenario name, permutation id and
// removed index. The result does not depend on input order.
RankedReport rank(std::vector<Explanation> explanations, const RankingPolicy& policy = {});

}  // namespace ftsc
