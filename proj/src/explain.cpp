#include "ftsc/explain.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace ftsc {

const char* to_string(RoleLabel role) {
    switch (role) {
        case RoleLabel::BaseOverconstraint: return "base-overconstraint";
        case RoleLabel::LocalConditional: return "local-conditional";
        case RoleLabel::IntermediateCausal: return "intermediate-causal";
        case RoleLabel::TreatmentTerminal: return "treatment/terminal";
        case RoleLabel::GlobalUnsat: return "global-unsat";
        case RoleLabel::GenericChain: return "generic-chain";
    }
    return "?";
}

std::optional<RoleLabel> role_from_string(std::string_view text) {
    for (auto r : {RoleLabel::BaseOverconstraint, RoleLabel::LocalConditional, RoleLabel::IntermediateCausal,
                   RoleLabel::TreatmentTerminal, RoleLabel::GlobalUnsat, RoleLabel::GenericChain}) {
        if (text == to_string(r)) return r;
    }
    return std::nullopt;
}

RoleLabel role_for(std::size_t removed_index, std::size_t n) {
    if (removed_index < 1 || removed_index > n + 1) throw IndexOutOfRange(removed_index, 1, n + 1);
    if (removed_index == 1) return RoleLabel::BaseOverconstraint;
    if (removed_index == n + 1) return RoleLabel::GlobalUnsat;
    if (removed_index == 2) return RoleLabel::LocalConditional;
    if (removed_index == n) return RoleLabel::TreatmentTerminal;
    if (removed_index == 3) return RoleLabel::IntermediateCausal;
    return RoleLabel::GenericChain;
}

const char* to_string(Provenance p) { return p == Provenance::Template ? "template" : "external-model"; }

std::optional<Provenance> provenance_from_string(std::string_view text) {
    if (text == "template") return Provenance::Template;
    if (text == "external-model") return Provenance::ExternalModel;
    return std::nullopt;
}

std::string generic_remediation(RoleLabel role, std::size_t removed_index) {
    const std::string d = "D" + std::to_string(removed_index);
    switch (role) {
        case RoleLabel::BaseOverconstraint:
            return "Weaken the base assertion " + d + " or add the evidence it depends on.";
        case RoleLabel::GlobalUnsat:
            return "Relax at least one upstream dependency so that the atoms no longer have to hold jointly.";
        default:
            return "Add a qualifying condition to " + d + " or relax one of its premises.";
    }
}

namespace {

const char* role_reading(RoleLabel role) {
    switch (role) {
        case RoleLabel::BaseOverconstraint:
            return "the base predicate is overconstrained by its downstream dependencies.";
        case RoleLabel::LocalConditional:
            return "a local conditional dependency conflicts with the rest of the chain.";
        case RoleLabel::IntermediateCausal:
            return "an intermediate causal link conflicts with its premises and its consequences.";
        case RoleLabel::TreatmentTerminal:
            return "the terminal obligation contradicts its upstream dependencies.";
        case RoleLabel::GlobalUnsat:
            return "the rule set as a whole is jointly unsatisfiable.";
        case RoleLabel::GenericChain:
            return "a link in the dependency chain conflicts with the clauses around it.";
    }
    return "";
}

std::string join_names(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k > 0) out += (k + 1 == parts.size()) ? " and " : ", ";
        out += parts[k];
    }
    return out;
}

}  // namespace

Explanation verbalize(const Theorem& theorem, const Scenario& scenario, const VerbalizeOptions& options) {
    if (theorem.certified != Certification::Verified) {
        throw UncertifiedTheorem("refusing to explain " + theorem.statement() + ": certification is " +
                                 to_string(theorem.certified));
    }
    const Ftsc& ftsc = *theorem.source;
    const std::size_t n = ftsc.n();
    if (scenario.n() != n) {
        throw ArityMismatch("scenario '" + scenario.name + "' has " + std::to_string(scenario.n()) +
                            " atoms but the theorem is over " + std::to_string(n));
    }
    const std::size_t i = theorem.removed_index;
    const Signature& sig = ftsc.signature();
    const std::string d = "D" + std::to_string(i);

    auto named = [&](Literal l) {
        std::string out = to_string(l, sig);
        const auto& gloss = scenario.atoms.at(l.symbol().value).gloss;
        if (!gloss.empty()) out += " (" + gloss + ")";
        return out;
    };

    Explanation ex;
    ex.ref = TheoremRef{scenario.name, options.scenario_order, ftsc.permutation_rank(), i};
    ex.n = n;
    ex.role = role_for(i, n);
    ex.provenance = Provenance::Template;
    ex.declared_priority = scenario.priority(i);

    if (const auto* rule = scenario.remediation(i)) {
        ex.remediation = rule->suggestion;
        ex.formal_annotation = rule->formal_annotation;
    } else {
        ex.remediation = generic_remediation(ex.role, i);
    }

    std::string text;
    text += "Theorem " + theorem.statement() + " [" + to_string(ex.role) + "] in scenario " + scenario.name;
    if (!scenario.domain_label.empty()) text += " (" + scenario.domain_label + ")";
    text += ".\n";
    text += "Removed clause: " + d + " = " + ftsc.schema_text(i) + ".\n";
    if (const auto* rule = scenario.rule_text(i)) text += "Rule: \"" + *rule + "\"\n";
    text += "Removing " + d + " restores satisfiability, yet " + d + " is refuted by the remainder.\n";

    std::vector<std::string> upstream;
    for (std::size_t t = 1; t < i && t <= n; ++t) upstream.push_back(named(ftsc.chain_literal(t)));

    if (i == n + 1) {
        text += "The remaining clauses force " + join_names(upstream) +
                " to hold together, which the global constraint " + d + " forbids.\n";
        text += "Conflicting obligation: the joint assertion of all " + std::to_string(n) + " atoms.\n";
    } else {
        const Literal head = ftsc.chain_literal(i);
        if (upstream.empty()) {
            text += "The remaining clauses leave no room for " + named(head) +
                    ": asserting it on its own makes the rule set inconsistent.\n";
        } else {
            text += "The remaining clauses force " + join_names(upstream) + "; under them " + named(head) +
                    " cannot hold.\n";
        }
        text += "Conflicting obligation: " + to_string(head, sig) + ".\n";
    }
    text += "Reading: " + std::string(role_reading(ex.role)) + "\n";
    text += "Remediation: " + ex.remediation + "\n";
    if (!ex.formal_annotation.empty()) text += "Formal annotation: " + ex.formal_annotation + "\n";
    ex.narrative = std::move(text);
    return ex;
}

// --- ranking ------------------------------------------------------------------------

Priority fallback_priority(std::size_t removed_index, std::size_t n) {
    if (removed_index == n + 1) return Priority::Medium;
    if (removed_index == 2) return Priority::High;
    return Priority::Low;
}

Priority priority_for_score(double score) {
    if (score >= 2.0 / 3.0) return Priority::High;
    if (score >= 1.0 / 3.0) return Priority::Medium;
    return Priority::Low;
}

namespace {

double clamp_to_band(double score, Priority p) {
    const double third = 1.0 / 3.0;
    const double two_thirds = 2.0 / 3.0;
    switch (p) {
        case Priority::High: return std::clamp(score, two_thirds, 1.0);
        case Priority::Medium: return std::clamp(score, third, std::nextafter(two_thirds, 0.0));
        case Priority::Low: return std::clamp(score, 0.0, std::nextafter(third, 0.0));
    }
    return score;
}

}  // namespace

RankedReport rank(std::vector<Explanation> explanations, const RankingPolicy& policy) {
    if (explanations.empty()) throw ValidationError(ValidationKind::EmptyInput, "");

    RankedReport report;
    report.entries.reserve(explanations.size());
    for (auto& ex : explanations) {
        const std::size_t i = ex.ref.removed_index;
        RankedEntry entry;
        if (policy.kind == RankingPolicy::Kind::ExternalModel && ex.model_score && std::isfinite(*ex.model_score)) {
            entry.score = std::clamp(*ex.model_score, 0.0, 1.0);
            entry.priority = priority_for_score(entry.score);
        } else {
            entry.priority = ex.declared_priority.value_or(fallback_priority(i, ex.n));
            double base = 0.0;
            if (auto it = policy.base_scores.find(entry.priority); it != policy.base_scores.end()) base = it->second;
            if (auto it = policy.index_weights.find(i); it != policy.index_weights.end()) base += it->second;
            entry.score = clamp_to_band(base, entry.priority);
        }
        entry.explanation = std::move(ex);
        report.entries.push_back(std::move(entry));
    }

    std::sort(report.entries.begin(), report.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score > b.score;
        const auto& ra = a.explanation.ref;
        const auto& rb = b.explanation.ref;
        return std::tie(ra.scenario_order, ra.scenario, ra.permutation_id, ra.removed_index,
                        a.explanation.provenance, a.explanation.narrative) <
               std::tie(rb.scenario_order, rb.scenario, rb.permutation_id, rb.removed_index,
                        b.explanation.provenance, b.explanation.narrative);
    });
    return report;
}

}  // namespace ftsc
