#include "ftsc/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace ftsc {

const char* to_string(SatStatus status) {
    return status == SatStatus::Satisfiable ? "satisfiable" : "unsatisfiable";
}

const char* to_string(SatMethod method) { return method == SatMethod::TruthTable ? "truth-table" : "dpll"; }

// --- truth table ------------------------------------------------------------------

SatResult solve_truth_table(const ClauseSet& set) {
    const std::size_t n = set.signature().size();
    if (n > 24) throw Error("truth-table enumeration limited to 24 symbols, got " + std::to_string(n));

    struct Masks {
        std::uint32_t positive = 0;
        std::uint32_t negative = 0;
    };
    std::vector<Masks> masks;
    masks.reserve(set.size());
    for (const auto& c : set.clauses()) {
        Masks m;
        for (Literal l : c) {
            const std::uint32_t bit = 1u << l.symbol().value;
            (l.positive() ? m.positive : m.negative) |= bit;
        }
        masks.push_back(m);
    }

    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t a = 0; a < count; ++a) {
        const auto bits = static_cast<std::uint32_t>(a);
        bool all = true;
        for (const auto& m : masks) {
            if (((bits & m.positive) | (~bits & m.negative)) == 0) {
                all = false;
                break;
            }
        }
        if (all) return SatResult{SatStatus::Satisfiable, Assignment::from_mask(n, a), SatMethod::TruthTable};
    }
    return SatResult{SatStatus::Unsatisfiable, std::nullopt, SatMethod::TruthTable};
}

// --- DPLL ---------------------------------------------------------------------------

namespace {

class Dpll {
public:
    explicit Dpll(const ClauseSet& set) : n_(set.signature().size()), values_(n_, kUnassigned) {
        for (const auto& c : set.clauses()) clauses_.push_back(canonicalize(c));
    }

    bool solve() { return search(); }

    [[nodiscard]] Assignment model() const {
        Assignment a(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            a.set(SymbolId{static_cast<std::uint32_t>(k)}, values_[k] == kTrue);
        }
        return a;
    }

private:
    static constexpr signed char kUnassigned = -1;
    static constexpr signed char kFalse = 0;
    static constexpr signed char kTrue = 1;

    std::size_t n_;
    std::vector<signed char> values_;
    std::vector<Clause> clauses_;
    std::vector<std::uint32_t> trail_;

    [[nodiscard]] signed char value(Literal l) const {
        const signed char v = values_[l.symbol().value];
        if (v == kUnassigned) return kUnassigned;
        return (v == kTrue) == l.positive() ? kTrue : kFalse;
    }

    void assign(Literal l) {
        values_[l.symbol().value] = l.positive() ? kTrue : kFalse;
        trail_.push_back(l.symbol().value);
    }

    void backtrack(std::size_t mark) {
        while (trail_.size() > mark) {
            values_[trail_.back()] = kUnassigned;
            trail_.pop_back();
        }
    }

    // Returns false on conflict.
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : clauses_) {
                std::optional<Literal> unit;
                std::size_t unassigned = 0;
                bool satisfied = false;
                for (Literal l : c) {
                    const auto v = value(l);
                    if (v == kTrue) {
                        satisfied = true;
                        break;
                    }
                    if (v == kUnassigned) {
                        ++unassigned;
                        unit = l;
                    }
                }
                if (satisfied) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    assign(*unit);
                    changed = true;
                }
            }
        }
        return true;
    }

    bool search() {
        const std::size_t mark = trail_.size();
        if (!propagate()) {
            backtrack(mark);
            return false;
        }
        auto next = std::find(values_.begin(), values_.end(), kUnassigned);
        if (next == values_.end()) return true;
        const auto var = static_cast<std::uint32_t>(next - values_.begin());
        for (bool polarity : {true, false}) {
            const std::size_t branch_mark = trail_.size();
            assign(Literal(SymbolId{var}, polarity));
            if (search()) return true;
            backtrack(branch_mark);
        }
        backtrack(mark);
        return false;
    }
};

}  // namespace

SatResult solve_dpll(const ClauseSet& set) {
    Dpll solver(set);
    if (solver.solve()) return SatResult{SatStatus::Satisfiable, solver.model(), SatMethod::Dpll};
    return SatResult{SatStatus::Unsatisfiable, std::nullopt, SatMethod::Dpll};
}

SatResult is_satisfiable(const ClauseSet& set) {
    return set.signature().size() <= kTruthTableCutoff ? solve_truth_table(set) : solve_dpll(set);
}

// --- MUS ------------------------------------------------------------------------------

MusReport check_mus(const ClauseSet& set) {
    MusReport report;
    report.is_unsatisfiable = !is_satisfiable(set).satisfiable();
    report.deletion_results.reserve(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) report.deletion_results.push_back(is_satisfiable(set.without(k)));
    report.is_mus = report.is_unsatisfiable &&
                    std::all_of(report.deletion_results.begin(), report.deletion_results.end(),
                                [](const SatResult& r) { return r.satisfiable(); });
    return report;
}

// --- theorem certification ----------------------------------------------------------

bool TheoremAudit::passed() const {
    return source_unsatisfiable && remainder_satisfiable && conclusion_matches_clause &&
           std::all_of(conjunct_entailed.begin(), conjunct_entailed.end(), [](bool b) { return b; });
}

std::string TheoremAudit::describe() const {
    std::ostringstream out;
    out << "S unsat: " << (source_unsatisfiable ? "yes" : "no")
        << ", remainder sat: " << (remainder_satisfiable ? "yes" : "no")
        << ", conclusion = negated clause: " << (conclusion_matches_clause ? "yes" : "no") << ", conjuncts entailed: ";
    for (bool b : conjunct_entailed) out << (b ? '1' : '0');
    return out.str();
}

TheoremAudit audit_theorem(const Theorem& theorem) {
    TheoremAudit audit;
    if (!theorem.source) return audit;
    const ClauseSet& s = theorem.source->clauses();
    const std::size_t i = theorem.removed_index;
    if (i < 1 || i > s.size()) return audit;

    audit.source_unsatisfiable = !is_satisfiable(s).satisfiable();
    const ClauseSet remainder = s.without(i - 1);
    audit.remainder_satisfiable = is_satisfiable(remainder).satisfiable();

    std::vector<Literal> negated;
    for (Literal l : s[i - 1]) negated.push_back(l.negated());
    audit.conclusion_matches_clause =
        canonicalize(Clause(negated)) == canonicalize(Clause(theorem.conclusion)) && !theorem.conclusion.empty();

    for (Literal l : theorem.conclusion) {
        if (l.symbol().value >= s.signature().size()) {
            audit.conjunct_entailed.push_back(false);
            continue;
        }
        audit.conjunct_entailed.push_back(!is_satisfiable(remainder.with(Clause{l.negated()})).satisfiable());
    }
    return audit;
}

Theorem check_theorem(const Theorem& theorem) {
    Theorem out = theorem;
    out.certified = audit_theorem(theorem).passed() ? Certification::Verified : Certification::Failed;
    return out;
}

// --- trace replay ----------------------------------------------------------------------

namespace {

struct StepState {
    std::optional<Literal> literal;
    bool conditional = false;  // derived under the open assumption
    bool live = true;          // false once its scope has been discharged
    StepKind kind = StepKind::UnitDerivation;
};

ReplayResult fail(std::size_t step, std::string reason) { return ReplayResult{false, step, std::move(reason)}; }

}  // namespace

ReplayResult replay_trace(const ProofTrace& trace, const ClauseSet& premises) {
    std::vector<StepState> states;
    std::optional<std::size_t> open_assumption;
    std::optional<std::size_t> contradiction;

    auto cited_literals = [&](const TraceStep& step, std::size_t k, bool allow_conditional,
                              std::vector<Literal>& out) -> std::optional<ReplayResult> {
        for (std::size_t u : step.uses) {
            if (u >= k) return fail(k, "cites a later or same step " + std::to_string(u));
            const auto& st = states[u];
            if (!st.live) return fail(k, "cites discharged step " + std::to_string(u));
            if (st.conditional && !allow_conditional) return fail(k, "cites conditional step " + std::to_string(u));
            if (!st.literal) return fail(k, "cites step " + std::to_string(u) + " which derives no literal");
            out.push_back(*st.literal);
        }
        return std::nullopt;
    };
    auto cited_clause = [&](const TraceStep& step, std::size_t k) -> const Clause* {
        if (!step.clause || *step.clause >= premises.size()) return nullptr;
        (void)k;
        return &premises[*step.clause];
    };
    auto falsified = [](Literal l, const std::vector<Literal>& known) {
        return std::find(known.begin(), known.end(), l.negated()) != known.end();
    };

    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const TraceStep& step = trace.steps[k];
        StepState state;
        state.kind = step.kind;

        switch (step.kind) {
            case StepKind::UnitDerivation:
            case StepKind::Propagation: {
                const bool conditional = step.kind == StepKind::Propagation;
                if (conditional && !open_assumption) return fail(k, "propagation outside an assumption");
                if (!step.literal) return fail(k, "derivation without a literal");
                const Clause* clause = cited_clause(step, k);
                if (!clause) return fail(k, "missing or out-of-range premise clause");
                std::vector<Literal> known;
                if (auto err = cited_literals(step, k, conditional, known)) return *err;
                if (!clause->contains(*step.literal)) return fail(k, "derived literal not in cited clause");
                for (Literal l : *clause) {
                    if (l != *step.literal && !falsified(l, known)) {
                        return fail(k, "clause literal not falsified by cited steps");
                    }
                }
                state.literal = step.literal;
                state.conditional = conditional;
                break;
            }
            case StepKind::Assumption: {
                if (open_assumption) return fail(k, "nested assumption");
                if (!step.literal) return fail(k, "assumption without a literal");
                if (!step.uses.empty() || step.clause) return fail(k, "assumption cites premises");
                state.literal = step.literal;
                state.conditional = true;
                open_assumption = k;
                contradiction.reset();
                break;
            }
            case StepKind::EmptyClause: {
                if (!open_assumption) return fail(k, "empty clause outside an assumption");
                if (step.literal) return fail(k, "empty-clause step derives a literal");
                const Clause* clause = cited_clause(step, k);
                if (!clause) return fail(k, "missing or out-of-range premise clause");
                std::vector<Literal> known;
                if (auto err = cited_literals(step, k, true, known)) return *err;
                for (Literal l : *clause) {
                    if (!falsified(l, known)) return fail(k, "cited clause is not fully falsified");
                }
                state.conditional = true;
                contradiction = k;
                break;
            }
            case StepKind::Discharge: {
                if (!open_assumption || !contradiction) return fail(k, "discharge without assumption and contradiction");
                if (step.uses.size() != 2 || open_assumption != step.uses[0] || contradiction != step.uses[1]) {
                    return fail(k, "discharge must cite the open assumption and its empty clause");
                }
                if (!step.literal || *step.literal != states[*open_assumption].literal->negated()) {
                    return fail(k, "discharge does not negate the assumption");
                }
                for (std::size_t j = *open_assumption; j < k; ++j) states[j].live = false;
                open_assumption.reset();
                contradiction.reset();
                state.literal = step.literal;
                break;
            }
        }
        states.push_back(state);
    }

    if (open_assumption) return fail(*open_assumption, "assumption never discharged");
    if (trace.goal.empty()) return ReplayResult{false, std::nullopt, "empty goal"};
    for (Literal g : trace.goal) {
        bool established = std::any_of(states.begin(), states.end(), [&](const StepState& s) {
            return s.live && !s.conditional && s.literal && *s.literal == g;
        });
        if (!established) return ReplayResult{false, std::nullopt, "goal conjunct not established"};
    }
    return ReplayResult{true, std::nullopt, {}};
}

}  // namespace ftsc
