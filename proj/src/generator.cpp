#include "ftsc/generator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ftsc {

// --- Ftsc ------------------------------------------------------------------------

Ftsc Ftsc::build(std::shared_ptr<const Signature> signature, std::span<const std::size_t> permutation,
                 BuildStats* stats) {
    const std::size_t n = signature->size();
    if (n == 0) throw ValidationError(ValidationKind::EmptyInput, "");
    if (permutation.size() != n) throw Error("permutation length differs from signature size");
    std::vector<bool> seen(n, false);
    for (std::size_t k : permutation) {
        if (k >= n) throw IndexOutOfRange(k, 0, n - 1);
        if (seen[k]) throw Error("permutation repeats index " + std::to_string(k));
        seen[k] = true;
    }

    BuildStats local;
    BuildStats& counters = stats ? *stats : local;

    std::vector<Literal> chain;
    chain.reserve(n);
    for (std::size_t k : permutation) chain.push_back(signature->input_literal(k));

    auto by_signature_order = [&counters](Literal a, Literal b) {
        ++counters.comparisons;
        return a < b;
    };

    std::vector<Clause> clauses;
    clauses.reserve(n + 1);
    for (std::size_t t = 1; t <= n + 1; ++t) {
        std::vector<Literal> lits;
        lits.reserve(t);
        if (t <= n) {
            lits.push_back(chain[t - 1]);
            ++counters.literal_emissions;
        }
        for (std::size_t j = 1; j < t && j <= n; ++j) {
            lits.push_back(chain[j - 1].negated());
            ++counters.literal_emissions;
        }
        std::sort(lits.begin(), lits.end(), by_signature_order);
        clauses.emplace_back(std::move(lits));
    }

    return Ftsc(ClauseSet(std::move(signature), std::move(clauses)),
                std::vector<std::size_t>(permutation.begin(), permutation.end()), std::move(chain));
}

Ftsc Ftsc::from_clause_set(ClauseSet clauses) {
    const std::size_t m = clauses.size();
    if (m < 2) throw MalformedFtsc("an FTSC needs at least two clauses");
    const std::size_t n = m - 1;
    if (clauses.signature().size() != n) {
        throw MalformedFtsc("signature has " + std::to_string(clauses.signature().size()) +
                            " symbols but the clause list implies n = " + std::to_string(n));
    }

    std::vector<Clause> canonical;
    canonical.reserve(m);
    for (std::size_t t = 1; t <= m; ++t) {
        Clause c = canonicalize(clauses[t - 1]);
        if (c.is_tautology()) throw MalformedFtsc("D" + std::to_string(t) + " is tautological");
        canonical.push_back(std::move(c));
    }

    std::vector<Literal> chain;
    std::vector<bool> used(n, false);
    for (std::size_t t = 1; t <= n; ++t) {
        const Clause& d = canonical[t - 1];
        if (d.size() != t) {
            throw MalformedFtsc("D" + std::to_string(t) + " has " + std::to_string(d.size()) +
                                " literals, expected " + std::to_string(t));
        }
        std::optional<Literal> head;
        std::size_t matched = 0;
        for (Literal l : d) {
            bool is_premise = std::find(chain.begin(), chain.end(), l.negated()) != chain.end();
            if (is_premise) {
                ++matched;
            } else if (!head) {
                head = l;
            } else {
                throw MalformedFtsc("D" + std::to_string(t) + " has more than one head literal");
            }
        }
        if (!head || matched != t - 1) throw MalformedFtsc("D" + std::to_string(t) + " breaks the triangular chain");
        if (used[head->symbol().value]) throw MalformedFtsc("D" + std::to_string(t) + " reuses a chain symbol");
        used[head->symbol().value] = true;
        chain.push_back(*head);
    }

    std::vector<Literal> last;
    for (Literal l : chain) last.push_back(l.negated());
    if (canonicalize(Clause(last)) != canonical[n]) {
        throw MalformedFtsc("D" + std::to_string(n + 1) + " is not the global negative clause");
    }

    std::vector<std::size_t> permutation;
    permutation.reserve(n);
    for (Literal l : chain) permutation.push_back(l.symbol().value);

    return Ftsc(ClauseSet(clauses.shared_signature(), std::move(canonical)), std::move(permutation),
                std::move(chain));
}

std::uint64_t Ftsc::permutation_rank() const { return ftsc::permutation_rank(permutation_); }

Literal Ftsc::chain_literal(std::size_t t) const {
    if (t < 1 || t > n()) throw IndexOutOfRange(t, 1, n());
    return chain_[t - 1];
}

const Clause& Ftsc::clause(std::size_t t) const {
    if (t < 1 || t > n() + 1) throw IndexOutOfRange(t, 1, n() + 1);
    return clauses_[t - 1];
}

std::vector<Literal> Ftsc::schema_literals(std::size_t t) const {
    if (t < 1 || t > n() + 1) throw IndexOutOfRange(t, 1, n() + 1);
    std::vector<Literal> out;
    if (t <= n()) out.push_back(chain_[t - 1]);
    for (std::size_t j = 1; j < t && j <= n(); ++j) out.push_back(chain_[j - 1].negated());
    return out;
}

std::string Ftsc::schema_text(std::size_t t) const {
    return to_string(Clause(schema_literals(t)), signature());
}

Ftsc build_ftsc(std::shared_ptr<const Signature> signature, BuildStats* stats) {
    std::vector<std::size_t> identity(signature->size());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    return Ftsc::build(std::move(signature), identity, stats);
}

Ftsc build_ftsc(const Signature& signature, BuildStats* stats) {
    return build_ftsc(std::make_shared<const Signature>(signature), stats);
}

// --- permutations ------------------------------------------------------------------

std::uint64_t factorial(std::size_t n) {
    if (n > 20) throw std::overflow_error(std::to_string(n) + "! does not fit in 64 bits");
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= k;
    return f;
}

std::vector<std::size_t> permutation_at(std::size_t n, std::uint64_t rank) {
    const std::uint64_t total = factorial(n);
    if (rank >= total) throw IndexOutOfRange(rank, 0, total - 1);
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<std::size_t> out;
    out.reserve(n);
    for (std::size_t k = n; k >= 1; --k) {
        const std::uint64_t block = factorial(k - 1);
        const auto pick = static_cast<std::size_t>(rank / block);
        rank %= block;
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
}

std::uint64_t permutation_rank(std::span<const std::size_t> permutation) {
    const std::size_t n = permutation.size();
    std::uint64_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t smaller_after = 0;
        for (std::size_t j = k + 1; j < n; ++j) {
            if (permutation[j] < permutation[k]) ++smaller_after;
        }
        rank += smaller_after * factorial(n - 1 - k);
    }
    return rank;
}

FtscEnumerator::FtscEnumerator(Signature signature, EnumerationOptions options)
    : FtscEnumerator(std::move(signature), 0, ~std::uint64_t{0}, options) {}

FtscEnumerator::FtscEnumerator(Signature signature, std::uint64_t first, std::uint64_t last,
                               EnumerationOptions options)
    : signature_(std::make_shared<const Signature>(std::move(signature))) {
    const std::size_t n = signature_->size();
    if (n == 0) throw ValidationError(ValidationKind::EmptyInput, "");
    if (n > options.cap && !options.override_cap) throw EnumerationCapExceeded(n, options.cap);
    total_ = factorial(n);
    last_ = std::min(last, total_);
    position_ = std::min(first, last_);
    if (position_ < last_) current_ = permutation_at(n, position_);
}

std::optional<Ftsc> FtscEnumerator::next() {
    if (position_ >= last_) return std::nullopt;
    Ftsc out = Ftsc::build(signature_, current_);
    ++position_;
    std::next_permutation(current_.begin(), current_.end());
    return out;
}

// --- theorems ------------------------------------------------------------------------

const char* to_string(StepKind kind) {
    switch (kind) {
        case StepKind::UnitDerivation: return "unit-derivation";
        case StepKind::Assumption: return "assumption";
        case StepKind::Propagation: return "propagation";
        case StepKind::EmptyClause: return "empty-clause";
        case StepKind::Discharge: return "discharge";
    }
    return "?";
}

std::optional<StepKind> step_kind_from_string(std::string_view text) {
    for (auto k : {StepKind::UnitDerivation, StepKind::Assumption, StepKind::Propagation, StepKind::EmptyClause,
                   StepKind::Discharge}) {
        if (text == to_string(k)) return k;
    }
    return std::nullopt;
}

const char* to_string(Certification c) {
    switch (c) {
        case Certification::Unchecked: return "unchecked";
        case Certification::Verified: return "verified";
        case Certification::Failed: return "failed";
    }
    return "?";
}

std::optional<Certification> certification_from_string(std::string_view text) {
    for (auto c : {Certification::Unchecked, Certification::Verified, Certification::Failed}) {
        if (text == to_string(c)) return c;
    }
    return std::nullopt;
}

std::string Theorem::statement() const {
    const std::string d = "D" + std::to_string(removed_index);
    return "S\xE2\x88\x96{" + d + "} \xE2\x8A\xA2 \xC2\xAC" + d;  // S∖{Di} ⊢ ¬Di
}

std::size_t premise_position(std::size_t removed_index, std::size_t t) {
    if (t == removed_index) throw Error("D" + std::to_string(t) + " is the removed clause");
    return t < removed_index ? t - 1 : t - 2;
}

std::size_t clause_index_of_premise(std::size_t removed_index, std::size_t position) {
    return position + 1 < removed_index ? position + 1 : position + 2;
}

std::vector<Literal> negated_conjuncts(const Ftsc& ftsc, std::size_t removed_index) {
    const std::size_t n = ftsc.n();
    if (removed_index < 1 || removed_index > n + 1) throw IndexOutOfRange(removed_index, 1, n + 1);
    std::vector<Literal> out;
    for (std::size_t t = 1; t < removed_index && t <= n; ++t) out.push_back(ftsc.chain_literal(t));
    if (removed_index <= n) out.push_back(ftsc.chain_literal(removed_index).negated());
    return out;
}

ProofTrace build_proof_trace(const Ftsc& ftsc, std::size_t removed_index) {
    const std::size_t n = ftsc.n();
    const std::size_t i = removed_index;
    if (i < 1 || i > n + 1) throw IndexOutOfRange(i, 1, n + 1);

    ProofTrace trace;
    trace.goal = negated_conjuncts(ftsc, i);

    // Unconditional chain: D_1..D_{i-1} force x_1..x_{i-1}.
    std::vector<std::size_t> chain_steps;
    for (std::size_t t = 1; t < i && t <= n; ++t) {
        trace.steps.push_back(TraceStep{StepKind::UnitDerivation, ftsc.chain_literal(t), premise_position(i, t),
                                        chain_steps});
        chain_steps.push_back(trace.steps.size() - 1);
    }
    if (i == n + 1) return trace;

    // Refute x_i: assume it, propagate through D_{i+1}..D_n, falsify D_{n+1}.
    trace.steps.push_back(TraceStep{StepKind::Assumption, ftsc.chain_literal(i), std::nullopt, {}});
    const std::size_t assumption = trace.steps.size() - 1;
    chain_steps.push_back(assumption);
    for (std::size_t t = i + 1; t <= n; ++t) {
        trace.steps.push_back(TraceStep{StepKind::Propagation, ftsc.chain_literal(t), premise_position(i, t),
                                        chain_steps});
        chain_steps.push_back(trace.steps.size() - 1);
    }
    trace.steps.push_back(TraceStep{StepKind::EmptyClause, std::nullopt, premise_position(i, n + 1), chain_steps});
    const std::size_t contradiction = trace.steps.size() - 1;
    trace.steps.push_back(TraceStep{StepKind::Discharge, ftsc.chain_literal(i).negated(), std::nullopt,
                                    {assumption, contradiction}});
    return trace;
}

std::vector<Theorem> derive_theorems(std::shared_ptr<const Ftsc> ftsc) {
    std::vector<Theorem> out;
    out.reserve(ftsc->n() + 1);
    for (std::size_t i = 1; i <= ftsc->n() + 1; ++i) {
        Theorem th;
        th.source = ftsc;
        th.removed_index = i;
        th.conclusion = negated_conjuncts(*ftsc, i);
        th.trace = build_proof_trace(*ftsc, i);
        out.push_back(std::move(th));
    }
    return out;
}

std::string summarize_trace(const Theorem& theorem) {
    const Signature& sig = theorem.source->signature();
    auto label = [&](const TraceStep& s) {
        return s.clause ? " [D" + std::to_string(clause_index_of_premise(theorem.removed_index, *s.clause)) + "]"
                        : std::string();
    };
    std::string out;
    for (std::size_t k = 0; k < theorem.trace.steps.size(); ++k) {
        const auto& s = theorem.trace.steps[k];
        if (!out.empty()) out += "; ";
        out += std::to_string(k + 1) + ". " + to_string(s.kind);
        if (s.literal) out += " " + to_string(*s.literal, sig);
        if (s.kind == StepKind::EmptyClause) out += " \xE2\x8A\xA5";
        out += label(s);
    }
    return out;
}

}  // namespace ftsc
