#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ftsc/generator.hpp"
#include "ftsc/verifier.hpp"
#include "oracle.hpp"

using namespace ftsc;

namespace {

Ftsc make(int n) { return build_ftsc(Signature::from_names(oracle::names(n))); }

std::shared_ptr<const Ftsc> shared(int n) { return std::make_shared<const Ftsc>(make(n)); }

std::vector<std::string> schema_texts(const Ftsc& f) {
    std::vector<std::string> out;
    for (std::size_t t = 1; t <= f.n() + 1; ++t) out.push_back(f.schema_text(t));
    return out;
}

}  // namespace

TEST(BuildFtsc, DegenerateN1) {
    const Ftsc f = make(1);
    ASSERT_EQ(f.clauses().size(), 2u);
    EXPECT_EQ(f.clause(1), (Clause{pos(0)}));
    EXPECT_EQ(f.clause(2), (Clause{neg(0)}));
}

TEST(BuildFtsc, MedicalExample) {
    const Ftsc f = build_ftsc(validate_input({{"Infection"}, {"HighWBC"}, {"Fever"}, {"RequiresAntibiotics"}}));
    const std::vector<std::string> expected{
        "(Infection)",
        "(HighWBC ∨ ¬Infection)",
        "(Fever ∨ ¬Infection ∨ ¬HighWBC)",
        "(RequiresAntibiotics ∨ ¬Infection ∨ ¬HighWBC ∨ ¬Fever)",
        "(¬Infection ∨ ¬HighWBC ∨ ¬Fever ∨ ¬RequiresAntibiotics)",
    };
    EXPECT_EQ(schema_texts(f), expected);
}

TEST(BuildFtsc, ThreeLetters) {
    const Ftsc f = build_ftsc(validate_input({{"a"}, {"b"}, {"c"}}));
    const std::vector<std::string> expected{"(a)", "(b ∨ ¬a)", "(c ∨ ¬a ∨ ¬b)", "(¬a ∨ ¬b ∨ ¬c)"};
    EXPECT_EQ(schema_texts(f), expected);
}

TEST(BuildFtsc, MatchesIndependentSchema) {
    for (int n = 1; n <= 10; ++n) {
        const Ftsc f = make(n);
        auto expected = oracle::ftsc(n);
        auto actual = oracle::from_set(f.clauses());
        ASSERT_EQ(actual.size(), expected.size());
        for (std::size_t t = 0; t < expected.size(); ++t) {
            std::sort(expected[t].begin(), expected[t].end());
            std::sort(actual[t].begin(), actual[t].end());
            EXPECT_EQ(actual[t], expected[t]) << "n=" << n << " D" << (t + 1);
        }
    }
}

TEST(BuildFtsc, ShapeAndLiteralCount) {
    for (int n = 1; n <= 64; ++n) {
        const Ftsc f = make(n);
        for (int t = 1; t <= n; ++t) ASSERT_EQ(f.clause(t).size(), static_cast<std::size_t>(t));
        ASSERT_EQ(f.clause(n + 1).size(), static_cast<std::size_t>(n));
        ASSERT_EQ(f.clauses().literal_count(), static_cast<std::size_t>(n * (n + 3) / 2));
        for (const auto& c : f.clauses().clauses()) {
            ASSERT_TRUE(c.is_canonical());
            ASSERT_FALSE(c.is_tautology());
        }
    }
}

TEST(BuildFtsc, Deterministic) {
    for (int n = 1; n <= 12; ++n) EXPECT_EQ(make(n), make(n));
}

TEST(BuildFtsc, NegativeInputLiteralBecomesChainLiteral) {
    const Ftsc f = build_ftsc(validate_input({parse_input_literal("~rain"), parse_input_literal("wet")}));
    EXPECT_EQ(f.schema_text(1), "(¬rain)");
    EXPECT_EQ(f.schema_text(2), "(wet ∨ rain)");
    EXPECT_EQ(f.schema_text(3), "(rain ∨ ¬wet)");
    EXPECT_FALSE(is_satisfiable(f.clauses()).satisfiable());
}

TEST(BuildFtsc, OperationCountIsAtMostCubic) {
    std::vector<double> xs, ys;
    for (int n = 2; n <= 12; ++n) {
        BuildStats stats;
        (void)build_ftsc(Signature::from_names(oracle::names(n)), &stats);
        EXPECT_EQ(stats.literal_emissions, static_cast<std::uint64_t>(n * (n + 3) / 2));
        xs.push_back(std::log(n));
        ys.push_back(std::log(static_cast<double>(stats.total())));
    }
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
    double num = 0, den = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        num += (xs[k] - mx) * (ys[k] - my);
        den += (xs[k] - mx) * (xs[k] - mx);
    }
    EXPECT_LE(num / den, 3.2);
}

TEST(FromClauseSet, RecoversChainAndPermutation) {
    auto sig = std::make_shared<const Signature>(Signature::from_names(oracle::names(5)));
    for (std::uint64_t rank : {0u, 1u, 37u, 119u}) {
        const auto perm = permutation_at(5, rank);
        const Ftsc f = Ftsc::build(sig, perm);
        const Ftsc back = Ftsc::from_clause_set(f.clauses());
        EXPECT_EQ(back, f);
        EXPECT_EQ(back.permutation_rank(), rank);
    }
}

TEST(FromClauseSet, RejectsNonTriangularSets) {
    auto sig = std::make_shared<const Signature>(Signature::from_names(oracle::names(2)));
    EXPECT_THROW(Ftsc::from_clause_set(ClauseSet(sig, {Clause{pos(0)}, Clause{pos(1), neg(0)}, Clause{neg(0)}})),
                 MalformedFtsc);
    EXPECT_THROW(Ftsc::from_clause_set(ClauseSet(sig, {Clause{pos(0)}, Clause{pos(1), pos(0)}, Clause{neg(0), neg(1)}})),
                 MalformedFtsc);
    EXPECT_THROW(Ftsc::from_clause_set(ClauseSet(sig, {Clause{pos(0)}, Clause{neg(0), neg(1)}})), MalformedFtsc);
}

TEST(Permutations, RankRoundTrip) {
    EXPECT_EQ(factorial(0), 1u);
    EXPECT_EQ(factorial(6), 720u);
    EXPECT_EQ(factorial(20), 2432902008176640000ull);
    EXPECT_THROW(factorial(21), std::overflow_error);
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<std::size_t> expected(n);
        std::iota(expected.begin(), expected.end(), 0u);
        for (std::uint64_t r = 0; r < factorial(n); ++r) {
            const auto p = permutation_at(n, r);
            ASSERT_EQ(p, expected) << "lexicographic order broken at rank " << r;
            ASSERT_EQ(permutation_rank(p), r);
            std::next_permutation(expected.begin(), expected.end());
        }
    }
}

TEST(Enumerator, CountsAndDistinctness) {
    const std::uint64_t expected[] = {1, 1, 2, 6, 24, 120, 720};
    for (std::size_t n = 1; n <= 6; ++n) {
        FtscEnumerator it(Signature::from_names(oracle::names(static_cast<int>(n))));
        EXPECT_EQ(it.total(), expected[n]);
        std::set<std::vector<Clause>> seen;
        std::uint64_t count = 0;
        while (auto f = it.next()) {
            std::vector<Clause> key(f->clauses().clauses().begin(), f->clauses().clauses().end());
            std::sort(key.begin(), key.end());
            seen.insert(key);
            EXPECT_EQ(f->permutation_rank(), count);
            ++count;
        }
        EXPECT_EQ(count, expected[n]);
        EXPECT_EQ(seen.size(), expected[n]);
    }
}

TEST(Enumerator, ThreeLettersGiveSixSets) {
    FtscEnumerator it(validate_input({{"a"}, {"b"}, {"c"}}));
    std::vector<std::string> firsts;
    while (auto f = it.next()) firsts.push_back(f->schema_text(1) + f->schema_text(2));
    EXPECT_EQ(firsts.size(), 6u);
    EXPECT_EQ(firsts.front(), "(a)(b ∨ ¬a)");
    EXPECT_EQ(firsts.back(), "(c)(b ∨ ¬c)");
}

TEST(Enumerator, CapAndOverride) {
    const auto sig = Signature::from_names(oracle::names(11));
    EXPECT_THROW(FtscEnumerator{sig}, EnumerationCapExceeded);
    EXPECT_THROW(FtscEnumerator(Signature::from_names(oracle::names(5)), EnumerationOptions{4, false}),
                 EnumerationCapExceeded);
    FtscEnumerator forced(sig, EnumerationOptions{10, true});
    EXPECT_EQ(forced.total(), factorial(11));
    EXPECT_TRUE(forced.next().has_value());
}

TEST(Enumerator, WindowsPartitionTheSpace) {
    const auto sig = Signature::from_names(oracle::names(5));
    std::vector<std::uint64_t> ranks;
    for (std::uint64_t first = 0; first < 120; first += 17) {
        FtscEnumerator it(sig, first, first + 17);
        while (auto f = it.next()) ranks.push_back(f->permutation_rank());
    }
    ASSERT_EQ(ranks.size(), 120u);
    for (std::uint64_t k = 0; k < 120; ++k) EXPECT_EQ(ranks[k], k);
}

TEST(Theorems, ConclusionsForMedicalChain) {
    auto f = std::make_shared<const Ftsc>(
        build_ftsc(validate_input({{"Infection"}, {"HighWBC"}, {"Fever"}, {"RequiresAntibiotics"}})));
    const auto ths = derive_theorems(f);
    ASSERT_EQ(ths.size(), 5u);
    EXPECT_EQ(ths[3].conclusion, (std::vector<Literal>{pos(0), pos(1), pos(2), neg(3)}));
    EXPECT_EQ(ths[4].conclusion, (std::vector<Literal>{pos(0), pos(1), pos(2), pos(3)}));
    EXPECT_EQ(ths[0].conclusion, (std::vector<Literal>{neg(0)}));
    for (const auto& th : ths) EXPECT_EQ(th.certified, Certification::Unchecked);
    EXPECT_EQ(ths[3].statement(), "S∖{D4} ⊢ ¬D4");
}

TEST(Theorems, N1) {
    const auto ths = derive_theorems(shared(1));
    ASSERT_EQ(ths.size(), 2u);
    EXPECT_EQ(ths[0].premises().clauses()[0], (Clause{neg(0)}));
    EXPECT_EQ(ths[0].conclusion, (std::vector<Literal>{neg(0)}));
    EXPECT_EQ(ths[1].premises().clauses()[0], (Clause{pos(0)}));
    EXPECT_EQ(ths[1].conclusion, (std::vector<Literal>{pos(0)}));
}

TEST(Theorems, ConclusionIsNegatedRemovedClause) {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& th : derive_theorems(shared(n))) {
            std::vector<Literal> negated;
            for (Literal l : th.removed_clause()) negated.push_back(l.negated());
            std::vector<Literal> got = th.conclusion;
            std::sort(negated.begin(), negated.end());
            std::sort(got.begin(), got.end());
            EXPECT_EQ(got, negated);
        }
    }
}

TEST(Theorems, ConclusionsEntailedPerOracle) {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& th : derive_theorems(shared(n))) {
            std::vector<int> units;
            for (Literal l : th.conclusion) {
                const int v = static_cast<int>(l.symbol().value) + 1;
                units.push_back(l.positive() ? v : -v);
            }
            EXPECT_TRUE(oracle::entails_units(oracle::from_set(th.premises()), units, n));
        }
    }
}

TEST(ProofTrace, ShapeForMedicalI4) {
    const auto f = shared(4);
    const auto trace = build_proof_trace(*f, 4);
    std::vector<StepKind> kinds;
    for (const auto& s : trace.steps) kinds.push_back(s.kind);
    const std::vector<StepKind> expected{StepKind::UnitDerivation, StepKind::UnitDerivation, StepKind::UnitDerivation,
                                         StepKind::Assumption,     StepKind::EmptyClause,    StepKind::Discharge};
    EXPECT_EQ(kinds, expected);
    EXPECT_EQ(trace.steps[3].literal, pos(3));
    EXPECT_EQ(trace.steps[5].literal, neg(3));
    // D5 sits at premise position 3 once D4 is gone.
    EXPECT_EQ(trace.steps[4].clause, 3u);
    EXPECT_EQ(trace.goal, (std::vector<Literal>{pos(0), pos(1), pos(2), neg(3)}));
}

TEST(ProofTrace, ShapeForGlobalClause) {
    const auto f = shared(4);
    const auto trace = build_proof_trace(*f, 5);
    ASSERT_EQ(trace.steps.size(), 4u);
    for (const auto& s : trace.steps) EXPECT_EQ(s.kind, StepKind::UnitDerivation);
    EXPECT_EQ(trace.goal, (std::vector<Literal>{pos(0), pos(1), pos(2), pos(3)}));
}

TEST(ProofTrace, PropagationsWhenRemovingEarly) {
    const auto trace = build_proof_trace(*shared(5), 2);
    std::size_t propagations = 0;
    for (const auto& s : trace.steps) propagations += s.kind == StepKind::Propagation;
    EXPECT_EQ(propagations, 3u);  // x3, x4, x5
    EXPECT_THROW(build_proof_trace(*shared(5), 0), IndexOutOfRange);
    EXPECT_THROW(build_proof_trace(*shared(5), 7), IndexOutOfRange);
}

TEST(ProofTrace, ReplaysForAllPermutationsUpToFive) {
    for (int n = 1; n <= 5; ++n) {
        FtscEnumerator it(Signature::from_names(oracle::names(n)));
        while (auto f = it.next()) {
            for (const auto& th : derive_theorems(std::make_shared<const Ftsc>(std::move(*f)))) {
                const auto r = replay_trace(th.trace, th.premises());
                ASSERT_TRUE(r.ok) << r.reason;
            }
        }
    }
}

TEST(PremisePosition, Inverse) {
    for (std::size_t i = 1; i <= 9; ++i) {
        for (std::size_t t = 1; t <= 9; ++t) {
            if (t == i) continue;
            EXPECT_EQ(clause_index_of_premise(i, premise_position(i, t)), t);
        }
    }
}

TEST(SummarizeTrace, CitesClauseLabels) {
    const auto ths = derive_theorems(shared(2));
    EXPECT_EQ(summarize_trace(ths[1]),
              "1. unit-derivation x1 [D1]; 2. assumption x2; 3. empty-clause ⊥ [D3]; 4. discharge ¬x2");
}
