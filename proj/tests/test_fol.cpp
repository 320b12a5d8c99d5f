#include <gtest/gtest.h>

#include "ftsc/fol.hpp"
#include "ftsc/scenario.hpp"
#include "ftsc/verifier.hpp"
#include "oracle.hpp"

using namespace ftsc;
using namespace ftsc::fol;

namespace {

std::vector<PredicateAtom> atoms_of(std::initializer_list<const char*> texts, std::vector<std::string> vars) {
    std::vector<PredicateAtom> out;
    for (const char* t : texts) out.push_back(parse_atom(t, vars));
    return out;
}

std::vector<std::string> symbols(const std::vector<InputLiteral>& lits) {
    std::vector<std::string> out;
    for (const auto& l : lits) out.push_back(l.symbol);
    return out;
}

Scenario load(const std::string& rel) { return load_scenario_file(std::string(FTSC_SOURCE_DIR) + "/scenarios/" + rel); }

}  // namespace

TEST(ParseAtom, VariablesAreDeclared) {
    const std::vector<std::string> vars{"h", "p"};
    const auto a = parse_atom("HoldsData(h, mercy)", vars);
    EXPECT_EQ(a.predicate(), "HoldsData");
    EXPECT_EQ(a.arity(), 2u);
    EXPECT_TRUE(a.args()[0].is_variable());
    EXPECT_FALSE(a.args()[1].is_variable());
    EXPECT_FALSE(a.is_ground());
    EXPECT_EQ(a.text(), "HoldsData(h,mercy)");
    EXPECT_EQ(a.variables(), std::vector<std::string>{"h"});

    const auto b = parse_atom("~Fever", vars);
    EXPECT_FALSE(b.positive());
    EXPECT_EQ(b.arity(), 0u);
    EXPECT_EQ(b.text(), "Fever");
}

TEST(PredicateAtom, ArityMismatch) {
    EXPECT_THROW(PredicateAtom("P", 2, {Term::constant("a")}), ArityMismatch);
}

TEST(GroundAtoms, SinglePatient) {
    const auto atoms = atoms_of({"Infection(p)", "HighWBC(p)", "Fever(p)", "RequiresAntibiotics(p)"}, {"p"});
    const auto out = ground_atoms(atoms, {{"p", {"alice"}}});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(symbols(out[0]), (std::vector<std::string>{"Infection(alice)", "HighWBC(alice)", "Fever(alice)",
                                                         "RequiresAntibiotics(alice)"}));
    for (const auto& l : out[0]) {
        EXPECT_TRUE(l.ground);
        EXPECT_TRUE(l.positive);
    }
    EXPECT_NO_THROW((void)validate_input(out[0]));
}

TEST(GroundAtoms, TwoPatients) {
    const auto atoms = atoms_of({"Infection(p)", "HighWBC(p)", "Fever(p)", "RequiresAntibiotics(p)"}, {"p"});
    const auto out = ground_atoms(atoms, {{"p", {"alice", "bob"}}});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0][2].symbol, "Fever(alice)");
    EXPECT_EQ(out[1][2].symbol, "Fever(bob)");
}

TEST(GroundAtoms, UniformSubstitutionAcrossAtoms) {
    const auto atoms = atoms_of({"HoldsData(h,p)", "HasConsent(p)"}, {"h", "p"});
    const auto out = ground_atoms(atoms, {{"h", {"mercy"}}, {"p", {"alice"}}});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(symbols(out[0]), (std::vector<std::string>{"HoldsData(mercy,alice)", "HasConsent(alice)"}));

    const auto grid = ground_atoms(atoms, {{"h", {"mercy", "city"}}, {"p", {"alice", "bob", "carol"}}});
    ASSERT_EQ(grid.size(), 6u);
    for (const auto& inst : grid) {
        // p takes the same constant in both atoms
        const auto& held = inst[0].symbol;
        const auto p = held.substr(held.find(',') + 1, held.size() - held.find(',') - 2);
        EXPECT_EQ(inst[1].symbol, "HasConsent(" + p + ")");
    }
    EXPECT_EQ(grid[1][0].symbol, "HoldsData(mercy,bob)");  // last variable fastest
    EXPECT_EQ(grid[3][0].symbol, "HoldsData(city,alice)");
}

TEST(GroundAtoms, NegatedAtomsKeepPolarity) {
    const auto atoms = atoms_of({"P(x)", "~Q(x)"}, {"x"});
    const auto out = ground_atoms(atoms, {{"x", {"c"}}});
    EXPECT_FALSE(out[0][1].positive);
    EXPECT_EQ(out[0][1].symbol, "Q(c)");
}

TEST(GroundAtoms, Errors) {
    const auto atoms = atoms_of({"HoldsData(h,p)", "HasConsent(p)"}, {"h", "p"});
    EXPECT_THROW(ground_atoms(atoms, {{"p", {"alice"}}}), UnboundVariable);
    EXPECT_THROW(ground_atoms(atoms, {{"h", {}}, {"p", {"alice"}}}), EmptyDomain);
}

TEST(GroundAtoms, PropositionalAtomsGiveOneInstance) {
    const auto atoms = atoms_of({"a", "b"}, {});
    const auto out = ground_atoms(atoms, {});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(symbols(out[0]), (std::vector<std::string>{"a", "b"}));
}

TEST(BuildFolFtsc, HealthcareSingleInstance) {
    const auto s = load("healthcare.json");
    ASSERT_EQ(s.n(), 5u);
    EXPECT_EQ(s.atoms.front().atom.predicate(), "HoldsData");
    EXPECT_EQ(s.atoms.back().atom.predicate(), "Retains");
    const auto out = build_fol_ftsc(s.predicate_atoms(), s.grounding);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].clauses().size(), 6u);
    EXPECT_TRUE(check_mus(out[0].clauses()).is_mus);
}

TEST(BuildFolFtsc, TwoPatientDomain) {
    const auto s = load("medical_fol.json");
    const auto out = build_fol_ftsc(s.predicate_atoms(), s.grounding);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_NE(out[0].signature().name(SymbolId{0}), out[1].signature().name(SymbolId{0}));
}

TEST(BuildFolFtsc, FinanceDividendTheorem) {
    const auto s = load("catalog/a07-reserves.json");
    const auto out = build_fol_ftsc(s.predicate_atoms(), s.grounding);
    ASSERT_EQ(out.size(), 1u);
    auto f = std::make_shared<const Ftsc>(out[0]);
    EXPECT_EQ(f->schema_text(5),
              "(PaysDividend(bank,account) ∨ ¬MaintainsReserve(bank,reserve) ∨ ¬IssuesLoan(bank,loan) ∨ "
              "¬ReportsRisk(bank,loan) ∨ ¬DisclosesPublicly(bank,loan))");
    const auto th = check_theorem(derive_theorems(f)[4]);
    EXPECT_EQ(th.certified, Certification::Verified);
    ASSERT_EQ(th.conclusion.size(), 5u);
    EXPECT_FALSE(th.conclusion.back().positive());
    EXPECT_EQ(f->signature().name(th.conclusion.back().symbol()), "PaysDividend(bank,account)");
}

TEST(BuildFolFtsc, GroundPropositionalEquivalence) {
    for (const char* file : {"healthcare.json", "medical_fol.json", "catalog/a01-supply.json",
                             "catalog/a09-export.json"}) {
        const auto s = load(file);
        const auto inst = s.instances();
        const auto fol_ftscs = build_fol_ftsc(s.predicate_atoms(), s.grounding);
        ASSERT_EQ(fol_ftscs.size(), inst.size());
        for (std::size_t k = 0; k < inst.size(); ++k) {
            // Same atoms under neutral names give the same clause structure.
            const auto n = inst[k].size();
            auto plain = std::make_shared<const Signature>(Signature::from_names(oracle::names(n)));
            const Ftsc prop = build_ftsc(plain);
            const auto& a = fol_ftscs[k].clauses();
            const auto& b = prop.clauses();
            ASSERT_EQ(a.size(), b.size());
            for (std::size_t c = 0; c < a.size(); ++c) ASSERT_EQ(a[c], b[c]) << file << " D" << c + 1;
            EXPECT_EQ(fol_ftscs[k], build_ftsc(validate_input(inst[k])));
        }
    }
}

TEST(BuildFolFtsc, InstanceIndependence) {
    const auto atoms = atoms_of({"HoldsData(h,p)", "SharesData(h,r,p)", "HasConsent(p)"}, {"h", "r", "p"});
    const auto all = build_fol_ftsc(atoms, {{"h", {"mercy", "city"}}, {"r", {"lab"}}, {"p", {"alice", "bob"}}});
    ASSERT_EQ(all.size(), 4u);
    for (const auto& f : all) {
        auto shared = std::make_shared<const Ftsc>(f);
        EXPECT_TRUE(check_mus(f.clauses()).is_mus);
        for (const auto& th : derive_theorems(shared)) {
            EXPECT_EQ(check_theorem(th).certified, Certification::Verified);
        }
    }
}

TEST(Scenario, AllFixturesGroundAndCertify) {
    for (const char* file : {"medical.json", "medical_fol.json", "compliance.json", "regulatory.json", "contract.json",
                             "healthcare.json", "catalog/a01-supply.json", "catalog/a02-delivery.json",
                             "catalog/a03-confidentiality.json", "catalog/a04-data-sharing.json",
                             "catalog/a05-publication.json", "catalog/a06-transfer.json",
                             "catalog/a07-reserves.json", "catalog/a08-trading.json", "catalog/a09-export.json",
                             "catalog/a10-cross-border.json"}) {
        const auto s = load(file);
        for (const auto& f : build_fol_ftsc(s.predicate_atoms(), s.grounding)) {
            auto shared = std::make_shared<const Ftsc>(f);
            for (const auto& th : derive_theorems(shared)) {
                ASSERT_EQ(check_theorem(th).certified, Certification::Verified) << file;
            }
        }
    }
}

TEST(Scenario, RejectsUndeclaredGrounding) {
    EXPECT_THROW(load_scenario(R"j({"name":"x","domain":"d","variables":["p"],"atoms":["P(p)","Q(p)"]})j"), Error);
    EXPECT_THROW(load_scenario(R"j({"name":"x","domain":"d","variables":["p"],"atoms":["P(p)"],"grounding":{"p":[]}})j"),
                 EmptyDomain);
    EXPECT_THROW(load_scenario(R"j({"name":"x","domain":"d","atoms":["P","~P"]})j"), ValidationError);
    EXPECT_THROW(load_scenario("{"), ParseError);
}

TEST(Scenario, HealthcareMetadata) {
    const auto s = load("healthcare.json");
    ASSERT_TRUE(s.remediation(5));
    EXPECT_EQ(s.remediation(5)->formal_annotation, "forall h,p,t. SharesData(h,*,p) -> t < 5 years");
    EXPECT_EQ(s.priority(3), Priority::High);
    EXPECT_EQ(s.priority(4), std::nullopt);
    EXPECT_TRUE(s.is_first_order());
    EXPECT_FALSE(load("medical.json").is_first_order());
}
