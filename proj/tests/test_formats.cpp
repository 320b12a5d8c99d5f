#include <gtest/gtest.h>

#include <random>

#include "ftsc/formats.hpp"
#include "ftsc/scenario.hpp"
#include "ftsc/verifier.hpp"
#include "oracle.hpp"
#include "tptp_grammar.hpp"

using namespace ftsc;

namespace {

std::shared_ptr<const Ftsc> ftsc_of(int n) {
    auto sig = std::make_shared<const Signature>(Signature::from_names(oracle::names(n)));
    return std::make_shared<const Ftsc>(build_ftsc(sig));
}

Scenario load(const std::string& rel) { return load_scenario_file(std::string(FTSC_SOURCE_DIR) + "/scenarios/" + rel); }

std::vector<std::string> body_lines(const std::string& dimacs) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < dimacs.size()) {
        auto end = dimacs.find('\n', start);
        if (end == std::string::npos) end = dimacs.size();
        const auto line = dimacs.substr(start, end - start);
        if (!line.empty() && line[0] != 'c') out.push_back(line);
        start = end + 1;
    }
    return out;
}

template <class E>
void expect_throw_on(const std::string& text) {
    EXPECT_THROW((void)parse_dimacs(text), E) << text;
}

}  // namespace

TEST(Dimacs, SingleAtom) {
    EXPECT_EQ(body_lines(emit_dimacs(ftsc_of(1)->clauses())), (std::vector<std::string>{"p cnf 1 2", "1 0", "-1 0"}));
}

TEST(Dimacs, TwoAtoms) {
    const auto lines = body_lines(emit_dimacs(ftsc_of(2)->clauses()));
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "p cnf 2 3");
    EXPECT_EQ(lines[3], "-1 -2 0");
}

TEST(Dimacs, RoundTripFtsc) {
    for (int n = 1; n <= 8; ++n) {
        const auto f = ftsc_of(n);
        const auto& set = f->clauses();
        const auto back = parse_dimacs(emit_dimacs(set));
        for (std::uint32_t k = 0; k < static_cast<std::uint32_t>(n); ++k) {
            EXPECT_EQ(back.signature().name(SymbolId{k}), set.signature().name(SymbolId{k}));
        }
        EXPECT_EQ(back, set) << "n=" << n;
    }
    const auto medical = load("medical.json");
    const auto set = build_ftsc(medical.signature()).clauses();
    const auto text = emit_dimacs(set);
    EXPECT_NE(text.find("p cnf 4 5"), std::string::npos);
    EXPECT_EQ(parse_dimacs(text), set);
}

TEST(Dimacs, RoundTripRandom) {
    std::mt19937 rng(99);
    for (int k = 0; k < 200; ++k) {
        const int vars = 1 + k % 9;
        const auto set = oracle::to_set(oracle::random_cnf(rng, vars, 1 + k % 11, 4), vars);
        const auto back = parse_dimacs(emit_dimacs(set));
        ASSERT_TRUE(set_equal(back, set));
        ASSERT_EQ(solve_dpll(back).satisfiable(), solve_dpll(set).satisfiable());
    }
}

TEST(Dimacs, EmitIsDeterministic) {
    const auto f = ftsc_of(6);
    const auto& set = f->clauses();
    EXPECT_EQ(emit_dimacs(set), emit_dimacs(set));
}

TEST(Dimacs, Tolerant) {
    const auto set = parse_dimacs("c hello\n\np cnf 3 2\n1 -2\n 0 3\n0\nc trailing\n");
    ASSERT_EQ(set.size(), 2u);
    EXPECT_EQ(set[0].size(), 2u);
    EXPECT_EQ(set.signature().name(SymbolId{2}), "x3");
}

TEST(Dimacs, Errors) {
    expect_throw_on<HeaderMismatch>("p cnf four 1\n1 0\n");
    expect_throw_on<HeaderMismatch>("p dnf 1 1\n1 0\n");
    expect_throw_on<HeaderMismatch>("p cnf 2 3\n1 0\n2 0\n");
    expect_throw_on<HeaderMismatch>("1 0\n");
    expect_throw_on<HeaderMismatch>("");
    expect_throw_on<ParseError>("p cnf 2 1\n1 x 0\n");
    expect_throw_on<ParseError>("p cnf 2 1\n1 2\n");
    try {
        (void)parse_dimacs("c comment\np cnf 4 2\n1 -2 0\n5 0\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(Dimacs, NonGroundRejected) {
    const auto s = load("healthcare.json");
    std::vector<InputLiteral> lits;
    for (const auto& a : s.predicate_atoms()) lits.push_back(fol::to_input_literal(a));
    const auto f = build_ftsc(validate_input(lits));
    EXPECT_THROW(emit_dimacs(f.clauses()), NonGroundClause);
}

TEST(Tptp, MedicalCnf) {
    const auto s = load("medical.json");
    auto f = std::make_shared<const Ftsc>(build_ftsc(s.signature()));
    const auto ths = derive_theorems(f);
    const auto text = emit_tptp(*f, ths, TptpMode::Cnf);
    const auto r = tptp::check(text);
    ASSERT_TRUE(r.ok) << r.error << "\n" << text;
    EXPECT_EQ(r.count("axiom"), 5u);
    EXPECT_EQ(r.count("conjecture"), 5u);
    for (const auto& fm : r.formulas) {
        if (fm.role == "axiom") EXPECT_EQ(fm.language, "cnf");
    }
    EXPECT_NE(text.find("cnf(d4, axiom, ( 'RequiresAntibiotics' | ~ 'Infection' | ~ 'HighWBC' | ~ 'Fever' ))."),
              std::string::npos);
}

TEST(Tptp, SingleAtom) {
    auto f = ftsc_of(1);
    const auto text = emit_tptp(*f, {}, TptpMode::Cnf);
    const auto r = tptp::check(text);
    ASSERT_TRUE(r.ok) << r.error;
    EXPECT_EQ(r.count("axiom"), 2u);
    EXPECT_EQ(r.count("conjecture"), 0u);
}

TEST(Tptp, HealthcareFof) {
    const auto s = load("healthcare.json");
    auto f = std::make_shared<const Ftsc>(build_ftsc(s.signature()));
    const FolMetadata meta{s.predicate_atoms()};
    const auto text = emit_tptp(*f, derive_theorems(f), TptpMode::Fof, &meta);
    const auto r = tptp::check(text);
    ASSERT_TRUE(r.ok) << r.error << "\n" << text;
    EXPECT_EQ(r.count("axiom"), 6u);
    EXPECT_EQ(r.count("conjecture"), 6u);
    for (const auto& fm : r.formulas) EXPECT_TRUE(fm.quantified) << fm.name;
    for (const char* v : {"H", "R", "P", "T"}) EXPECT_NE(text.find(v), std::string::npos);
    EXPECT_NE(text.find("'Retains'(H,P,T)"), std::string::npos);
}

TEST(Tptp, FofWithoutMetadata) {
    auto f = ftsc_of(3);
    EXPECT_THROW(emit_tptp(*f, {}, TptpMode::Fof), MissingScenarioMetadata);
    EXPECT_THROW(emit_tptp_problem(derive_theorems(f)[0], TptpMode::Fof), MissingScenarioMetadata);
}

TEST(Tptp, ProblemOmitsRemovedAxiom) {
    auto f = ftsc_of(4);
    const auto th = derive_theorems(f)[2];
    const auto text = emit_tptp_problem(th, TptpMode::Cnf);
    const auto r = tptp::check(text);
    ASSERT_TRUE(r.ok) << r.error;
    EXPECT_EQ(r.count("axiom"), 4u);
    EXPECT_EQ(r.count("conjecture"), 1u);
    for (const auto& fm : r.formulas) EXPECT_NE(fm.name, "d3");
}

TEST(Tptp, AllScenariosParse) {
    for (const char* file : {"medical.json", "contract.json", "healthcare.json", "catalog/a01-supply.json",
                             "catalog/a09-export.json", "catalog/a10-cross-border.json"}) {
        const auto s = load(file);
        auto f = std::make_shared<const Ftsc>(build_ftsc(s.signature()));
        const FolMetadata meta{s.predicate_atoms()};
        for (auto mode : {TptpMode::Cnf, TptpMode::Fof}) {
            const auto r = tptp::check(emit_tptp(*f, derive_theorems(f), mode, &meta));
            EXPECT_TRUE(r.ok) << file << ": " << r.error;
        }
    }
}

TEST(Tptp, AtomicWords) {
    EXPECT_EQ(tptp_atomic_word("fever"), "fever");
    EXPECT_EQ(tptp_atomic_word("Fever"), "'Fever'");
    EXPECT_EQ(tptp_atomic_word("it's"), "'it\\'s'");
}

TEST(Tptp, CheckerRejectsBrokenText) {
    EXPECT_FALSE(tptp::check("cnf(d1, axiom, a | ).").ok);
    EXPECT_FALSE(tptp::check("fof(t, conjecture, a & b | c).").ok);
    EXPECT_FALSE(tptp::check("cnf(d1, axiom, a)").ok);
    EXPECT_TRUE(tptp::check("% c\nfof(t, conjecture, ! [X] : ( p(X) & ~ 'Q'(X) )).").ok);
}
