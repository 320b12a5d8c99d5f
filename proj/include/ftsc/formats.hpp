#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ftsc/core.hpp"
#include "ftsc/fol.hpp"
#include "ftsc/generator.hpp"

namespace ftsc {

// --- DIMACS CNF -----------------------------------------------------------------------
//
//   c varname 1 Infection
//   p cnf <vars> <clauses>
//   1 0
//   -1 2 0
//
// Symbol k is variable k+1. Throws NonGroundClause for symbols that still
// carry variables.
std::string emit_dimacs(const ClauseSet& set);

// Tolerates comments and blank lines; clauses may span lines. Variables
// without a varname comment are named x<k>. Throws ParseError(line) and
// HeaderMismatch.
ClauseSet parse_dimacs(std::string_view text);

// --- TPTP -----------------------------------------------------------------------------

enum class TptpMode { Cnf, Fof };

// Predicate atoms (with variables) aligned with the signature, symbol k to atom k.
struct FolMetadata {
    std::vector<fol::PredicateAtom> atoms;
};

// cnf: each D_t as `cnf(d<t>, axiom, ...)` and each theorem as a fof
// conjecture over its unit conjuncts. fof: the same, universally closed over
// the scenario variables. Throws MissingScenarioMetadata in fof mode without
// metadata, NonGroundClause in cnf mode on non-ground symbols.
std::string emit_tptp(const Ftsc& ftsc, std::span<const Theorem> theorems, TptpMode mode,
                      const FolMetadata* metadata = nullptr);

// A single prover-ready problem: every axiom except D_i plus one conjecture.
std::string emit_tptp_problem(const Theorem& theorem, TptpMode mode, const FolMetadata* metadata = nullptr);

// TPTP lower_word or a single-quoted atomic word.
std::string tptp_atomic_word(std::string_view name);

}  // namespace ftsc
