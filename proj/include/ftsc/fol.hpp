#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ftsc/core.hpp"
#include "ftsc/generator.hpp"

namespace ftsc::fol {

struct Term {
    enum class Kind { Variable, Constant };

    Kind kind = Kind::Constant;
    std::string name;

    static Term variable(std::string name) { return Term{Kind::Variable, std::move(name)}; }
    static Term constant(std::string name) { return Term{Kind::Constant, std::move(name)}; }
    [[nodiscard]] bool is_variable() const { return kind == Kind::Variable; }

    friend bool operator==(const Term&, const Term&) = default;
};

class PredicateAtom {
public:
    // Throws ArityMismatch when args.size() != arity.
    PredicateAtom(std::string predicate, std::size_t arity, std::vector<Term> args = {}, bool positive = true);

    [[nodiscard]] const std::string& predicate() const { return predicate_; }
    [[nodiscard]] std::size_t arity() const { return arity_; }
    [[nodiscard]] std::span<const Term> args() const { return args_; }
    [[nodiscard]] bool positive() const { return positive_; }
    [[nodiscard]] bool is_ground() const;
    [[nodiscard]] std::vector<std::string> variables() const;

    // "Pred(a,b)" for arity > 0, "Pred" otherwise; no polarity marker.
    [[nodiscard]] std::string text() const;

    friend bool operator==(const PredicateAtom&, const PredicateAtom&) = default;

private:
    std::string predicate_;
    std::size_t arity_ = 0;
    std::vector<Term> args_;
    bool positive_ = true;
};

// Parses "Pred(a, b)" or "~Pred". An argument is a variable iff its name is in
// `variables`; every other argument is a constant.
PredicateAtom parse_atom(std::string_view text, std::span<const std::string> variables);

// Each variable maps to a finite, nonempty list of constants.
using GroundingDomain = std::map<std::string, std::vector<std::string>>;

// The atom as an opaque propositional symbol; `ground` is false while it has variables.
InputLiteral to_input_literal(const PredicateAtom& atom);

// Variables in order of first occurrence across the atom list.
std::vector<std::string> variables_of(std::span<const PredicateAtom> atoms);

// One literal list per uniform substitution, in odometer order over
// variables_of(atoms) (the last variable varies fastest).
std::vector<std::vector<InputLiteral>> ground_atoms(std::span<const PredicateAtom> atoms,
                                                    const GroundingDomain& domain);

std::vector<Ftsc> build_fol_ftsc(std::span<const PredicateAtom> atoms, const GroundingDomain& domain);

}  // namespace ftsc::fol
