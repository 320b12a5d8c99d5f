#include "ftsc/fol.hpp"

#include <algorithm>
#include <cctype>

namespace ftsc::fol {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '\'' || c == '-' || c == '.' || c >= 0x80;
    });
}

}  // namespace

PredicateAtom::PredicateAtom(std::string predicate, std::size_t arity, std::vector<Term> args, bool positive)
    : predicate_(std::move(predicate)), arity_(arity), args_(std::move(args)), positive_(positive) {
    if (args_.size() != arity_) {
        throw ArityMismatch(predicate_ + " declared with arity " + std::to_string(arity_) + " but given " +
                            std::to_string(args_.size()) + " arguments");
    }
}

bool PredicateAtom::is_ground() const {
    return std::none_of(args_.begin(), args_.end(), [](const Term& t) { return t.is_variable(); });
}

std::vector<std::string> PredicateAtom::variables() const {
    std::vector<std::string> out;
    for (const auto& t : args_) {
        if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    }
    return out;
}

std::string PredicateAtom::text() const {
    if (arity_ == 0) return predicate_;
    std::string out = predicate_ + "(";
    for (std::size_t k = 0; k < args_.size(); ++k) {
        if (k) out += ",";
        out += args_[k].name;
    }
    return out + ")";
}

PredicateAtom parse_atom(std::string_view text, std::span<const std::string> variables) {
    const std::string original(text);
    text = trim(text);
    const InputLiteral head = parse_input_literal(text);
    std::string_view body = head.symbol;

    std::string name;
    std::vector<Term> args;
    const auto open = body.find('(');
    if (open == std::string_view::npos) {
        name = std::string(trim(body));
    } else {
        if (body.back() != ')') throw SchemaViolation("atom", "unbalanced parentheses in '" + original + "'");
        name = std::string(trim(body.substr(0, open)));
        std::string_view inner = body.substr(open + 1, body.size() - open - 2);
        while (true) {
            const auto comma = inner.find(',');
            std::string_view piece = trim(inner.substr(0, comma));
            if (!identifier(piece)) throw SchemaViolation("atom", "bad argument in '" + original + "'");
            const std::string arg(piece);
            const bool is_var = std::find(variables.begin(), variables.end(), arg) != variables.end();
            args.push_back(is_var ? Term::variable(arg) : Term::constant(arg));
            if (comma == std::string_view::npos) break;
            inner.remove_prefix(comma + 1);
        }
    }
    if (!identifier(name) || name.find('(') != std::string::npos) {
        throw SchemaViolation("atom", "bad predicate name in '" + original + "'");
    }
    const std::size_t arity = args.size();
    return PredicateAtom(std::move(name), arity, std::move(args), head.positive);
}

InputLiteral to_input_literal(const PredicateAtom& atom) {
    return InputLiteral{atom.text(), atom.positive(), atom.arity(), atom.is_ground()};
}

std::vector<std::string> variables_of(std::span<const PredicateAtom> atoms) {
    std::vector<std::string> out;
    for (const auto& atom : atoms) {
        for (auto& v : atom.variables()) {
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
        }
    }
    return out;
}

std::vector<std::vector<InputLiteral>> ground_atoms(std::span<const PredicateAtom> atoms,
                                                    const GroundingDomain& domain) {
    const auto vars = variables_of(atoms);
    std::vector<const std::vector<std::string>*> ranges;
    for (const auto& v : vars) {
        auto it = domain.find(v);
        if (it == domain.end()) throw UnboundVariable(v);
        if (it->second.empty()) throw EmptyDomain(v);
        for (const auto& c : it->second) {
            if (std::find(vars.begin(), vars.end(), c) != vars.end()) {
                throw SchemaViolation("domain", "constant '" + c + "' collides with a variable name");
            }
        }
        ranges.push_back(&it->second);
    }

    std::vector<std::vector<InputLiteral>> instances;
    std::vector<std::size_t> odometer(vars.size(), 0);
    for (;;) {
        std::vector<InputLiteral> instance;
        instance.reserve(atoms.size());
        for (const auto& atom : atoms) {
            std::vector<Term> args;
            for (const auto& t : atom.args()) {
                if (!t.is_variable()) {
                    args.push_back(t);
                    continue;
                }
                const auto slot = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), t.name) - vars.begin());
                args.push_back(Term::constant((*ranges[slot])[odometer[slot]]));
            }
            PredicateAtom ground(atom.predicate(), atom.arity(), std::move(args), atom.positive());
            instance.push_back(to_input_literal(ground));
        }
        instances.push_back(std::move(instance));

        std::size_t k = vars.size();
        while (k > 0) {
            --k;
            if (++odometer[k] < ranges[k]->size()) break;
            odometer[k] = 0;
            if (k == 0) return instances;
        }
        if (vars.empty()) return instances;
    }
}

std::vector<Ftsc> build_fol_ftsc(std::span<const PredicateAtom> atoms, const GroundingDomain& domain) {
    std::vector<Ftsc> out;
    for (const auto& instance : ground_atoms(atoms, domain)) out.push_back(build_ftsc(validate_input(instance)));
    return out;
}

}  // namespace ftsc::fol
