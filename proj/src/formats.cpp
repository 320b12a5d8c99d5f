#include "ftsc/formats.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ftsc {

namespace {

void require_ground(const Signature& sig) {
    for (const auto& s : sig.symbols()) {
        if (!s.ground) throw NonGroundClause("symbol '" + s.name + "' is not ground");
    }
}

}  // namespace

// --- DIMACS -------------------------------------------------------------------------

std::string emit_dimacs(const ClauseSet& set) {
    const Signature& sig = set.signature();
    require_ground(sig);
    std::ostringstream out;
    for (std::size_t k = 0; k < sig.size(); ++k) {
        out << "c varname " << (k + 1) << ' ' << sig.name(SymbolId{static_cast<std::uint32_t>(k)}) << '\n';
    }
    out << "p cnf " << sig.size() << ' ' << set.size() << '\n';
    for (const auto& clause : set.clauses()) {
        for (Literal l : clause) {
            const long var = static_cast<long>(l.symbol().value) + 1;
            out << (l.positive() ? var : -var) << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

ClauseSet parse_dimacs(std::string_view text) {
    std::map<long, std::string> names;
    std::optional<long> vars;
    long declared_clauses = 0;
    std::vector<Clause> clauses;
    std::vector<Literal> pending;
    std::size_t line_no = 0;

    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const char lead = line[first];
        if (lead == 'c') {
            std::istringstream ss(line.substr(first));
            std::string c, label, name;
            long index = 0;
            if (ss >> c >> label && c == "c" && label == "varname" && ss >> index >> name) {
                if (names.contains(index)) throw ParseError(line_no, "duplicate varname for " + std::to_string(index));
                names[index] = name;
            }
            continue;
        }
        if (lead == '%') break;  // SATLIB trailer
        if (lead == 'p') {
            if (vars) throw HeaderMismatch("second problem line at line " + std::to_string(line_no));
            std::istringstream ss(line.substr(first));
            std::string p, fmt, extra;
            long v = -1, c = -1;
            if (!(ss >> p >> fmt >> v >> c) || p != "p" || fmt != "cnf" || v < 0 || c < 0 || (ss >> extra)) {
                throw HeaderMismatch("malformed problem line at line " + std::to_string(line_no) + ": '" + line + "'");
            }
            vars = v;
            declared_clauses = c;
            continue;
        }
        if (!vars) throw HeaderMismatch("clause data before the problem line at line " + std::to_string(line_no));

        std::istringstream ss(line);
        std::string token;
        while (ss >> token) {
            long value = 0;
            try {
                std::size_t used = 0;
                value = std::stol(token, &used);
                if (used != token.size()) throw std::invalid_argument(token);
            } catch (const std::exception&) {
                throw ParseError(line_no, "expected an integer literal, got '" + token + "'");
            }
            if (value == 0) {
                clauses.emplace_back(std::move(pending));
                pending.clear();
                continue;
            }
            const long var = value < 0 ? -value : value;
            if (var > *vars) {
                throw ParseError(line_no, "variable " + std::to_string(var) + " exceeds declared " + std::to_string(*vars));
            }
            pending.emplace_back(SymbolId{static_cast<std::uint32_t>(var - 1)}, value > 0);
        }
    }

    if (!vars) throw HeaderMismatch("missing problem line");
    if (!pending.empty()) throw ParseError(line_no, "last clause is not terminated by 0");
    if (static_cast<long>(clauses.size()) != declared_clauses) {
        throw HeaderMismatch("header declares " + std::to_string(declared_clauses) + " clauses, body has " +
                             std::to_string(clauses.size()));
    }
    for (const auto& [index, _] : names) {
        if (index < 1 || index > *vars) throw HeaderMismatch("varname for undeclared variable " + std::to_string(index));
    }

    std::vector<std::string> symbol_names;
    for (long k = 1; k <= *vars; ++k) {
        auto it = names.find(k);
        symbol_names.push_back(it != names.end() ? it->second : "x" + std::to_string(k));
    }
    Signature sig;
    try {
        sig = Signature::from_names(std::move(symbol_names));
    } catch (const ValidationError& e) {
        throw ParseError(0, std::string("duplicate variable name ") + e.symbol());
    }
    return ClauseSet(std::make_shared<const Signature>(std::move(sig)), std::move(clauses));
}

// --- TPTP ----------------------------------------------------------------------------

std::string tptp_atomic_word(std::string_view name) {
    const bool lower_word =
        !name.empty() && std::islower(static_cast<unsigned char>(name.front())) &&
        std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
    if (lower_word) return std::string(name);
    std::string out = "'";
    for (char c : name) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    return out + "'";
}

namespace {

std::string tptp_variable(std::string_view name, std::map<std::string, std::string>& taken) {
    if (auto it = taken.find(std::string(name)); it != taken.end()) return it->second;
    std::string base;
    for (char c : name) base += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (base.empty() || !std::isalpha(static_cast<unsigned char>(base.front()))) base = "V" + base;
    base.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(base.front())));
    std::string candidate = base;
    for (int k = 1; std::any_of(taken.begin(), taken.end(), [&](const auto& kv) { return kv.second == candidate; }); ++k) {
        candidate = base + "_" + std::to_string(k);
    }
    taken.emplace(std::string(name), candidate);
    return candidate;
}

class TptpWriter {
public:
    TptpWriter(const Ftsc& ftsc, TptpMode mode, const FolMetadata* metadata) : ftsc_(ftsc), mode_(mode), meta_(metadata) {
        const Signature& sig = ftsc.signature();
        if (mode == TptpMode::Fof) {
            if (!meta_) throw MissingScenarioMetadata("fof mode needs the scenario's predicate atoms");
            if (meta_->atoms.size() != sig.size()) {
                throw MissingScenarioMetadata("scenario metadata has " + std::to_string(meta_->atoms.size()) +
                                              " atoms, signature has " + std::to_string(sig.size()));
            }
        } else {
            require_ground(sig);
        }
    }

    // Formula text for a list of literals joined by `op`, plus its free variables.
    std::string formula(std::span<const Literal> lits, const char* op, std::vector<std::string>& vars) {
        std::string body;
        for (std::size_t k = 0; k < lits.size(); ++k) {
            if (k) body += std::string(" ") + op + " ";
            if (!lits[k].positive()) body += "~ ";
            body += atom(lits[k].symbol(), vars);
        }
        return lits.size() > 1 ? "( " + body + " )" : body;
    }

    std::string closed(std::span<const Literal> lits, const char* op) {
        std::vector<std::string> vars;
        std::string f = formula(lits, op, vars);
        if (vars.empty()) return f;
        std::string prefix = "! [";
        for (std::size_t k = 0; k < vars.size(); ++k) prefix += (k ? "," : "") + vars[k];
        return prefix + "] : " + f;
    }

    std::string axiom(std::size_t t) {
        const auto lits = ftsc_.schema_literals(t);
        const std::string name = "d" + std::to_string(t);
        if (mode_ == TptpMode::Cnf) {
            std::vector<std::string> unused;
            return "cnf(" + name + ", axiom, " + formula(lits, "|", unused) + ").\n";
        }
        return "fof(" + name + ", axiom, " + closed(lits, "|") + ").\n";
    }

    std::string conjecture(const Theorem& th) {
        return "fof(theorem_" + std::to_string(th.removed_index) + ", conjecture, " + closed(th.conclusion, "&") + ").\n";
    }

private:
    const Ftsc& ftsc_;
    TptpMode mode_;
    const FolMetadata* meta_;
    std::map<std::string, std::string> var_names_;

    std::string atom(SymbolId id, std::vector<std::string>& vars) {
        const Signature& sig = ftsc_.signature();
        if (mode_ == TptpMode::Fof) {
            const auto& a = meta_->atoms[id.value];
            if (a.arity() == 0) return tptp_atomic_word(a.predicate());
            std::string out = tptp_atomic_word(a.predicate()) + "(";
            for (std::size_t k = 0; k < a.arity(); ++k) {
                const auto& term = a.args()[k];
                if (k) out += ",";
                if (term.is_variable()) {
                    const auto v = tptp_variable(term.name, var_names_);
                    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
                    out += v;
                } else {
                    out += tptp_atomic_word(term.name);
                }
            }
            return out + ")";
        }
        const auto& info = sig.info(id);
        if (info.arity == 0) return tptp_atomic_word(info.name);
        const auto ground = fol::parse_atom(info.name, {});
        std::string out = tptp_atomic_word(ground.predicate()) + "(";
        for (std::size_t k = 0; k < ground.arity(); ++k) out += (k ? "," : "") + tptp_atomic_word(ground.args()[k].name);
        return out + ")";
    }
};

// TPTP comment lines are restricted to printable ASCII.
std::string ascii_clause(const Ftsc& ftsc, std::size_t t) {
    std::string out;
    for (Literal l : ftsc.schema_literals(t)) {
        if (!out.empty()) out += " | ";
        out += (l.positive() ? "" : "~") + ftsc.signature().name(l.symbol());
    }
    return "(" + out + ")";
}

std::string ascii_statement(const Theorem& th) {
    const std::string d = "D" + std::to_string(th.removed_index);
    return "S\\{" + d + "} |- ~" + d;
}

std::string header(const Ftsc& ftsc, TptpMode mode) {
    std::string out = "% FTSC clause set, n = " + std::to_string(ftsc.n()) + ", permutation rank " +
                      std::to_string(ftsc.permutation_rank()) + ", mode " + (mode == TptpMode::Cnf ? "cnf" : "fof") + "\n";
    for (std::size_t t = 1; t <= ftsc.n() + 1; ++t) {
        out += "% D" + std::to_string(t) + " = " + ascii_clause(ftsc, t) + "\n";
    }
    return out;
}

}  // namespace

std::string emit_tptp(const Ftsc& ftsc, std::span<const Theorem> theorems, TptpMode mode, const FolMetadata* metadata) {
    TptpWriter writer(ftsc, mode, metadata);
    std::string out = header(ftsc, mode);
    for (std::size_t t = 1; t <= ftsc.n() + 1; ++t) out += writer.axiom(t);
    for (const auto& th : theorems) {
        out += "% theorem_" + std::to_string(th.removed_index) + ": " + ascii_statement(th) + ", excludes axiom d" +
               std::to_string(th.removed_index) + "\n";
        out += writer.conjecture(th);
    }
    return out;
}

std::string emit_tptp_problem(const Theorem& theorem, TptpMode mode, const FolMetadata* metadata) {
    const Ftsc& ftsc = *theorem.source;
    TptpWriter writer(ftsc, mode, metadata);
    std::string out = header(ftsc, mode);
    out += "% problem: " + ascii_statement(theorem) + "\n";
    for (std::size_t t = 1; t <= ftsc.n() + 1; ++t) {
        if (t != theorem.removed_index) out += writer.axiom(t);
    }
    return out + writer.conjecture(theorem);
}

}  // namespace ftsc
