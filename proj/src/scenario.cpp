#include "ftsc/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace ftsc {

using nlohmann::json;

const char* to_string(Priority p) {
    switch (p) {
        case Priority::High: return "High";
        case Priority::Medium: return "Medium";
        case Priority::Low: return "Low";
    }
    return "?";
}

std::optional<Priority> priority_from_string(std::string_view text) {
    for (auto p : {Priority::High, Priority::Medium, Priority::Low}) {
        if (text == to_string(p)) return p;
    }
    return std::nullopt;
}

std::vector<fol::PredicateAtom> Scenario::predicate_atoms() const {
    std::vector<fol::PredicateAtom> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(a.atom);
    return out;
}

bool Scenario::is_first_order() const {
    return std::any_of(atoms.begin(), atoms.end(), [](const ScenarioAtom& a) { return a.atom.arity() > 0; });
}

std::vector<std::vector<InputLiteral>> Scenario::instances() const {
    const auto preds = predicate_atoms();
    return fol::ground_atoms(preds, grounding);
}

Signature Scenario::signature(std::size_t instance) const {
    const auto all = instances();
    if (instance >= all.size()) throw IndexOutOfRange(instance, 0, all.size() - 1);
    return validate_input(all[instance]);
}

const RemediationRule* Scenario::remediation(std::size_t clause_index) const {
    auto it = std::find_if(remediations.begin(), remediations.end(),
                           [&](const RemediationRule& r) { return r.clause_index == clause_index; });
    return it == remediations.end() ? nullptr : &*it;
}

std::optional<Priority> Scenario::priority(std::size_t clause_index) const {
    auto it = priorities.find(clause_index);
    if (it == priorities.end()) return std::nullopt;
    return it->second;
}

const std::string* Scenario::rule_text(std::size_t clause_index) const {
    auto it = rule_texts.find(clause_index);
    return it == rule_texts.end() ? nullptr : &it->second;
}

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

const json& require(const json& obj, const char* field, json::value_t type) {
    if (!obj.contains(field)) throw SchemaViolation(field, "required field missing");
    const json& v = obj.at(field);
    if (v.type() != type) throw SchemaViolation(field, std::string("expected ") + json(type).type_name());
    return v;
}

std::string require_string(const json& obj, const char* field) {
    const auto& v = require(obj, field, json::value_t::string).get_ref<const std::string&>();
    if (v.empty()) throw SchemaViolation(field, "must be nonempty");
    return v;
}

std::size_t clause_key(const std::string& field, const std::string& key, std::size_t n) {
    std::size_t index = 0;
    try {
        std::size_t used = 0;
        index = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
        throw SchemaViolation(field, "key '" + key + "' is not a clause index");
    }
    if (index < 1 || index > n + 1) {
        throw SchemaViolation(field, "clause index " + key + " outside 1.." + std::to_string(n + 1));
    }
    return index;
}

std::size_t clause_index(const std::string& field, const json& v, std::size_t n) {
    if (!v.is_number_unsigned()) throw SchemaViolation(field, "clause index must be a positive integer");
    return clause_key(field, std::to_string(v.get<std::size_t>()), n);
}

fol::PredicateAtom parse_scenario_atom(const json& entry, const std::vector<std::string>& variables) {
    if (entry.contains("atom")) {
        const auto& text = require(entry, "atom", json::value_t::string).get_ref<const std::string&>();
        return fol::parse_atom(text, variables);
    }
    const std::string symbol = require_string(entry, "symbol");
    std::vector<fol::Term> args;
    if (entry.contains("args")) {
        for (const auto& a : require(entry, "args", json::value_t::array)) {
            if (!a.is_string() || a.get_ref<const std::string&>().empty()) {
                throw SchemaViolation("args", "arguments must be nonempty strings");
            }
            const auto& name = a.get_ref<const std::string&>();
            const bool is_var = std::find(variables.begin(), variables.end(), name) != variables.end();
            args.push_back(is_var ? fol::Term::variable(name) : fol::Term::constant(name));
        }
    }
    std::size_t arity = args.size();
    if (entry.contains("arity")) {
        if (!entry.at("arity").is_number_unsigned()) throw SchemaViolation("arity", "must be a nonnegative integer");
        arity = entry.at("arity").get<std::size_t>();
    }
    bool positive = true;
    if (entry.contains("negated")) positive = !require(entry, "negated", json::value_t::boolean).get<bool>();
    try {
        return fol::PredicateAtom(symbol, arity, std::move(args), positive);
    } catch (const ArityMismatch& e) {
        throw SchemaViolation("arity", e.what());
    }
}

}  // namespace

Scenario load_scenario(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw ParseError(line_of_offset(document, e.byte), e.what());
    }
    if (!doc.is_object()) throw SchemaViolation("document", "top level must be an object");

    Scenario s;
    s.name = require_string(doc, "name");
    s.domain_label = doc.contains("domain") ? require_string(doc, "domain") : std::string();

    if (doc.contains("variables")) {
        for (const auto& v : require(doc, "variables", json::value_t::array)) {
            if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
                throw SchemaViolation("variables", "entries must be nonempty strings");
            }
            s.variables.push_back(v.get<std::string>());
        }
    }

    const auto& atoms = require(doc, "atoms", json::value_t::array);
    if (atoms.empty()) throw SchemaViolation("atoms", "at least one atom is required");
    for (const auto& entry : atoms) {
        if (entry.is_string()) {
            s.atoms.push_back(ScenarioAtom{fol::parse_atom(entry.get<std::string>(), s.variables), {}});
            continue;
        }
        if (!entry.is_object()) throw SchemaViolation("atoms", "entries must be objects or strings");
        auto atom = parse_scenario_atom(entry, s.variables);
        std::string gloss = entry.contains("gloss") ? require_string(entry, "gloss") : std::string();
        s.atoms.push_back(ScenarioAtom{std::move(atom), std::move(gloss)});
    }
    const std::size_t n = s.atoms.size();

    if (doc.contains("grounding")) {
        for (const auto& [var, constants] : require(doc, "grounding", json::value_t::object).items()) {
            if (!constants.is_array()) throw SchemaViolation("grounding", "'" + var + "' must map to a list");
            auto& list = s.grounding[var];
            for (const auto& c : constants) {
                if (!c.is_string()) throw SchemaViolation("grounding", "constants must be strings");
                list.push_back(c.get<std::string>());
            }
        }
    }

    if (doc.contains("rule_texts")) {
        for (const auto& [key, text] : require(doc, "rule_texts", json::value_t::object).items()) {
            if (!text.is_string()) throw SchemaViolation("rule_texts", "values must be strings");
            s.rule_texts[clause_key("rule_texts", key, n)] = text.get<std::string>();
        }
    }

    if (doc.contains("remediations")) {
        for (const auto& r : require(doc, "remediations", json::value_t::array)) {
            if (!r.is_object()) throw SchemaViolation("remediations", "entries must be objects");
            RemediationRule rule;
            rule.clause_index = clause_index("remediations.index", r.value("index", json()), n);
            rule.suggestion = require_string(r, "text");
            if (r.contains("formal")) rule.formal_annotation = require_string(r, "formal");
            if (s.remediation(rule.clause_index)) {
                throw SchemaViolation("remediations", "duplicate rule for D" + std::to_string(rule.clause_index));
            }
            s.remediations.push_back(std::move(rule));
        }
    }

    if (doc.contains("priorities")) {
        for (const auto& [key, value] : require(doc, "priorities", json::value_t::object).items()) {
            auto p = value.is_string() ? priority_from_string(value.get<std::string>()) : std::nullopt;
            if (!p) throw SchemaViolation("priorities", "priority must be High, Medium or Low");
            s.priorities[clause_key("priorities", key, n)] = *p;
        }
    }

    if (doc.contains("flagged")) {
        for (const auto& f : require(doc, "flagged", json::value_t::array)) {
            s.flagged.push_back(clause_index("flagged", f, n));
        }
    }

    // Every grounding instance must satisfy the input constraints.
    for (const auto& instance : s.instances()) (void)validate_input(instance);
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

}  // namespace ftsc
