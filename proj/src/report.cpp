#include "ftsc/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace ftsc {

const char* const kToolVersion = "0.3.0";

using json = nlohmann::ordered_json;

std::string report_timestamp() {
    std::time_t now = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
        char* end = nullptr;
        const long long value = std::strtoll(epoch, &end, 10);
        if (end && *end == '\0') now = static_cast<std::time_t>(value);
    }
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

ReportMetadata make_metadata(std::string command) {
    return ReportMetadata{kReportSchemaVersion, kToolVersion, report_timestamp(), std::move(command)};
}

namespace {

ReportLiteral report_literal(Literal l, const Signature& sig) { return {sig.name(l.symbol()), l.positive()}; }

std::string input_text(Literal l, const Signature& sig) { return (l.positive() ? "" : "~") + sig.name(l.symbol()); }

std::string abstract_text(const Ftsc& ftsc, std::size_t t) {
    std::string out;
    for (Literal l : ftsc.schema_literals(t)) {
        std::size_t pos = 0;
        bool negated = false;
        for (std::size_t k = 1; k <= ftsc.n(); ++k) {
            if (ftsc.chain_literal(k) == l || ftsc.chain_literal(k) == l.negated()) {
                pos = k;
                negated = ftsc.chain_literal(k) != l;
            }
        }
        if (!out.empty()) out += " ∨ ";
        out += (negated ? "¬x" : "x") + std::to_string(pos);
    }
    return "(" + out + ")";
}

// Terminal columns taken by UTF-8 text (no wide characters appear here).
std::size_t display_width(std::string_view s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

}  // namespace

ReportProblem describe_problem(const Ftsc& ftsc, std::span<const Theorem> theorems, const Scenario* scenario,
                               std::size_t instance) {
    const Signature& sig = ftsc.signature();
    ReportProblem p;
    if (scenario) {
        p.scenario = scenario->name;
        p.domain = scenario->domain_label;
    }
    p.instance = instance;
    p.n = ftsc.n();
    p.permutation_index = ftsc.permutation_rank();
    for (Literal l : ftsc.chain()) p.permutation.push_back(input_text(l, sig));
    for (const auto& s : sig.symbols()) p.symbols.push_back(s.name);
    for (std::size_t t = 1; t <= ftsc.n() + 1; ++t) {
        ReportClause c{t, {}, "D" + std::to_string(t) + " = " + ftsc.schema_text(t), abstract_text(ftsc, t)};
        for (Literal l : ftsc.schema_literals(t)) c.literals.push_back(report_literal(l, sig));
        p.clauses.push_back(std::move(c));
    }
    for (const auto& th : theorems) {
        ReportTheorem rt;
        rt.removed_index = th.removed_index;
        rt.statement = th.statement();
        for (Literal l : th.conclusion) rt.conclusion.push_back(report_literal(l, sig));
        rt.certification = to_string(th.certified);
        rt.trace_step_count = th.trace.steps.size();
        for (const auto& step : th.trace.steps) {
            ReportStep rs;
            rs.kind = to_string(step.kind);
            if (step.literal) rs.literal = report_literal(*step.literal, sig);
            if (step.clause) rs.clause = clause_index_of_premise(th.removed_index, *step.clause);
            rs.uses = step.uses;
            rt.trace.push_back(std::move(rs));
        }
        p.theorems.push_back(std::move(rt));
    }
    return p;
}

void add_ranking(Report& report, const RankedReport& ranked) {
    for (const auto& e : ranked.entries) {
        report.explanations.push_back(e.explanation);
        report.ranking.push_back(ReportRanking{e.explanation.ref, e.priority, e.score});
    }
}

// --- JSON ---------------------------------------------------------------------------

namespace {

json literal_json(const ReportLiteral& l) { return json{{"symbol", l.symbol}, {"positive", l.positive}}; }

json literals_json(const std::vector<ReportLiteral>& ls) {
    json out = json::array();
    for (const auto& l : ls) out.push_back(literal_json(l));
    return out;
}

json ref_json(const TheoremRef& r) {
    return json{{"scenario", r.scenario},
                {"scenario_order", r.scenario_order},
                {"permutation_id", r.permutation_id},
                {"removed_index", r.removed_index}};
}

json explanation_json(const Explanation& e) {
    json out = ref_json(e.ref);
    out["n"] = e.n;
    out["role"] = to_string(e.role);
    out["narrative"] = e.narrative;
    out["remediation"] = e.remediation;
    out["formal_annotation"] = e.formal_annotation;
    out["provenance"] = to_string(e.provenance);
    out["declared_priority"] = e.declared_priority ? json(to_string(*e.declared_priority)) : json(nullptr);
    out["model_score"] = e.model_score ? json(*e.model_score) : json(nullptr);
    out["diagnostics"] = e.diagnostics;
    return out;
}

// Field access that reports the dotted path on failure.
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

    const json& get(const char* field, json::value_t type) const {
        if (!node_.is_object()) throw SchemaViolation(path_, "expected an object");
        auto it = node_.find(field);
        if (it == node_.end()) throw SchemaViolation(path_ + "." + field, "missing");
        const bool ok = it->type() == type ||
                        (type == json::value_t::number_unsigned && it->type() == json::value_t::number_integer &&
                         it->get<long long>() >= 0) ||
                        (type == json::value_t::number_float && it->is_number());
        if (!ok) throw SchemaViolation(path_ + "." + field, std::string("expected ") + type_name(type));
        return *it;
    }

    std::string str(const char* field) const { return get(field, json::value_t::string).get<std::string>(); }
    std::uint64_t uint(const char* field) const { return get(field, json::value_t::number_unsigned).get<std::uint64_t>(); }
    bool boolean(const char* field) const { return get(field, json::value_t::boolean).get<bool>(); }
    const json& array(const char* field) const { return get(field, json::value_t::array); }
    bool is_null(const char* field) const {
        auto it = node_.find(field);
        if (it == node_.end()) throw SchemaViolation(path_ + "." + field, "missing");
        return it->is_null();
    }
    Reader child(const json& node, const std::string& suffix) const { return Reader(node, path_ + suffix); }
    const std::string& path() const { return path_; }

private:
    const json& node_;
    std::string path_;

    static const char* type_name(json::value_t t) {
        switch (t) {
            case json::value_t::string: return "a string";
            case json::value_t::boolean: return "a boolean";
            case json::value_t::array: return "an array";
            case json::value_t::object: return "an object";
            case json::value_t::number_float: return "a number";
            default: return "a non-negative integer";
        }
    }
};

ReportLiteral read_literal(const Reader& r) { return {r.str("symbol"), r.boolean("positive")}; }

std::vector<ReportLiteral> read_literals(const Reader& r, const char* field) {
    std::vector<ReportLiteral> out;
    const json& arr = r.array(field);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        out.push_back(read_literal(r.child(arr[k], std::string(".") + field + "[" + std::to_string(k) + "]")));
    }
    return out;
}

std::vector<std::string> read_strings(const Reader& r, const char* field) {
    std::vector<std::string> out;
    for (const auto& v : r.array(field)) {
        if (!v.is_string()) throw SchemaViolation(r.path() + "." + field, "expected strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

TheoremRef read_ref(const Reader& r) {
    return TheoremRef{r.str("scenario"), static_cast<std::size_t>(r.uint("scenario_order")), r.uint("permutation_id"),
                      static_cast<std::size_t>(r.uint("removed_index"))};
}

template <typename T>
T required_enum(std::optional<T> value, const Reader& r, const char* field) {
    if (!value) throw SchemaViolation(r.path() + "." + field, "unknown value '" + r.str(field) + "'");
    return *value;
}

Explanation read_explanation(const Reader& r) {
    Explanation e;
    e.ref = read_ref(r);
    e.n = static_cast<std::size_t>(r.uint("n"));
    e.role = required_enum(role_from_string(r.str("role")), r, "role");
    e.narrative = r.str("narrative");
    e.remediation = r.str("remediation");
    e.formal_annotation = r.str("formal_annotation");
    e.provenance = required_enum(provenance_from_string(r.str("provenance")), r, "provenance");
    if (!r.is_null("declared_priority")) {
        e.declared_priority = required_enum(priority_from_string(r.str("declared_priority")), r, "declared_priority");
    }
    if (!r.is_null("model_score")) e.model_score = r.get("model_score", json::value_t::number_float).get<double>();
    e.diagnostics = read_strings(r, "diagnostics");
    return e;
}

ReportProblem read_problem(const Reader& r) {
    ReportProblem p;
    p.scenario = r.str("scenario");
    p.domain = r.str("domain");
    p.instance = static_cast<std::size_t>(r.uint("instance"));
    p.n = static_cast<std::size_t>(r.uint("n"));
    p.permutation_index = r.uint("permutation_index");
    p.permutation = read_strings(r, "permutation");
    p.symbols = read_strings(r, "symbols");
    const json& clauses = r.array("clauses");
    for (std::size_t k = 0; k < clauses.size(); ++k) {
        Reader c = r.child(clauses[k], ".clauses[" + std::to_string(k) + "]");
        p.clauses.push_back(ReportClause{static_cast<std::size_t>(c.uint("index")), read_literals(c, "literals"),
                                         c.str("text"), c.str("abstract")});
    }
    const json& theorems = r.array("theorems");
    for (std::size_t k = 0; k < theorems.size(); ++k) {
        Reader t = r.child(theorems[k], ".theorems[" + std::to_string(k) + "]");
        ReportTheorem th;
        th.removed_index = static_cast<std::size_t>(t.uint("removed_index"));
        th.statement = t.str("statement");
        th.conclusion = read_literals(t, "conclusion");
        th.certification = t.str("certification");
        th.trace_step_count = static_cast<std::size_t>(t.uint("trace_step_count"));
        const json& steps = t.array("trace");
        for (std::size_t s = 0; s < steps.size(); ++s) {
            Reader sr = t.child(steps[s], ".trace[" + std::to_string(s) + "]");
            ReportStep step;
            step.kind = sr.str("kind");
            if (!sr.is_null("literal")) step.literal = read_literal(sr.child(sr.get("literal", json::value_t::object), ".literal"));
            if (!sr.is_null("clause")) step.clause = static_cast<std::size_t>(sr.uint("clause"));
            for (const auto& u : sr.array("uses")) {
                if (!u.is_number_unsigned() && !(u.is_number_integer() && u.get<long long>() >= 0)) {
                    throw SchemaViolation(sr.path() + ".uses", "expected non-negative integers");
                }
                step.uses.push_back(u.get<std::size_t>());
            }
            th.trace.push_back(std::move(step));
        }
        p.theorems.push_back(std::move(th));
    }
    return p;
}

}  // namespace

std::string to_json(const Report& report, int indent) {
    json root;
    root["metadata"] = json{{"schema_version", report.metadata.schema_version},
                            {"tool_version", report.metadata.tool_version},
                            {"timestamp", report.metadata.timestamp},
                            {"command", report.metadata.command}};
    json problems = json::array();
    for (const auto& p : report.problems) {
        json jp{{"scenario", p.scenario},
                {"domain", p.domain},
                {"instance", p.instance},
                {"n", p.n},
                {"permutation_index", p.permutation_index},
                {"permutation", p.permutation},
                {"symbols", p.symbols}};
        json clauses = json::array();
        for (const auto& c : p.clauses) {
            clauses.push_back(json{{"index", c.index}, {"literals", literals_json(c.literals)}, {"text", c.text}, {"abstract", c.abstract}});
        }
        jp["clauses"] = std::move(clauses);
        json theorems = json::array();
        for (const auto& t : p.theorems) {
            json steps = json::array();
            for (const auto& s : t.trace) {
                steps.push_back(json{{"kind", s.kind},
                                     {"literal", s.literal ? literal_json(*s.literal) : json(nullptr)},
                                     {"clause", s.clause ? json(*s.clause) : json(nullptr)},
                                     {"uses", s.uses}});
            }
            theorems.push_back(json{{"removed_index", t.removed_index},
                                    {"statement", t.statement},
                                    {"conclusion", literals_json(t.conclusion)},
                                    {"certification", t.certification},
                                    {"trace_step_count", t.trace_step_count},
                                    {"trace", std::move(steps)}});
        }
        jp["theorems"] = std::move(theorems);
        problems.push_back(std::move(jp));
    }
    root["problems"] = std::move(problems);
    json explanations = json::array();
    for (const auto& e : report.explanations) explanations.push_back(explanation_json(e));
    root["explanations"] = std::move(explanations);
    json ranking = json::array();
    for (const auto& r : report.ranking) {
        json jr = ref_json(r.ref);
        jr["priority"] = to_string(r.priority);
        jr["score"] = r.score;
        ranking.push_back(std::move(jr));
    }
    root["ranking"] = std::move(ranking);
    return root.dump(indent) + "\n";
}

Report report_from_json(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t k = 0; k < std::min<std::size_t>(e.byte, text.size()); ++k) line += text[k] == '\n';
        throw ParseError(line, e.what());
    }
    const Reader r(root, "report");
    Report report;
    const Reader meta = r.child(r.get("metadata", json::value_t::object), ".metadata");
    report.metadata.schema_version = static_cast<int>(meta.uint("schema_version"));
    if (report.metadata.schema_version != kReportSchemaVersion) {
        throw SchemaViolation("report.metadata.schema_version",
                              "unsupported version " + std::to_string(report.metadata.schema_version));
    }
    report.metadata.tool_version = meta.str("tool_version");
    report.metadata.timestamp = meta.str("timestamp");
    report.metadata.command = meta.str("command");

    const json& problems = r.array("problems");
    for (std::size_t k = 0; k < problems.size(); ++k) {
        report.problems.push_back(read_problem(r.child(problems[k], ".problems[" + std::to_string(k) + "]")));
    }
    const json& explanations = r.array("explanations");
    for (std::size_t k = 0; k < explanations.size(); ++k) {
        report.explanations.push_back(
            read_explanation(r.child(explanations[k], ".explanations[" + std::to_string(k) + "]")));
    }
    const json& ranking = r.array("ranking");
    for (std::size_t k = 0; k < ranking.size(); ++k) {
        Reader e = r.child(ranking[k], ".ranking[" + std::to_string(k) + "]");
        report.ranking.push_back(ReportRanking{read_ref(e), required_enum(priority_from_string(e.str("priority")), e, "priority"),
                                               e.get("score", json::value_t::number_float).get<double>()});
    }
    return report;
}

// --- reconstruction -----------------------------------------------------------------

namespace {

Literal resolve(const ReportLiteral& l, const Signature& sig, const std::string& where) {
    auto id = sig.find(l.symbol);
    if (!id) throw SchemaViolation(where, "unknown symbol '" + l.symbol + "'");
    return Literal(*id, l.positive);
}

}  // namespace

ClauseSet problem_clause_set(const ReportProblem& problem) {
    auto sig = std::make_shared<const Signature>(Signature::from_names(problem.symbols));
    std::vector<const ReportClause*> ordered;
    for (const auto& c : problem.clauses) ordered.push_back(&c);
    std::stable_sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->index < b->index; });
    std::vector<Clause> clauses;
    for (std::size_t k = 0; k < ordered.size(); ++k) {
        if (ordered[k]->index != k + 1) throw SchemaViolation("clauses", "clause indices must be 1..n+1");
        std::vector<Literal> lits;
        for (const auto& l : ordered[k]->literals) lits.push_back(resolve(l, *sig, "clauses"));
        clauses.emplace_back(std::move(lits));
    }
    return ClauseSet(std::move(sig), std::move(clauses));
}

ReconstructedProblem reconstruct(const ReportProblem& problem) {
    ReconstructedProblem out;
    out.ftsc = std::make_shared<const Ftsc>(Ftsc::from_clause_set(problem_clause_set(problem)));
    const Ftsc& ftsc = *out.ftsc;
    const Signature& sig = ftsc.signature();
    for (const auto& rt : problem.theorems) {
        if (rt.removed_index < 1 || rt.removed_index > ftsc.n() + 1) {
            throw SchemaViolation("theorems", "removed_index " + std::to_string(rt.removed_index) + " out of range");
        }
        Theorem th;
        th.source = out.ftsc;
        th.removed_index = rt.removed_index;
        for (const auto& l : rt.conclusion) th.conclusion.push_back(resolve(l, sig, "theorems.conclusion"));
        th.trace.goal = th.conclusion;
        for (const auto& rs : rt.trace) {
            TraceStep step;
            auto kind = step_kind_from_string(rs.kind);
            if (!kind) throw SchemaViolation("theorems.trace", "unknown step kind '" + rs.kind + "'");
            step.kind = *kind;
            if (rs.literal) step.literal = resolve(*rs.literal, sig, "theorems.trace");
            if (rs.clause) {
                // Citing the removed clause maps past the premise list so replay rejects it.
                step.clause = (*rs.clause == rt.removed_index || *rs.clause < 1 || *rs.clause > ftsc.n() + 1)
                                  ? std::numeric_limits<std::size_t>::max()
                                  : premise_position(rt.removed_index, *rs.clause);
            }
            step.uses = rs.uses;
            th.trace.steps.push_back(std::move(step));
        }
        out.theorems.push_back(std::move(th));
    }
    return out;
}

// --- text rendering -----------------------------------------------------------------

namespace {

std::string fixed(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << v;
    return out.str();
}

std::string literal_text(const ReportLiteral& l) { return (l.positive ? "" : "¬") + l.symbol; }

}  // namespace

std::string render_text(const Report& report) {
    std::ostringstream out;
    out << "ftsc " << report.metadata.tool_version << "  " << report.metadata.command << "  "
        << report.metadata.timestamp << "\n";
    for (const auto& p : report.problems) {
        out << "\n";
        if (!p.scenario.empty()) {
            out << "Scenario " << p.scenario;
            if (!p.domain.empty()) out << " (" << p.domain << ")";
            out << ", instance " << p.instance << "\n";
        }
        out << "n = " << p.n << ", permutation #" << p.permutation_index << ":";
        for (const auto& s : p.permutation) out << ' ' << s;
        out << "\n";
        for (const auto& c : p.clauses) out << "  " << c.text << "    " << c.abstract << "\n";
        out << "  theorem                 certification  steps  conclusion\n";
        for (const auto& t : p.theorems) {
            std::string conj;
            for (const auto& l : t.conclusion) conj += (conj.empty() ? "" : " ∧ ") + literal_text(l);
            std::string stmt = t.statement;
            const std::size_t w = display_width(stmt);
            out << "  " << stmt << std::string(w < 24 ? 24 - w : 1, ' ');
            out << std::left << std::setw(15) << t.certification << std::setw(7) << t.trace_step_count << conj << "\n";
        }
    }
    if (!report.ranking.empty()) {
        out << "\nRanking\n";
        out << "  #   priority  score  scenario / theorem\n";
        for (std::size_t k = 0; k < report.ranking.size(); ++k) {
            const auto& r = report.ranking[k];
            out << "  " << std::left << std::setw(4) << (k + 1) << std::setw(10) << to_string(r.priority)
                << std::setw(7) << fixed(r.score) << r.ref.scenario << " D" << r.ref.removed_index << "\n";
        }
    }
    for (const auto& e : report.explanations) {
        out << "\n[" << e.ref.scenario << " D" << e.ref.removed_index << ", " << to_string(e.role) << ", "
            << to_string(e.provenance) << "]\n"
            << e.narrative << "\n";
        for (const auto& d : e.diagnostics) out << "  note: " << d << "\n";
    }
    return out.str();
}

}  // namespace ftsc
