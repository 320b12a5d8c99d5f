#include "ftsc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftsc/formats.hpp"
#include "ftsc/model_client.hpp"
#include "ftsc/report.hpp"
#include "ftsc/verifier.hpp"

namespace ftsc {

namespace {

using json = nlohmann::ordered_json;

class VerificationFailure : public Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write '" + path + "'");
    file << text;
}

bool looks_like_scenario(const std::vector<std::string>& inputs) {
    return inputs.size() == 1 && inputs[0].size() > 5 && inputs[0].ends_with(".json");
}

// The literal list or scenario named on the command line.
struct Source {
    std::optional<Scenario> scenario;
    std::vector<std::shared_ptr<const Signature>> signatures;  // one per grounding instance
    std::vector<std::size_t> instance_ids;
};

Source load_source(const std::vector<std::string>& inputs, std::optional<std::size_t> instance) {
    Source src;
    if (looks_like_scenario(inputs)) {
        src.scenario = load_scenario_file(inputs[0]);
        const auto all = src.scenario->instances();
        for (std::size_t k = 0; k < all.size(); ++k) {
            if (instance && *instance != k) continue;
            src.signatures.push_back(std::make_shared<const Signature>(validate_input(all[k])));
            src.instance_ids.push_back(k);
        }
        if (instance && src.signatures.empty()) throw IndexOutOfRange(*instance, 0, all.size() - 1);
        return src;
    }
    std::vector<InputLiteral> literals;
    for (const auto& text : inputs) literals.push_back(parse_input_literal(text));
    src.signatures.push_back(std::make_shared<const Signature>(validate_input(literals)));
    src.instance_ids.push_back(0);
    return src;
}

std::vector<std::size_t> permutation_for(std::size_t n, std::uint64_t rank) {
    if (rank == 0) {
        std::vector<std::size_t> identity(n);
        std::iota(identity.begin(), identity.end(), std::size_t{0});
        return identity;
    }
    if (n > 20 || rank >= factorial(n)) throw Error("permutation index " + std::to_string(rank) + " out of range");
    return permutation_at(n, rank);
}

struct Certified {
    std::shared_ptr<const Ftsc> ftsc;
    std::vector<Theorem> theorems;
    bool mus = false;
    bool all_verified = false;
};

Theorem certify(const Theorem& th) {
    Theorem checked = check_theorem(th);
    if (checked.certified == Certification::Verified && !replay_trace(checked.trace, checked.premises())) {
        checked.certified = Certification::Failed;
    }
    return checked;
}

Certified build_certified(std::shared_ptr<const Signature> sig, std::uint64_t rank, bool with_mus = false) {
    Certified c;
    c.ftsc = std::make_shared<const Ftsc>(Ftsc::build(sig, permutation_for(sig->size(), rank)));
    c.all_verified = true;
    for (const auto& th : derive_theorems(c.ftsc)) {
        c.theorems.push_back(certify(th));
        c.all_verified = c.all_verified && c.theorems.back().certified == Certification::Verified;
    }
    if (with_mus) c.mus = check_mus(c.ftsc->clauses()).is_mus;
    return c;
}

std::string join_args(const std::vector<std::string>& args) {
    std::string out;
    for (const auto& a : args) out += (out.empty() ? "" : " ") + a;
    return out;
}

std::string render(const Report& report, const std::string& format) {
    return format == "text" ? render_text(report) : to_json(report);
}

// --- subcommands --------------------------------------------------------------------

struct GenerateArgs {
    std::vector<std::string> inputs;
    std::uint64_t permutation = 0;
    std::optional<std::size_t> instance;
    std::string format = "json";
    std::string output;
};

int cmd_generate(const GenerateArgs& a, const std::string& command, std::ostream& out) {
    const Source src = load_source(a.inputs, a.instance);
    Report report;
    report.metadata = make_metadata(command);
    bool ok = true;
    for (std::size_t k = 0; k < src.signatures.size(); ++k) {
        const auto c = build_certified(src.signatures[k], a.permutation);
        ok = ok && c.all_verified;
        report.problems.push_back(
            describe_problem(*c.ftsc, c.theorems, src.scenario ? &*src.scenario : nullptr, src.instance_ids[k]));
    }
    write_output(render(report, a.format), a.output, out);
    if (!ok) throw VerificationFailure("a generated theorem failed certification");
    return kExitOk;
}

struct EnumerateArgs {
    std::vector<std::string> inputs;
    std::size_t n_cap = 10;
    bool force = false;
    unsigned jobs = 1;
    bool certify = true;
    std::optional<std::size_t> instance;
};

struct EnumeratedItem {
    std::uint64_t rank = 0;
    json line;
    std::vector<Clause> canonical;  // for the distinctness check
    bool certified = true;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
    Source src = load_source(a.inputs, a.instance ? a.instance : std::optional<std::size_t>{0});
    const auto sig = src.signatures.front();
    const std::size_t n = sig->size();
    FtscEnumerator probe(*sig, 0, 0, EnumerationOptions{a.n_cap, a.force});
    const std::uint64_t total = probe.total();
    const bool check_distinct = n <= 8;

    std::set<std::vector<Clause>> seen;
    std::uint64_t yielded = 0, certified = 0, duplicates = 0;
    const unsigned jobs = std::max(1u, a.jobs);
    const std::uint64_t chunk = 256;

    for (std::uint64_t start = 0; start < total; start += chunk * jobs) {
        std::vector<std::vector<EnumeratedItem>> parts(jobs);
        auto work = [&](unsigned w) {
            const std::uint64_t first = std::min(total, start + w * chunk);
            const std::uint64_t last = std::min(total, first + chunk);
            FtscEnumerator it(*sig, first, last, EnumerationOptions{a.n_cap, a.force});
            while (auto f = it.next()) {
                auto shared = std::make_shared<const Ftsc>(std::move(*f));
                EnumeratedItem item;
                item.rank = shared->permutation_rank();
                json perm = json::array();
                for (Literal l : shared->chain()) perm.push_back((l.positive() ? "" : "~") + sig->name(l.symbol()));
                json clauses = json::array();
                for (std::size_t t = 1; t <= n + 1; ++t) clauses.push_back(shared->schema_text(t));
                item.line = json{{"permutation_index", item.rank}, {"permutation", perm}, {"clauses", clauses}};
                if (a.certify) {
                    bool ok = check_mus(shared->clauses()).is_mus;
                    for (const auto& th : derive_theorems(shared)) ok = ok && certify(th).certified == Certification::Verified;
                    item.certified = ok;
                    item.line["certified"] = ok;
                }
                if (check_distinct) {
                    item.canonical.assign(shared->clauses().clauses().begin(), shared->clauses().clauses().end());
                    std::sort(item.canonical.begin(), item.canonical.end());
                }
                parts[w].push_back(std::move(item));
            }
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
            for (auto& t : pool) t.join();
        }
        for (auto& part : parts) {
            for (auto& item : part) {
                out << item.line.dump() << "\n";
                ++yielded;
                certified += item.certified ? 1 : 0;
                if (check_distinct && !seen.insert(std::move(item.canonical)).second) ++duplicates;
            }
        }
    }

    json summary{{"n", n},
                 {"ftsc_count", yielded},
                 {"expected_ftsc_count", total},
                 {"theorem_count", yielded * (n + 1)},
                 {"certified", a.certify ? json(certified) : json(nullptr)},
                 {"pairwise_distinct", check_distinct ? json(duplicates == 0) : json(nullptr)}};
    out << json{{"summary", summary}}.dump() << "\n";
    if (yielded != total || duplicates != 0 || (a.certify && certified != yielded)) {
        throw VerificationFailure("enumeration check failed");
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string input;
};

// `claimed` holds the certification recorded in a report, when there is one.
bool verify_ftsc_theorems(const std::vector<Theorem>& theorems, const std::string& label, std::ostream& out,
                          const std::vector<std::string>* claimed = nullptr) {
    bool ok = true;
    for (std::size_t k = 0; k < theorems.size(); ++k) {
        const Theorem& th = theorems[k];
        const TheoremAudit audit = audit_theorem(th);
        const ReplayResult replay = replay_trace(th.trace, th.premises());
        const bool checks = audit.passed() && replay.ok;
        const bool honest = !claimed || (*claimed)[k] == to_string(checks ? Certification::Verified : Certification::Failed);
        const bool passed = checks && honest;
        ok = ok && passed;
        out << label << "D" << th.removed_index << ": " << (passed ? "verified" : "FAILED");
        if (!honest) out << " (report claims '" << (*claimed)[k] << "')";
        if (!audit.passed()) out << " (" << audit.describe() << ")";
        if (!replay.ok) {
            out << " (trace rejected";
            if (replay.failing_step) out << " at step " << *replay.failing_step;
            out << ": " << replay.reason << ")";
        }
        out << "\n";
    }
    return ok;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const std::string text = read_file(a.input);
    const auto first = text.find_first_not_of(" \t\r\n");
    bool ok = true;
    if (first != std::string::npos && text[first] == '{') {
        const Report report = report_from_json(text);
        for (std::size_t k = 0; k < report.problems.size(); ++k) {
            const auto& p = report.problems[k];
            const std::string label = "problem " + std::to_string(k) + (p.scenario.empty() ? "" : " (" + p.scenario + ")");
            const MusReport mus = check_mus(problem_clause_set(p));
            out << label << ": " << (mus.is_mus ? "minimal unsatisfiable" : "NOT a minimal unsatisfiable set") << "\n";
            ok = ok && mus.is_mus;
            ReconstructedProblem rp;
            try {
                rp = reconstruct(p);
            } catch (const MalformedFtsc& e) {
                out << label << ": FAILED (" << e.what() << ")\n";
                ok = false;
                continue;
            }
            std::vector<std::string> claimed;
            for (const auto& t : p.theorems) claimed.push_back(t.certification);
            ok = verify_ftsc_theorems(rp.theorems, label + " ", out, &claimed) && ok;
            for (std::size_t t = 0; t < p.theorems.size(); ++t) {
                if (p.theorems[t].trace_step_count != p.theorems[t].trace.size()) {
                    out << label << " D" << p.theorems[t].removed_index << ": FAILED (trace_step_count mismatch)\n";
                    ok = false;
                }
            }
        }
    } else {
        const ClauseSet set = parse_dimacs(text);
        const MusReport mus = check_mus(set);
        out << "clause set: " << (mus.is_mus ? "minimal unsatisfiable" : "NOT a minimal unsatisfiable set") << "\n";
        ok = mus.is_mus;
        try {
            auto ftsc = std::make_shared<const Ftsc>(Ftsc::from_clause_set(set));
            ok = verify_ftsc_theorems(derive_theorems(ftsc), "", out) && ok;
        } catch (const MalformedFtsc& e) {
            out << "not FTSC-shaped (" << e.what() << "); theorem checks skipped\n";
        }
    }
    out << "verification: " << (ok ? "passed" : "FAILED") << "\n";
    return ok ? kExitOk : kExitVerification;
}

struct ExplainArgs {
    std::vector<std::string> scenarios;
    std::uint64_t permutation = 0;
    std::string model_endpoint;
    std::string model_fixture;
    bool all = false;
    std::string format = "json";
    std::string output;
};

int cmd_explain(const ExplainArgs& a, const std::string& command, std::ostream& out, std::ostream& err) {
    std::unique_ptr<ModelClient> client;
    if (!a.model_fixture.empty()) {
        client = std::make_unique<FixtureModelClient>(FixtureModelClient::from_file(a.model_fixture));
    } else if (!a.model_endpoint.empty()) {
        const char* key = std::getenv(HttpModelClient::kKeyVariable);
        client = std::make_unique<HttpModelClient>(a.model_endpoint, key ? key : "");
    } else {
        client = HttpModelClient::from_environment();
    }

    Report report;
    report.metadata = make_metadata(command);
    std::vector<Explanation> explanations;
    bool ok = true;
    for (std::size_t order = 0; order < a.scenarios.size(); ++order) {
        if (!looks_like_scenario({a.scenarios[order]})) throw Error("explain expects scenario files (*.json)");
        const Source src = load_source({a.scenarios[order]}, std::nullopt);
        const Scenario& sc = *src.scenario;
        for (std::size_t k = 0; k < src.signatures.size(); ++k) {
            const auto c = build_certified(src.signatures[k], a.permutation);
            report.problems.push_back(describe_problem(*c.ftsc, c.theorems, &sc, src.instance_ids[k]));
            for (const auto& th : c.theorems) {
                const bool wanted = a.all || sc.flagged.empty() ||
                                    std::find(sc.flagged.begin(), sc.flagged.end(), th.removed_index) != sc.flagged.end();
                if (!wanted) continue;
                if (th.certified != Certification::Verified) {
                    ok = false;
                    continue;
                }
                explanations.push_back(explain_via_model(th, sc, client.get(), VerbalizeOptions{order}));
                for (const auto& d : explanations.back().diagnostics) err << d << "\n";
            }
        }
    }
    if (!explanations.empty()) {
        RankingPolicy policy;
        if (client) policy.kind = RankingPolicy::Kind::ExternalModel;
        add_ranking(report, rank(std::move(explanations), policy));
    }
    write_output(render(report, a.format), a.output, out);
    if (!ok) throw VerificationFailure("a theorem failed certification and was not explained");
    return kExitOk;
}

struct ExportArgs {
    std::vector<std::string> inputs;
    std::string format;
    std::string mode = "cnf";
    std::uint64_t permutation = 0;
    std::size_t instance = 0;
    std::optional<std::size_t> theorem;
    std::string output;
};

int cmd_export(const ExportArgs& a, const std::string& command, std::ostream& out) {
    const Source src = load_source(a.inputs, a.instance);
    const auto c = build_certified(src.signatures.front(), a.permutation);
    std::string text;
    if (a.format == "dimacs") {
        text = emit_dimacs(c.ftsc->clauses());
    } else if (a.format == "tptp") {
        const TptpMode mode = a.mode == "fof" ? TptpMode::Fof : TptpMode::Cnf;
        std::optional<FolMetadata> meta;
        if (src.scenario) meta = FolMetadata{src.scenario->predicate_atoms()};
        const FolMetadata* mp = meta ? &*meta : nullptr;
        if (a.theorem) {
            if (*a.theorem < 1 || *a.theorem > c.ftsc->n() + 1) throw IndexOutOfRange(*a.theorem, 1, c.ftsc->n() + 1);
            text = emit_tptp_problem(c.theorems[*a.theorem - 1], mode, mp);
        } else {
            text = emit_tptp(*c.ftsc, c.theorems, mode, mp);
        }
    } else {
        Report report;
        report.metadata = make_metadata(command);
        report.problems.push_back(
            describe_problem(*c.ftsc, c.theorems, src.scenario ? &*src.scenario : nullptr, src.instance_ids.front()));
        text = to_json(report);
    }
    write_output(text, a.output, out);
    return c.all_verified ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generate, certify, explain and export full triangular standard contradictions."};
    app.name("ftsc");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Build one FTSC and its certified theorems");
    generate->add_option("inputs", gen.inputs, "Literals (e.g. a ~b c) or one scenario file (*.json)")->required();
    generate->add_option("--permutation", gen.permutation, "Lexicographic permutation index");
    generate->add_option("--instance", gen.instance, "Grounding instance (default: all)");
    generate->add_option("--format", gen.format)->check(CLI::IsMember({"json", "text"}));
    generate->add_option("-o,--output", gen.output, "Write to a file instead of stdout");

    EnumerateArgs en;
    auto* enumerate = app.add_subcommand("enumerate", "Stream the FTSCs of every permutation as JSON lines");
    enumerate->add_option("inputs", en.inputs, "Literals or one scenario file")->required();
    enumerate->add_option("--n-cap", en.n_cap, "Refuse n above this unless --force");
    enumerate->add_flag("--force", en.force, "Override the n cap");
    enumerate->add_option("--jobs", en.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    enumerate->add_flag("!--no-certify", en.certify, "Skip MUS and theorem certification");
    enumerate->add_option("--instance", en.instance, "Grounding instance (default 0)");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Re-check a JSON report or a DIMACS file");
    verify->add_option("input", ver.input)->required();

    ExplainArgs ex;
    auto* explain = app.add_subcommand("explain", "Ranked explanations for one or more scenarios");
    explain->add_option("scenarios", ex.scenarios, "Scenario files, ranked in the given order")->required();
    explain->add_option("--permutation", ex.permutation);
    explain->add_option("--model-endpoint", ex.model_endpoint, "http:// endpoint (default: $FTSC_MODEL_ENDPOINT)");
    explain->add_option("--model-fixture", ex.model_fixture, "Replay a recorded model response");
    explain->add_flag("--all", ex.all, "Explain every theorem, not just flagged ones");
    explain->add_option("--format", ex.format)->check(CLI::IsMember({"json", "text"}));
    explain->add_option("-o,--output", ex.output);

    ExportArgs xp;
    auto* exporter = app.add_subcommand("export", "Write an FTSC as DIMACS, TPTP or a JSON report");
    exporter->add_option("inputs", xp.inputs, "Literals or one scenario file")->required();
    exporter->add_option("--format", xp.format)->required()->check(CLI::IsMember({"dimacs", "tptp", "json"}));
    exporter->add_option("--mode", xp.mode, "TPTP dialect")->check(CLI::IsMember({"cnf", "fof"}));
    exporter->add_option("--permutation", xp.permutation);
    exporter->add_option("--instance", xp.instance);
    exporter->add_option("--theorem", xp.theorem, "TPTP: one problem for S\\{Di} |- ~Di");
    exporter->add_option("-o,--output", xp.output);

    // CLI11 wants argv order reversed when parsing from a vector.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = join_args(args);
    try {
        if (*generate) return cmd_generate(gen, command, out);
        if (*enumerate) return cmd_enumerate(en, out);
        if (*verify) return cmd_verify(ver, out);
        if (*explain) return cmd_explain(ex, command, out, err);
        if (*exporter) return cmd_export(xp, command, out);
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << "\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace ftsc
