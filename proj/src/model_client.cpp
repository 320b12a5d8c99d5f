#include "ftsc/model_client.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "prompt_templates.hpp"

namespace ftsc {

using nlohmann::json;

const char* const kPromptVersion = "explain_v1";

std::string ModelRequest::to_json() const {
    json j;
    j["prompt_version"] = prompt_version;
    j["scenario"] = scenario;
    j["clauses"] = clauses;
    j["removed_index"] = removed_index;
    j["trace_summary"] = trace_summary;
    j["prompt"] = prompt;
    return j.dump();
}

ModelResponse parse_model_response(std::string_view body, std::size_t removed_index) {
    json j;
    try {
        j = json::parse(body.begin(), body.end());
    } catch (const json::parse_error& e) {
        throw ModelClientError(std::string("response is not JSON: ") + e.what());
    }
    if (!j.is_object()) throw ModelClientError("response must be a JSON object");
    if (!j.contains("narrative") || !j["narrative"].is_string() || j["narrative"].get_ref<const std::string&>().empty()) {
        throw ModelClientError("response lacks a nonempty 'narrative'");
    }
    ModelResponse r;
    r.narrative = j["narrative"].get<std::string>();
    if (j.contains("remediation")) {
        if (!j["remediation"].is_string()) throw ModelClientError("'remediation' must be a string");
        r.remediation = j["remediation"].get<std::string>();
    }
    if (j.contains("score") && !j["score"].is_null()) {
        if (!j["score"].is_number()) throw ModelClientError("'score' must be a number");
        r.score = j["score"].get<double>();
        if (!std::isfinite(*r.score)) throw ModelClientError("'score' must be finite");
    }
    const std::string label = "D" + std::to_string(removed_index);
    const std::string subscript = "D_" + std::to_string(removed_index);
    auto cites = [&](const std::string& tag) {
        for (auto pos = r.narrative.find(tag); pos != std::string::npos; pos = r.narrative.find(tag, pos + 1)) {
            const auto end = pos + tag.size();
            if (end == r.narrative.size() || !std::isdigit(static_cast<unsigned char>(r.narrative[end]))) return true;
        }
        return false;
    };
    if (!cites(label) && !cites(subscript)) throw ModelClientError("narrative does not reference " + label);
    return r;
}

namespace {

void replace_all(std::string& text, const std::string& key, const std::string& value) {
    for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size())) {
        text.replace(pos, key.size(), value);
    }
}

}  // namespace

ModelRequest build_model_request(const Theorem& theorem, const Scenario& scenario) {
    const Ftsc& ftsc = *theorem.source;
    ModelRequest req;
    req.prompt_version = kPromptVersion;
    req.scenario = scenario.name;
    req.removed_index = theorem.removed_index;
    req.trace_summary = summarize_trace(theorem);

    std::string clause_lines;
    for (std::size_t t = 1; t <= ftsc.n() + 1; ++t) {
        req.clauses.push_back("D" + std::to_string(t) + " = " + ftsc.schema_text(t));
        clause_lines += "  " + req.clauses.back() + "\n";
    }
    std::string glosses;
    for (std::size_t k = 0; k < scenario.atoms.size() && k < ftsc.signature().size(); ++k) {
        const auto& gloss = scenario.atoms[k].gloss;
        glosses += "  " + ftsc.signature().name(SymbolId{static_cast<std::uint32_t>(k)}) + ": " +
                   (gloss.empty() ? "(no gloss)" : gloss) + "\n";
    }

    std::string prompt = prompts::kExplainV1;
    replace_all(prompt, "{{scenario}}", scenario.name);
    replace_all(prompt, "{{domain}}", scenario.domain_label.empty() ? "unspecified domain" : scenario.domain_label);
    replace_all(prompt, "{{clauses}}", clause_lines);
    replace_all(prompt, "{{removed_index}}", std::to_string(theorem.removed_index));
    replace_all(prompt, "{{removed_clause}}", ftsc.schema_text(theorem.removed_index));
    replace_all(prompt, "{{trace_summary}}", req.trace_summary);
    replace_all(prompt, "{{glosses}}", glosses);
    req.prompt = std::move(prompt);
    return req;
}

// --- HTTP client ----------------------------------------------------------------------

HttpModelClient::HttpModelClient(std::string endpoint, std::string api_key, std::chrono::milliseconds timeout)
    : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)), timeout_(timeout) {}

std::unique_ptr<HttpModelClient> HttpModelClient::from_environment() {
    const char* endpoint = std::getenv(kEndpointVariable);
    if (!endpoint || !*endpoint) return nullptr;
    const char* key = std::getenv(kKeyVariable);
    return std::make_unique<HttpModelClient>(endpoint, key ? key : "");
}

std::string HttpModelClient::complete(const ModelRequest& request) {
    const std::lock_guard<std::mutex> lock(mutex_);

    constexpr std::string_view scheme = "http://";
    if (!std::string_view(endpoint_).starts_with(scheme)) {
        throw ModelClientError("only http:// endpoints are supported: " + endpoint_);
    }
    const auto path_start = endpoint_.find('/', scheme.size());
    const std::string base = endpoint_.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : endpoint_.substr(path_start);

    httplib::Client client(base);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto result = client.Post(path, headers, request.to_json(), "application/json");
    if (!result) throw ModelClientError("request to " + endpoint_ + " failed: " + httplib::to_string(result.error()));
    if (result->status != 200) {
        throw ModelClientError("endpoint " + endpoint_ + " answered HTTP " + std::to_string(result->status));
    }
    return result->body;
}

// --- fixture client ------------------------------------------------------------------

FixtureModelClient FixtureModelClient::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model fixture " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return FixtureModelClient(buf.str());
}

std::string FixtureModelClient::complete(const ModelRequest& request) {
    requests_.push_back(request);
    return body_;
}

// --- orchestration -----------------------------------------------------------------------

Explanation explain_via_model(const Theorem& theorem, const Scenario& scenario, ModelClient* client,
                              const VerbalizeOptions& options) {
    Explanation ex = verbalize(theorem, scenario, options);
    if (!client) return ex;
    try {
        const auto body = client->complete(build_model_request(theorem, scenario));
        auto response = parse_model_response(body, theorem.removed_index);
        ex.narrative = std::move(response.narrative);
        if (!response.remediation.empty()) ex.remediation = std::move(response.remediation);
        ex.model_score = response.score;
        ex.provenance = Provenance::ExternalModel;
    } catch (const std::exception& e) {
        ex.diagnostics.push_back("warning: model client '" + client->describe() + "' failed (" + e.what() +
                                 "); used template explanation");
    }
    return ex;
}

}  // namespace ftsc
