#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ftsc/explain.hpp"

namespace ftsc {

// Version tag of the prompt template in prompts/; recorded in every request.
extern const char* const kPromptVersion;

struct ModelRequest {
    std::string prompt_version;
    std::string scenario;
    std::vector<std::string> clauses;
    std::size_t removed_index = 0;
    std::string trace_summary;
    std::string prompt;

    [[nodiscard]] std::string to_json() const;
};

struct ModelResponse {
    std::string narrative;
    std::string remediation;
    std::optional<double> score;
};

class ModelClientError : public Error {
public:
    using Error::Error;
};

// Parses {narrative, remediation, score} and requires the narrative to cite
// D<removed_index>. Throws ModelClientError otherwise.
ModelResponse parse_model_response(std::string_view body, std::size_t removed_index);

ModelRequest build_model_request(const Theorem& theorem, const Scenario& scenario);

class ModelClient {
public:
    virtual ~ModelClient() = default;
    // Throws on transport or protocol failure.
    virtual std::string complete(const ModelRequest& request) = 0;
    [[nodiscard]] virtual std::string describe() const = 0;
};

// POSTs the request JSON to an http:// endpoint. Requests are serialized
// through one connection per client; every call is bounded by the timeout.
class HttpModelClient : public ModelClient {
public:
    static constexpr const char* kEndpointVariable = "FTSC_MODEL_ENDPOINT";
    static constexpr const char* kKeyVariable = "FTSC_MODEL_KEY";

    HttpModelClient(std::string endpoint, std::string api_key,
                    std::chrono::milliseconds timeout = std::chrono::seconds(30));

    // Null when FTSC_MODEL_ENDPOINT is unset or empty.
    static std::unique_ptr<HttpModelClient> from_environment();

    std::string complete(const ModelRequest& request) override;
    [[nodiscard]] std::string describe() const override { return endpoint_; }

private:
    std::string endpoint_;
    std::string api_key_;
    std::chrono::milliseconds timeout_;
    std::mutex mutex_;
};

// Replays a recorded response body, for tests and offline audits.
class FixtureModelClient : public ModelClient {
public:
    explicit FixtureModelClient(std::string body) : body_(std::move(body)) {}
    static FixtureModelClient from_file(const std::string& path);

    std::string complete(const ModelRequest& request) override;
    [[nodiscard]] std::string describe() const override { return "fixture"; }
    [[nodiscard]] const std::vector<ModelRequest>& requests() const { return requests_; }

private:
    std::string body_;
    std::vector<ModelRequest> requests_;
};

// Never throws on client failure: any error degrades to verbalize() with a
// diagnostic recording the fallback. A null client means template only.
Explanation explain_via_model(const Theorem& theorem, const Scenario& scenario, ModelClient* client,
                              const VerbalizeOptions& options = {});

}  // namespace ftsc
