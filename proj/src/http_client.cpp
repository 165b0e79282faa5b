#include "tts/http_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "tts/errors.hpp"

namespace tts {

namespace {

class HttplibTransport : public Transport {
public:
    HttplibTransport(std::string base_url, int timeout_seconds)
        : base_url_(std::move(base_url)), timeout_seconds_(timeout_seconds) {}

    TransportResponse post(const TransportRequest& request) override {
        httplib::Client client(base_url_);
        client.set_connection_timeout(timeout_seconds_, 0);
        client.set_read_timeout(timeout_seconds_, 0);
        client.set_write_timeout(timeout_seconds_, 0);
        httplib::Headers headers;
        for (const auto& [key, value] : request.headers) headers.emplace(key, value);
        auto result = client.Post(request.path, headers, request.body, "application/json");
        if (!result) return {0, httplib::to_string(result.error())};
        return {result->status, result->body};
    }

private:
    std::string base_url_;
    int timeout_seconds_;
};

bool retryable(int status) { return status <= 0 || status == 429 || status >= 500; }

std::string truncated(const std::string& body) {
    constexpr std::size_t kLimit = 240;
    if (body.size() <= kLimit) return body;
    return body.substr(0, kLimit) + "...";
}

} // namespace

std::unique_ptr<Transport> make_httplib_transport(const std::string& base_url,
                                                  int timeout_seconds) {
    return std::make_unique<HttplibTransport>(base_url, timeout_seconds);
}

HttpLlmClient::HttpLlmClient(HttpLlmConfig config, std::unique_ptr<Transport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
    if (!config_.credential_env.empty()) {
        const char* value = std::getenv(config_.credential_env.c_str());
        if (value == nullptr || *value == '\0')
            throw ProviderError("environment variable " + config_.credential_env +
                                " is not set (required for the http provider credential)");
        bearer_token_ = value;
    }
    if (!transport_) {
        if (config_.base_url.empty())
            throw ProviderError("http provider requires a base_url");
        transport_ = make_httplib_transport(config_.base_url, config_.timeout_seconds);
    }
}

std::string HttpLlmClient::complete(const LlmRequest& request) {
    nlohmann::json payload{{"model", config_.model},
                           {"prompt", request.prompt},
                           {"temperature", request.temperature},
                           {"max_tokens", request.max_tokens}};
    TransportRequest transport_request;
    transport_request.path = config_.completions_path;
    transport_request.body = payload.dump();
    if (!bearer_token_.empty())
        transport_request.headers.emplace_back("Authorization", "Bearer " + bearer_token_);

    const int attempts_allowed = config_.max_retries + 1;
    std::string last_failure;
    for (int attempt = 1; attempt <= attempts_allowed; ++attempt) {
        const TransportResponse response = transport_->post(transport_request);
        if (response.status >= 200 && response.status < 300) return response.body;

        if (!retryable(response.status))
            throw ProviderError("llm_complete: HTTP " + std::to_string(response.status) + ": " +
                                truncated(response.body));

        last_failure = response.status <= 0
                           ? "transport error: " + truncated(response.body)
                           : "HTTP " + std::to_string(response.status) + ": " +
                                 truncated(response.body);
        if (attempt < attempts_allowed && config_.backoff_initial_seconds > 0.0) {
            const double seconds = config_.backoff_initial_seconds * (1 << (attempt - 1));
            std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
        }
    }
    throw ProviderError("llm_complete: " + std::to_string(attempts_allowed) +
                        " attempts failed; last failure: " + last_failure);
}

} // namespace tts
