#pragma once

#include <memory>
#include <string>
#include <vector>

namespace tts {

struct TransportRequest {
    std::string path;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body; // JSON
};

struct TransportResponse {
    int status = 0;      // HTTP status; <= 0 means the request never completed
    std::string body;    // response body, or error text when status <= 0
};

// Minimal POST transport so tests can substitute canned responses for the
// real network stack.
class Transport {
public:
    virtual ~Transport() = default;
    virtual TransportResponse post(const TransportRequest& request) = 0;
};

// cpp-httplib transport bound to a base URL.
std::unique_ptr<Transport> make_httplib_transport(const std::string& base_url,
                                                  int timeout_seconds);

struct LlmRequest {
    std::string prompt;
    double temperature = 0.0;
    int max_tokens = 2048;
};

struct HttpLlmConfig {
    std::string base_url;
    std::string model;
    std::string credential_env;            // env var holding the bearer token; empty = no auth
    std::string completions_path = "/v1/completions";
    int timeout_seconds = 60;
    int max_retries = 3;                   // retries after the first attempt
    double backoff_initial_seconds = 0.5;  // doubled per retry; 0 disables sleeping
};

// Completion client: POSTs {"model", "prompt", "temperature", "max_tokens"}
// and returns the 2xx response body verbatim. Retries 429/5xx/network
// failures with exponential backoff; any other non-2xx status fails
// immediately with the status and a truncated body. Throws ProviderError.
class HttpLlmClient {
public:
    HttpLlmClient(HttpLlmConfig config, std::unique_ptr<Transport> transport = nullptr);

    std::string complete(const LlmRequest& request);

private:
    HttpLlmConfig config_;
    std::unique_ptr<Transport> transport_;
    std::string bearer_token_;
};

} // namespace tts
