#pragma once

#include <memory>

#include "tts/http_client.hpp"
#include "tts/prompts.hpp"
#include "tts/providers.hpp"

namespace tts {

// Provider backed by an HTTP completion endpoint. Stance replies are parsed
// from <stance> tags; replies with no parseable tag map to Abstain and are
// counted as anomalies rather than failing the run.
class HttpProvider : public Provider {
public:
    HttpProvider(HttpLlmConfig config, PromptTemplates templates = PromptTemplates::defaults(),
                 std::unique_ptr<Transport> transport = nullptr);

    std::string summarize(const std::string& query,
                          const std::vector<Document>& documents) override;
    std::vector<std::string> decompose(const std::string& draft) override;
    Stance extract(const Document& document, const std::string& claim) override;

    std::size_t stance_parse_anomalies() const { return anomalies_; }

private:
    HttpLlmClient client_;
    PromptTemplates templates_;
    std::size_t anomalies_ = 0;
};

} // namespace tts
