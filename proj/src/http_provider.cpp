#include "tts/http_provider.hpp"

#include <iostream>

#include <nlohmann/json.hpp>

#include "tts/errors.hpp"

namespace tts {

HttpProvider::HttpProvider(HttpLlmConfig config, PromptTemplates templates,
                           std::unique_ptr<Transport> transport)
    : client_(std::move(config), std::move(transport)), templates_(std::move(templates)) {}

std::string HttpProvider::summarize(const std::string& query,
                                    const std::vector<Document>& documents) {
    std::string source_texts;
    for (std::size_t d = 0; d < documents.size(); ++d) {
        source_texts += "[Source " + std::to_string(d + 1) + "]\n";
        source_texts += documents[d].text;
        source_texts += "\n\n";
    }
    const std::string prompt = render_template(
        templates_.synthesis, {{"query", query}, {"source_texts", source_texts}});
    return client_.complete({prompt});
}

std::vector<std::string> HttpProvider::decompose(const std::string& draft) {
    const std::string prompt = render_template(templates_.decompose, {{"synthesis", draft}});
    const std::string reply = client_.complete({prompt});

    // Expect {"claims": [...]}; the reply may wrap it in prose or code fences.
    const std::size_t start = reply.find('{');
    const std::size_t end = reply.rfind('}');
    if (start == std::string::npos || end == std::string::npos || end <= start)
        throw ProviderError("decomposer reply contains no JSON object");
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(reply.substr(start, end - start + 1));
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("decomposer reply is not valid JSON: ") + e.what());
    }
    if (!parsed.contains("claims") || !parsed["claims"].is_array())
        throw ProviderError("decomposer reply lacks a \"claims\" array");
    std::vector<std::string> claims;
    for (const auto& item : parsed["claims"])
        if (item.is_string()) claims.push_back(item.get<std::string>());
    return claims;
}

Stance HttpProvider::extract(const Document& document, const std::string& claim) {
    const std::string prompt =
        render_template(templates_.stance, {{"text", document.text}, {"claim", claim}});
    const std::string reply = client_.complete({prompt});
    Stance stance = Stance::Abstain;
    if (!parse_stance_tag(reply, stance)) {
        ++anomalies_;
        std::cerr << "[tts] warning: unparseable stance reply for source "
                  << document.source_id << "; treating as abstain\n";
        return Stance::Abstain;
    }
    return stance;
}

} // namespace tts
