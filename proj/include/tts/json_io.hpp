#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tts/claims.hpp"
#include "tts/http_client.hpp"
#include "tts/mechanism.hpp"
#include "tts/pipeline.hpp"
#include "tts/prompts.hpp"
#include "tts/providers.hpp"
#include "tts/simulator.hpp"
#include "tts/world.hpp"

namespace tts {

// All loaders throw DataError with the offending key on malformed input.

nlohmann::json world_config_to_json(const WorldConfig& config);
WorldConfig world_config_from_json(const nlohmann::json& j);

nlohmann::json stance_matrix_to_json(const StanceMatrix& matrix);
StanceMatrix stance_matrix_from_json(const nlohmann::json& j);

nlohmann::json score_report_to_json(const ScoreReport& report);

nlohmann::json claim_set_to_json(const ClaimSet& set);

nlohmann::json pipeline_result_to_json(const PipelineResult& result);

// Manifest {"query": ..., "documents": [{"source_id","text","role"?}, ...]}.
struct DocumentPool {
    std::string query;
    std::vector<Document> documents;
};
DocumentPool document_pool_from_json(const nlohmann::json& j);

// Provider config {"provider": "mock"|"http", "base_url"?, "model"?,
// "credential_env"?, "timeout_seconds"?, "max_retries"?, "prompts"?}.
struct ProviderConfig {
    std::string kind = "mock";
    HttpLlmConfig http;
    PromptTemplates templates = PromptTemplates::defaults();
};
ProviderConfig provider_config_from_json(const nlohmann::json& j,
                                         const std::string& base_dir = {});

nlohmann::json replicate_result_to_json(const ReplicateResult& result);
nlohmann::json sweep_result_to_json(const IncentiveSweepResult& result);
nlohmann::json collusion_result_to_json(const CollusionResult& result);
nlohmann::json concentration_result_to_json(const ConcentrationResult& result);

std::string replicate_result_to_csv(const ReplicateResult& result);
std::string sweep_result_to_csv(const IncentiveSweepResult& result);
std::string collusion_result_to_csv(const CollusionResult& result);
std::string concentration_result_to_csv(const ConcentrationResult& result);

// File helpers.
nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace tts
