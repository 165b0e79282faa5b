#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tts/claims.hpp"
#include "tts/mechanism.hpp"
#include "tts/providers.hpp"
#include "tts/world.hpp"

namespace tts {

struct PipelineOptions {
    double threshold = kDefaultThreshold;
    std::uint64_t seed = kDefaultSeed;
    std::size_t max_in_flight = 8; // concurrent extractor calls
    std::size_t max_attempts = 3;  // per extractor call
};

// Everything produced by one two-pass run: per-source held-out claim sets and
// stance matrices, the score report, the filtered source set, and the final
// summary (or the abstention text when no source clears the threshold).
struct PipelineResult {
    std::string query;
    std::vector<std::string> source_ids;
    std::map<std::string, ClaimSet> claim_sets;
    std::map<std::string, StanceMatrix> stance_matrices;
    ScoreReport report;
    std::vector<std::string> reliable_set;
    std::string final_summary;
    bool abstained = false;
};

inline constexpr const char* kAbstentionText =
    "No sources met the reliability threshold; no summary can be produced from the "
    "provided documents.";

// Held-out claim set for one source: draft from the peers' documents, then
// decompose and dedupe (exact text match after whitespace normalization).
// Throws DataError when fewer than 3 claims survive.
ClaimSet build_loo_claimset(const std::string& source_id, const std::string& query,
                            const std::vector<Document>& documents, Provider& provider);

// Stance of every document (the scored source included) on every claim.
// Cells are keyed by (source, claim) index so call order never matters; each
// call is retried up to max_attempts times, and any cell that still fails
// aborts the run with a partial-results manifest in the error text.
StanceMatrix extract_stance_matrix(const ClaimSet& claim_set,
                                   const std::vector<Document>& documents, Provider& provider,
                                   std::size_t max_in_flight = 8, std::size_t max_attempts = 3);

// The full two-pass run: per-source LOO claim sets, stance extraction,
// scoring with one permutation per source derived from (seed, source index),
// hard-threshold filtering, and re-summarization over the reliable documents.
PipelineResult run_tts(const std::string& query, const std::vector<Document>& documents,
                       Provider& provider, const PipelineOptions& options = {});

} // namespace tts
