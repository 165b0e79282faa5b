#include "tts/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "tts/errors.hpp"

namespace tts {

namespace {

std::size_t require_document(const std::vector<Document>& documents,
                             const std::string& source_id) {
    for (std::size_t d = 0; d < documents.size(); ++d)
        if (documents[d].source_id == source_id) return d;
    throw DataError("document pool has no source \"" + source_id + "\"");
}

void check_pool(const std::vector<Document>& documents) {
    if (documents.size() < 2) throw DataError("document pool needs at least 2 documents");
    std::unordered_set<std::string> ids;
    for (const Document& doc : documents) {
        if (doc.source_id.empty()) throw DataError("document with empty source_id");
        if (doc.text.empty()) throw DataError("document " + doc.source_id + " has empty text");
        if (!ids.insert(doc.source_id).second)
            throw DataError("duplicate source_id \"" + doc.source_id + "\" in document pool");
    }
}

} // namespace

ClaimSet build_loo_claimset(const std::string& source_id, const std::string& query,
                            const std::vector<Document>& documents, Provider& provider) {
    check_pool(documents);
    require_document(documents, source_id);

    std::vector<Document> peers;
    peers.reserve(documents.size() - 1);
    for (const Document& doc : documents)
        if (doc.source_id != source_id) peers.push_back(doc);

    std::string draft;
    std::vector<std::string> raw_claims;
    try {
        draft = provider.summarize(query, peers);
        raw_claims = provider.decompose(draft);
    } catch (const ProviderError& e) {
        throw ProviderError("claim set for source " + source_id + ": " + e.what());
    }

    ClaimSet set;
    set.scored_source = source_id;
    std::unordered_set<std::string> seen;
    for (const std::string& raw : raw_claims) {
        const std::string text = normalize_whitespace(raw);
        if (text.empty() || !seen.insert(text).second) continue;
        Claim claim;
        claim.id = "c" + std::to_string(set.claims.size());
        claim.text = text;
        set.claims.push_back(std::move(claim));
    }
    for (const Document& peer : peers) set.provenance.push_back(peer.source_id);

    if (set.claims.size() < 3)
        throw DataError("insufficient claims for source " + source_id + ": " +
                        std::to_string(set.claims.size()) + " after dedup (need at least 3)");
    set.validate();
    return set;
}

StanceMatrix extract_stance_matrix(const ClaimSet& claim_set,
                                   const std::vector<Document>& documents, Provider& provider,
                                   std::size_t max_in_flight, std::size_t max_attempts) {
    check_pool(documents);
    claim_set.validate();
    const std::size_t n = documents.size();
    const std::size_t K = claim_set.claims.size();
    if (K == 0) throw DataError("claim set is empty");
    if (max_attempts == 0) max_attempts = 1;

    std::vector<std::string> ids;
    ids.reserve(n);
    for (const Document& doc : documents) ids.push_back(doc.source_id);
    StanceMatrix matrix(std::move(ids), K);

    struct FailedCell {
        std::size_t source;
        std::size_t claim;
        std::string error;
    };
    std::vector<FailedCell> failures;
    std::mutex failures_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> completed{0};
    const std::size_t total = n * K;

    auto worker = [&] {
        while (true) {
            const std::size_t cell = next.fetch_add(1);
            if (cell >= total) return;
            const std::size_t d = cell / K;
            const std::size_t k = cell % K;
            std::string last_error;
            bool done = false;
            for (std::size_t attempt = 0; attempt < max_attempts && !done; ++attempt) {
                try {
                    matrix.set(d, k, provider.extract(documents[d], claim_set.claims[k].text));
                    done = true;
                } catch (const std::exception& e) {
                    last_error = e.what();
                }
            }
            if (done) {
                completed.fetch_add(1);
            } else {
                std::lock_guard<std::mutex> lock(failures_mutex);
                failures.push_back({d, k, last_error});
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(max_in_flight, total));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end(),
                  [](const FailedCell& a, const FailedCell& b) {
                      return std::tie(a.source, a.claim) < std::tie(b.source, b.claim);
                  });
        std::string manifest = "stance extraction for " + claim_set.scored_source + ": " +
                               std::to_string(completed.load()) + "/" + std::to_string(total) +
                               " cells completed; failed cells:";
        for (const FailedCell& f : failures) {
            manifest += " (" + matrix.source_ids()[f.source] + "," +
                        claim_set.claims[f.claim].id + "): " + f.error + ";";
        }
        throw ProviderError(manifest);
    }
    return matrix;
}

PipelineResult run_tts(const std::string& query, const std::vector<Document>& documents,
                       Provider& provider, const PipelineOptions& options) {
    check_pool(documents);
    if (!std::isfinite(options.threshold)) throw DataError("threshold must be finite");
    const std::size_t n = documents.size();

    PipelineResult result;
    result.query = query;
    for (const Document& doc : documents) result.source_ids.push_back(doc.source_id);

    result.report.source_ids = result.source_ids;
    result.report.threshold = options.threshold;
    result.report.scores.resize(n, 0.0);
    result.report.peer_components.assign(n, std::vector<double>(n, 0.0));
    result.report.permutations.resize(n);
    result.report.included.resize(n, false);

    for (std::size_t i = 0; i < n; ++i) {
        const std::string& source_id = documents[i].source_id;
        ClaimSet claim_set = build_loo_claimset(source_id, query, documents, provider);
        StanceMatrix matrix = extract_stance_matrix(claim_set, documents, provider,
                                                    options.max_in_flight, options.max_attempts);

        rng::Stream stream = rng::derive(options.seed, i);
        const OffTaskPermutation perm = sample_offtask_permutation(matrix.n_claims(), stream);
        result.report.permutations[i] = perm.mapping();

        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double component = peer_average_score(matrix, i, j, perm);
            result.report.peer_components[i][j] = component;
            sum += component;
        }
        result.report.scores[i] = sum / static_cast<double>(n - 1);
        result.report.included[i] =
            hard_threshold_include(result.report.scores[i], options.threshold);

        result.claim_sets.emplace(source_id, std::move(claim_set));
        result.stance_matrices.emplace(source_id, std::move(matrix));
    }

    std::vector<Document> reliable_docs;
    for (std::size_t i = 0; i < n; ++i) {
        if (result.report.included[i]) {
            result.reliable_set.push_back(documents[i].source_id);
            reliable_docs.push_back(documents[i]);
        }
    }

    if (reliable_docs.empty()) {
        result.abstained = true;
        result.final_summary = kAbstentionText;
    } else {
        try {
            result.final_summary = provider.summarize(query, reliable_docs);
        } catch (const ProviderError& e) {
            throw ProviderError(std::string("final summary: ") + e.what());
        }
    }
    return result;
}

} // namespace tts
