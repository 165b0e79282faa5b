#include "tts/mechanism.hpp"

#include <cmath>
#include <numeric>

#include "tts/errors.hpp"

namespace tts {

namespace {

bool satisfies_offtask_distinctness(const std::vector<std::size_t>& mapping) {
    const std::size_t n = mapping.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (mapping[(k + 1) % n] == k) return false;
        if (mapping[(k + 2) % n] == k) return false;
    }
    return true;
}

} // namespace

OffTaskPermutation OffTaskPermutation::identity(std::size_t n_claims) {
    std::vector<std::size_t> mapping(n_claims);
    std::iota(mapping.begin(), mapping.end(), std::size_t{0});
    return OffTaskPermutation(std::move(mapping));
}

OffTaskPermutation OffTaskPermutation::from_mapping(std::vector<std::size_t> mapping) {
    const std::size_t n = mapping.size();
    if (n < 3) throw DataError("need at least 3 claims");
    std::vector<bool> seen(n, false);
    for (std::size_t v : mapping) {
        if (v >= n || seen[v]) throw DataError("off-task permutation is not a bijection");
        seen[v] = true;
    }
    if (!satisfies_offtask_distinctness(mapping))
        throw DataError("off-task permutation maps an off-task slot onto its on-task claim");
    return OffTaskPermutation(std::move(mapping));
}

OffTaskPermutation sample_offtask_permutation(std::size_t n_claims, rng::Stream& stream) {
    if (n_claims < 3) throw DataError("need at least 3 claims");
    std::vector<std::size_t> mapping(n_claims);
    std::iota(mapping.begin(), mapping.end(), std::size_t{0});
    // The identity qualifies, so the accept set is nonempty for every K >= 3.
    do {
        stream.shuffle(mapping);
    } while (!satisfies_offtask_distinctness(mapping));
    return OffTaskPermutation::from_mapping(std::move(mapping));
}

int pairwise_claim_score(const StanceMatrix& matrix, std::size_t i, std::size_t j,
                         std::size_t k, const OffTaskPermutation& perm) {
    if (i == j) throw DataError("self-scoring: i and j must differ");
    if (matrix.n_claims() < 3) throw DataError("need at least 3 claims");
    if (perm.size() != matrix.n_claims())
        throw DataError("permutation size does not match claim count");
    const std::size_t ell = perm.offtask_first(k);
    const std::size_t m = perm.offtask_second(k);
    return pair_task_score(matrix.at(i, k), matrix.at(j, k)) -
           pair_task_score(matrix.at(i, ell), matrix.at(j, m));
}

double peer_average_score(const StanceMatrix& matrix, std::size_t i, std::size_t j,
                          const OffTaskPermutation& perm) {
    const std::size_t K = matrix.n_claims();
    long sum = 0;
    for (std::size_t k = 0; k < K; ++k) sum += pairwise_claim_score(matrix, i, j, k, perm);
    return static_cast<double>(sum) / static_cast<double>(K);
}

double source_score(const StanceMatrix& matrix, std::size_t i, const OffTaskPermutation& perm,
                    const std::optional<std::vector<double>>& weights) {
    const std::size_t n = matrix.n_sources();
    if (n < 2) throw DataError("source_score: no peers to compare against");
    if (weights && weights->size() != n)
        throw DataError("weights must have length n_sources");

    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double w = weights ? (*weights)[j] : 1.0;
        if (w == 0.0) continue;
        numerator += w * peer_average_score(matrix, i, j, perm);
        denominator += w;
    }
    if (denominator == 0.0) throw DataError("source_score: peer weights sum to zero");
    return numerator / denominator;
}

ScoreReport score_all(const StanceMatrix& matrix, std::uint64_t seed, double threshold,
                      const std::optional<std::vector<double>>& weights) {
    const std::size_t n = matrix.n_sources();
    const std::size_t K = matrix.n_claims();
    if (K < 3) throw DataError("need at least 3 claims");
    if (n < 2) throw DataError("need at least 2 sources");
    if (weights && weights->size() != n)
        throw DataError("weights must have length n_sources");

    ScoreReport report;
    report.source_ids = matrix.source_ids();
    report.threshold = threshold;
    report.scores.resize(n, 0.0);
    report.peer_components.assign(n, std::vector<double>(n, 0.0));
    report.permutations.resize(n);
    report.included.resize(n, false);

    for (std::size_t i = 0; i < n; ++i) {
        // Permutation stream depends only on (seed, i), never on evaluation order.
        rng::Stream stream = rng::derive(seed, i);
        const OffTaskPermutation perm = sample_offtask_permutation(K, stream);
        report.permutations[i] = perm.mapping();

        double numerator = 0.0;
        double denominator = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double component = peer_average_score(matrix, i, j, perm);
            report.peer_components[i][j] = component;
            const double w = weights ? (*weights)[j] : 1.0;
            numerator += w * component;
            denominator += w;
        }
        if (denominator == 0.0) throw DataError("score_all: peer weights sum to zero");
        report.scores[i] = numerator / denominator;
        report.included[i] = hard_threshold_include(report.scores[i], threshold);
    }
    return report;
}

double majority_score(const StanceMatrix& matrix, std::size_t i) {
    const std::size_t n = matrix.n_sources();
    const std::size_t K = matrix.n_claims();
    if (n < 2) throw DataError("majority_score: no peers to compare against");

    std::size_t matches = 0;
    for (std::size_t k = 0; k < K; ++k) {
        std::size_t supports = 0;
        std::size_t contradicts = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            switch (matrix.at(j, k)) {
            case Stance::Support: ++supports; break;
            case Stance::Contradict: ++contradicts; break;
            case Stance::Abstain: break;
            }
        }
        if (supports == contradicts) continue; // tie or all-abstain: no mode
        const Stance mode = supports > contradicts ? Stance::Support : Stance::Contradict;
        if (matrix.at(i, k) == mode) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(K);
}

bool hard_threshold_include(double score, double threshold) {
    if (std::isnan(score)) throw DataError("hard_threshold_include: score is NaN");
    if (!std::isfinite(threshold)) throw DataError("hard_threshold_include: threshold must be finite");
    return score >= threshold;
}

AffineInclusion affine_inclusion_probability(double score, double offset, double slope) {
    if (offset < 0.0 || slope < 0.0)
        throw DataError("affine inclusion requires offset >= 0 and slope >= 0");
    const double raw = offset + slope * score;
    AffineInclusion out;
    out.clamped = raw < 0.0 || raw > 1.0;
    out.probability = raw < 0.0 ? 0.0 : (raw > 1.0 ? 1.0 : raw);
    return out;
}

double midpoint_threshold(double truthful_mean, double worst_deviation_mean) {
    if (!(truthful_mean > worst_deviation_mean))
        throw DataError("midpoint_threshold: no separation between means");
    return 0.5 * (truthful_mean + worst_deviation_mean);
}

double expected_utility(double inclusion_probability, double value, double cost, bool effort) {
    if (!(inclusion_probability >= 0.0 && inclusion_probability <= 1.0))
        throw DataError("expected_utility: inclusion probability must lie in [0,1]");
    if (!(value > 0.0)) throw DataError("expected_utility: value must be positive");
    if (cost < 0.0) throw DataError("expected_utility: cost must be nonnegative");
    return value * inclusion_probability - cost * (effort ? 1.0 : 0.0);
}

} // namespace tts
