#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tts/rng.hpp"
#include "tts/stance.hpp"

namespace tts {

// Bijection on claim indices used to pick the off-task baseline pair for each
// on-task claim. Indices are 0-based internally; serialization is 1-based.
//
// Invariant beyond bijectivity: for every k, mapping[(k+1) % K] != k and
// mapping[(k+2) % K] != k, so both off-task claims differ from the on-task
// claim. The identity always qualifies, and for K = 3 it is the only
// qualifying permutation.
class OffTaskPermutation {
public:
    static OffTaskPermutation identity(std::size_t n_claims);
    // Validates bijectivity and the off-task distinctness invariant.
    static OffTaskPermutation from_mapping(std::vector<std::size_t> mapping);

    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t k) const { return map_[k]; }

    // ell = mapping[(k+1) mod K], m = mapping[(k+2) mod K]
    std::size_t offtask_first(std::size_t k) const { return map_[(k + 1) % map_.size()]; }
    std::size_t offtask_second(std::size_t k) const { return map_[(k + 2) % map_.size()]; }

    const std::vector<std::size_t>& mapping() const { return map_; }

private:
    explicit OffTaskPermutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {}
    std::vector<std::size_t> map_;
};

// Uniform over permutations satisfying the distinctness invariant, by
// rejection sampling. Throws DataError for K < 3.
OffTaskPermutation sample_offtask_permutation(std::size_t n_claims, rng::Stream& stream);

// S(a, b) = 1 iff both stances are polar and equal.
inline int pair_task_score(Stance a, Stance b) {
    return (is_polar(a) && a == b) ? 1 : 0;
}

// sigma_ikj = S(r_ik, r_jk) - S(r_i ell, r_j m), in {-1, 0, 1}.
int pairwise_claim_score(const StanceMatrix& matrix, std::size_t i, std::size_t j,
                         std::size_t k, const OffTaskPermutation& perm);

// sigma_bar_ij = (1/K) sum_k sigma_ikj, in [-1, 1].
double peer_average_score(const StanceMatrix& matrix, std::size_t i, std::size_t j,
                          const OffTaskPermutation& perm);

// w_hat_i: mean of sigma_bar_ij over peers j != i, or the reputation-weighted
// mean when weights are given. Weights are indexed by source (length
// n_sources); the self-weight is ignored. Throws when there is no peer or the
// peer weights sum to zero.
double source_score(const StanceMatrix& matrix, std::size_t i, const OffTaskPermutation& perm,
                    const std::optional<std::vector<double>>& weights = std::nullopt);

struct ScoreReport {
    std::vector<std::string> source_ids;
    std::vector<double> scores;                        // w_hat_i
    std::vector<std::vector<double>> peer_components;  // [i][j] = sigma_bar_ij; self slot 0
    std::vector<std::vector<std::size_t>> permutations; // per scored source, 0-based
    double threshold = 0.0;
    std::vector<bool> included;
    std::optional<std::vector<double>> utilities;
};

// Scores every source: one permutation per scored source (derived from
// (seed, source index), shared across that source's peers), then hard
// thresholding. Requires K >= 3 and n_sources >= 2.
ScoreReport score_all(const StanceMatrix& matrix, std::uint64_t seed, double threshold,
                      const std::optional<std::vector<double>>& weights = std::nullopt);

// Majority baseline: fraction of claims where i's stance equals the mode of
// the peers' polar stances (scored source excluded from the mode). Ties and
// all-abstaining peer columns contribute 0.
double majority_score(const StanceMatrix& matrix, std::size_t i);

// w_hat >= t_src. Throws on NaN score.
bool hard_threshold_include(double score, double threshold);

struct AffineInclusion {
    double probability = 0.0;
    bool clamped = false; // set when a + b*score fell outside [0,1]
};

// P(include) = clamp(a + b * score, 0, 1) with a, b >= 0.
AffineInclusion affine_inclusion_probability(double score, double offset, double slope);

// Threshold at the midpoint of the truthful/deviation score gap. Throws when
// the gap is not positive ("no separation").
double midpoint_threshold(double truthful_mean, double worst_deviation_mean);

// u = v * p - c * e with p in [0,1], v > 0, c >= 0.
double expected_utility(double inclusion_probability, double value, double cost, bool effort);

} // namespace tts
