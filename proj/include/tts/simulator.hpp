#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tts/analytics.hpp"
#include "tts/mechanism.hpp"
#include "tts/world.hpp"

namespace tts {

// One realized synthetic world: latent truths, private signals, coverage
// gates, and the induced stance matrix.
struct WorldSample {
    std::vector<std::uint8_t> truths;               // theta_k
    std::vector<std::vector<std::uint8_t>> signals; // z_ik
    std::vector<std::vector<std::uint8_t>> gates;   // Q_ik
    StanceMatrix stances;
};

// Draws truths i.i.d. Bernoulli(prior), gates Bernoulli(alpha_ik), signals
// from the per-source channel, and stances from each strategy. When a
// peer_informativeness matrix is present, reports follow the symmetric
// parameterization t = (1+eta)/2, f = (1-eta)/2 directly. No-effort sources
// observe a fair coin instead of a signal. Deterministic given the seed.
WorldSample sample_world(const WorldConfig& config, std::uint64_t seed);

// Expected-score inputs for scored source i implied by a config (strategy
// scalars expanded against any per-claim matrices).
ExpectedScoreParams make_expected_score_params(const WorldConfig& config, std::size_t scored);

// Analytic E[w_hat_i] for the config, honoring reputation weights.
double analytic_source_mean(const WorldConfig& config, std::size_t scored);

struct CellStats {
    double mean = 0.0;
    std::optional<double> se; // sample stdev / sqrt(R); absent when R = 1
    std::size_t count = 0;
};

CellStats summarize(const std::vector<double>& values);

struct NamedCheck {
    std::string name;
    bool passed = false;
};

struct ReplicationOptions {
    std::size_t threads = 0;      // 0 = automatic
    bool keep_raw_scores = false; // retain per-replication scores per source
};

struct ScoreCell {
    std::string source_id;
    CellStats score;
    double analytic = 0.0;
    double inclusion_frequency = 0.0;
    double utility = 0.0; // v_i * inclusion_frequency - c_i * e_i
    std::optional<std::vector<double>> raw_scores;
};

struct ReplicateResult {
    std::size_t replications = 0;
    double threshold = 0.0;
    std::vector<ScoreCell> sources;
};

// R independent worlds with per-replication seeds derived from (config.seed,
// replication index); reports empirical means against the analytic values.
// Bit-identical results regardless of thread count.
ReplicateResult run_replications(const WorldConfig& config, std::size_t replications,
                                 const ReplicationOptions& options = {});

struct SweepCell {
    double flip_fraction = 0.0;
    CellStats score;
    double analytic = 0.0; // (1 - 2 phi) * truthful mean
    double inclusion_frequency = 0.0;
};

struct IncentiveSweepResult {
    std::size_t replications = 0;
    double threshold = 0.0;
    double truthful_analytic = 0.0;
    std::vector<SweepCell> cells;
    std::vector<NamedCheck> checks; // per-cell analytic match + monotonicity
    bool passed() const;
};

// Source 0 plays Flip(phi) for each phi while the other sources keep their
// configured strategies; reports empirical means with the analytic overlay.
IncentiveSweepResult incentive_sweep(const WorldConfig& config,
                                     const std::vector<double>& flip_fractions,
                                     std::size_t replications,
                                     const ReplicationOptions& options = {});

struct CollusionCell {
    std::string source_id;
    std::string role; // "truthful", "colluder", or "other"
    CellStats tts;
    CellStats majority;
};

struct CollusionResult {
    std::size_t replications = 0;
    double threshold = 0.0;
    std::vector<CollusionCell> sources;
    std::vector<NamedCheck> checks;
    bool passed() const;
};

// Requires at least two Constant-polar sources. Scores every source under
// both rules and checks the orderings: truthful TTS means above colluder TTS
// means (colluders near zero), colluder majority means above truthful ones,
// and exact zero peer components between constant-row pairs.
CollusionResult collusion_experiment(const WorldConfig& config, std::size_t replications,
                                     const ReplicationOptions& options = {});

struct TailCell {
    double deviation = 0.0;
    double empirical = 0.0; // P(|w_hat - E w_hat| >= t)
    double se = 0.0;
    double bound = 0.0;     // mcdiarmid_tail(K, t)
};

struct ConcentrationResult {
    std::size_t replications = 0;
    std::size_t n_claims = 0;
    double analytic_mean = 0.0;
    std::vector<TailCell> cells;
    std::vector<NamedCheck> checks;
    bool passed() const;
};

// Empirical two-sided tails of source 0's score around its analytic mean,
// paired with the concentration bound; checks empirical <= bound + 4 SE.
ConcentrationResult concentration_experiment(const WorldConfig& config,
                                             const std::vector<double>& deviations,
                                             std::size_t replications,
                                             const ReplicationOptions& options = {});

} // namespace tts
