#include "tts/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "tts/errors.hpp"

namespace tts {

namespace {

void check_structure(const WorldConfig& config) {
    if (config.strategies.empty()) throw DataError("config has no strategies");
    if (config.n_claims == 0) throw DataError("config has no claims");
    if (!(config.prior >= 0.0 && config.prior <= 1.0))
        throw DataError("prior must lie in [0,1] for sampling");
    const std::size_t n = config.n_sources();
    const std::size_t K = config.n_claims;
    auto check_matrix = [&](const std::optional<ClaimMatrix>& m, const char* name, double lo,
                            double hi) {
        if (!m) return;
        if (m->size() != n) throw DataError(std::string(name) + ": wrong row count");
        for (const auto& row : *m) {
            if (row.size() != K) throw DataError(std::string(name) + ": wrong column count");
            for (double v : row)
                if (!(v >= lo && v <= hi)) throw DataError(std::string(name) + ": entry out of range");
        }
    };
    check_matrix(config.peer_coverage, "peer_coverage", 0.0, 1.0);
    check_matrix(config.peer_informativeness, "peer_informativeness", -1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto violations = strategy_violations(config.strategies[i], i);
        if (!violations.empty()) throw DataError(violations.front());
    }
}

Stance report_to_stance(bool report_support) {
    return report_support ? Stance::Support : Stance::Contradict;
}

} // namespace

WorldSample sample_world(const WorldConfig& config, std::uint64_t seed) {
    check_structure(config);
    const std::size_t n = config.n_sources();
    const std::size_t K = config.n_claims;

    rng::Stream stream(rng::mix(seed, 0x5EEDu));

    WorldSample sample{std::vector<std::uint8_t>(K, 0),
                       std::vector<std::vector<std::uint8_t>>(n, std::vector<std::uint8_t>(K, 0)),
                       std::vector<std::vector<std::uint8_t>>(n, std::vector<std::uint8_t>(K, 0)),
                       StanceMatrix(config.source_names(), K)};

    for (std::size_t k = 0; k < K; ++k)
        sample.truths[k] = stream.bernoulli(config.prior) ? 1 : 0;

    for (std::size_t i = 0; i < n; ++i) {
        const SourceStrategy& strat = config.strategies[i];
        for (std::size_t k = 0; k < K; ++k) {
            const bool gate = stream.bernoulli(config.coverage_at(i, k));
            sample.gates[i][k] = gate ? 1 : 0;
            if (!gate) {
                sample.stances.set(i, k, Stance::Abstain);
                continue;
            }

            if (config.peer_informativeness) {
                // Symmetric report law pinned by the per-claim eta:
                // P(support | true) = (1+eta)/2, P(support | false) = (1-eta)/2.
                const double eta = (*config.peer_informativeness)[i][k];
                const double p_support =
                    sample.truths[k] ? (1.0 + eta) / 2.0 : (1.0 - eta) / 2.0;
                const bool support = stream.bernoulli(p_support);
                sample.signals[i][k] = support ? 1 : 0;
                sample.stances.set(i, k, report_to_stance(support));
                continue;
            }

            // Effort grants a signal from the configured channel; no effort
            // observes an unbiased coin, so every reporting rule stays
            // independent of the latent truth.
            const bool effort = strat.script && strat.script->kind == ScriptKind::Truthful
                                    ? true
                                    : strat.effort;
            const double p_signal =
                effort ? (sample.truths[k] ? strat.signal_accuracy_true
                                           : strat.signal_accuracy_false)
                       : 0.5;
            const bool z = stream.bernoulli(p_signal);
            sample.signals[i][k] = z ? 1 : 0;

            bool support = z;
            if (strat.script) {
                switch (strat.script->kind) {
                case ScriptKind::Truthful:
                    support = z;
                    break;
                case ScriptKind::Flip:
                    support = stream.bernoulli(strat.script->flip_fraction) ? !z : z;
                    break;
                case ScriptKind::UninformedRandom:
                    support = stream.bernoulli(strat.script->support_probability);
                    break;
                case ScriptKind::Constant:
                    sample.stances.set(i, k, strat.script->stance);
                    continue;
                }
            } else {
                support = stream.bernoulli(z ? strat.report_given_one : strat.report_given_zero);
            }
            sample.stances.set(i, k, report_to_stance(support));
        }
    }
    return sample;
}

ExpectedScoreParams make_expected_score_params(const WorldConfig& config, std::size_t scored) {
    const std::size_t n = config.n_sources();
    const std::size_t K = config.n_claims;
    if (scored >= n) throw DataError("scored source index out of range");

    auto coverage_series = [&](std::size_t s) -> ClaimSeries {
        if (config.peer_coverage) return ClaimSeries((*config.peer_coverage)[s]);
        return ClaimSeries(config.strategies[s].coverage);
    };
    auto informativeness_series = [&](std::size_t s) -> ClaimSeries {
        if (config.peer_informativeness) return ClaimSeries((*config.peer_informativeness)[s]);
        return ClaimSeries(policy_informativeness(config.strategies[s]));
    };

    ExpectedScoreParams params{config.prior, K, coverage_series(scored),
                               informativeness_series(scored), {}};
    params.peers.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == scored) continue;
        params.peers.push_back({coverage_series(j), informativeness_series(j)});
    }
    return params;
}

double analytic_source_mean(const WorldConfig& config, std::size_t scored) {
    std::optional<std::vector<double>> peer_weights;
    if (config.reputation_weights) {
        peer_weights.emplace();
        for (std::size_t j = 0; j < config.n_sources(); ++j)
            if (j != scored) peer_weights->push_back((*config.reputation_weights)[j]);
    }
    return expected_source_score(make_expected_score_params(config, scored), peer_weights);
}

CellStats summarize(const std::vector<double>& values) {
    CellStats stats;
    stats.count = values.size();
    if (values.empty()) return stats;
    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - stats.mean;
            ss += d * d;
        }
        const double stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
        stats.se = stdev / std::sqrt(static_cast<double>(values.size()));
    }
    return stats;
}

namespace {

// Runs fn(r) for r in [0, R) over a fixed-size pool; results must be written
// to disjoint slots so scheduling never affects the outcome.
template <class Fn>
void parallel_replications(std::size_t total, std::size_t threads, Fn&& fn) {
    std::size_t n_threads = threads == 0
                                ? std::max<std::size_t>(1, std::thread::hardware_concurrency())
                                : threads;
    n_threads = std::min(n_threads, total == 0 ? 1 : total);
    if (n_threads <= 1) {
        for (std::size_t r = 0; r < total; ++r) fn(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) {
        pool.emplace_back([t, n_threads, total, &fn] {
            for (std::size_t r = t; r < total; r += n_threads) fn(r);
        });
    }
    for (std::thread& th : pool) th.join();
}

struct ReplicationDraws {
    std::vector<std::vector<double>> scores;        // [source][rep]
    std::vector<std::vector<std::uint8_t>> included; // [source][rep]
};

ReplicationDraws draw_replications(const WorldConfig& config, std::size_t replications,
                                   const ReplicationOptions& options) {
    if (replications < 1) throw DataError("replications must be at least 1");
    check_structure(config);
    if (config.n_claims < 3) throw DataError("need at least 3 claims");
    if (config.n_sources() < 2) throw DataError("need at least 2 sources");

    const std::size_t n = config.n_sources();
    ReplicationDraws draws;
    draws.scores.assign(n, std::vector<double>(replications, 0.0));
    draws.included.assign(n, std::vector<std::uint8_t>(replications, 0));

    parallel_replications(replications, options.threads, [&](std::size_t r) {
        const std::uint64_t world_seed = rng::mix(config.seed, 1, r);
        const std::uint64_t score_seed = rng::mix(config.seed, 2, r);
        const WorldSample sample = sample_world(config, world_seed);
        const ScoreReport report =
            score_all(sample.stances, score_seed, config.threshold, config.reputation_weights);
        for (std::size_t i = 0; i < n; ++i) {
            draws.scores[i][r] = report.scores[i];
            draws.included[i][r] = report.included[i] ? 1 : 0;
        }
    });
    return draws;
}

double inclusion_frequency(const std::vector<std::uint8_t>& included) {
    std::size_t count = 0;
    for (std::uint8_t b : included) count += b;
    return static_cast<double>(count) / static_cast<double>(included.size());
}

bool effort_of(const SourceStrategy& s) {
    if (s.script && s.script->kind == ScriptKind::Truthful) return true;
    return s.effort;
}

} // namespace

ReplicateResult run_replications(const WorldConfig& config, std::size_t replications,
                                 const ReplicationOptions& options) {
    const ReplicationDraws draws = draw_replications(config, replications, options);
    const std::vector<std::string> names = config.source_names();

    ReplicateResult result;
    result.replications = replications;
    result.threshold = config.threshold;
    for (std::size_t i = 0; i < config.n_sources(); ++i) {
        ScoreCell cell;
        cell.source_id = names[i];
        cell.score = summarize(draws.scores[i]);
        cell.analytic = analytic_source_mean(config, i);
        cell.inclusion_frequency = inclusion_frequency(draws.included[i]);
        cell.utility = expected_utility(cell.inclusion_frequency, config.value_for(i),
                                        config.cost_for(i), effort_of(config.strategies[i]));
        if (options.keep_raw_scores) cell.raw_scores = draws.scores[i];
        result.sources.push_back(std::move(cell));
    }
    return result;
}

bool IncentiveSweepResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

IncentiveSweepResult incentive_sweep(const WorldConfig& config,
                                     const std::vector<double>& flip_fractions,
                                     std::size_t replications,
                                     const ReplicationOptions& options) {
    if (config.n_sources() < 2) throw DataError("incentive sweep needs at least 2 sources");
    for (double phi : flip_fractions)
        if (!(phi >= 0.0 && phi <= 0.5))
            throw DataError("flip fraction must lie in [0,0.5]");

    // Truthful analytic mean for the deviating source (source 0).
    WorldConfig truthful_config = config;
    truthful_config.strategies[0].script = ReportScript::truthful();
    truthful_config.strategies[0].effort = true;
    truthful_config.strategies[0].report_given_one = 1.0;
    truthful_config.strategies[0].report_given_zero = 0.0;
    const double truthful_mean = analytic_source_mean(truthful_config, 0);

    IncentiveSweepResult result;
    result.replications = replications;
    result.threshold = config.threshold;
    result.truthful_analytic = truthful_mean;

    for (double phi : flip_fractions) {
        WorldConfig cell_config = truthful_config;
        cell_config.strategies[0].script = ReportScript::flip(phi);
        const ReplicationDraws draws = draw_replications(cell_config, replications, options);

        SweepCell cell;
        cell.flip_fraction = phi;
        cell.score = summarize(draws.scores[0]);
        cell.analytic = (1.0 - 2.0 * phi) * truthful_mean;
        cell.inclusion_frequency = inclusion_frequency(draws.included[0]);
        result.cells.push_back(cell);
    }

    for (const SweepCell& cell : result.cells) {
        const double se = cell.score.se.value_or(0.0);
        result.checks.push_back({"analytic match at phi=" + std::to_string(cell.flip_fraction),
                                 std::abs(cell.score.mean - cell.analytic) <= 4.0 * se});
    }
    for (std::size_t c = 1; c < result.cells.size(); ++c) {
        const SweepCell& prev = result.cells[c - 1];
        const SweepCell& cur = result.cells[c];
        const double se = std::hypot(prev.score.se.value_or(0.0), cur.score.se.value_or(0.0));
        result.checks.push_back(
            {"monotone nonincreasing at phi=" + std::to_string(cur.flip_fraction),
             cur.score.mean <= prev.score.mean + 4.0 * se});
    }
    return result;
}

bool CollusionResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

CollusionResult collusion_experiment(const WorldConfig& config, std::size_t replications,
                                     const ReplicationOptions& options) {
    const std::size_t n = config.n_sources();
    std::vector<std::size_t> colluders;
    std::vector<std::size_t> truthful;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& script = config.strategies[i].script;
        if (script && script->kind == ScriptKind::Constant && is_polar(script->stance))
            colluders.push_back(i);
        else if (script && script->kind == ScriptKind::Truthful)
            truthful.push_back(i);
    }
    if (colluders.size() < 2)
        throw DataError("collusion experiment requires at least 2 constant-polar sources");
    if (truthful.empty())
        throw DataError("collusion experiment requires at least 1 truthful source");

    check_structure(config);
    if (config.n_claims < 3) throw DataError("need at least 3 claims");

    std::vector<std::vector<double>> tts_scores(n, std::vector<double>(replications, 0.0));
    std::vector<std::vector<double>> majority_scores(n, std::vector<double>(replications, 0.0));
    // Exact check accumulated per replication: peer components between two
    // constant-row sources must vanish identically.
    std::vector<std::uint8_t> constant_pair_zero(replications, 1);

    parallel_replications(replications, options.threads, [&](std::size_t r) {
        const WorldSample sample = sample_world(config, rng::mix(config.seed, 1, r));
        const ScoreReport report = score_all(sample.stances, rng::mix(config.seed, 2, r),
                                             config.threshold, config.reputation_weights);
        for (std::size_t i = 0; i < n; ++i) {
            tts_scores[i][r] = report.scores[i];
            majority_scores[i][r] = majority_score(sample.stances, i);
        }
        for (std::size_t a : colluders)
            for (std::size_t b : colluders)
                if (a != b && report.peer_components[a][b] != 0.0) constant_pair_zero[r] = 0;
    });

    const std::vector<std::string> names = config.source_names();
    CollusionResult result;
    result.replications = replications;
    result.threshold = config.threshold;
    for (std::size_t i = 0; i < n; ++i) {
        CollusionCell cell;
        cell.source_id = names[i];
        cell.role = std::find(colluders.begin(), colluders.end(), i) != colluders.end()
                        ? "colluder"
                        : (std::find(truthful.begin(), truthful.end(), i) != truthful.end()
                               ? "truthful"
                               : "other");
        cell.tts = summarize(tts_scores[i]);
        cell.majority = summarize(majority_scores[i]);
        result.sources.push_back(std::move(cell));
    }

    auto tts_mean = [&](std::size_t i) { return result.sources[i].tts.mean; };
    auto majority_mean = [&](std::size_t i) { return result.sources[i].majority.mean; };

    double min_truthful_tts = 1.0, max_colluder_tts = -1.0;
    double max_truthful_majority = 0.0, min_colluder_majority = 1.0;
    bool colluders_near_zero = true;
    for (std::size_t i : truthful) {
        min_truthful_tts = std::min(min_truthful_tts, tts_mean(i));
        max_truthful_majority = std::max(max_truthful_majority, majority_mean(i));
    }
    for (std::size_t i : colluders) {
        max_colluder_tts = std::max(max_colluder_tts, tts_mean(i));
        min_colluder_majority = std::min(min_colluder_majority, majority_mean(i));
        const double se = result.sources[i].tts.se.value_or(0.0);
        if (std::abs(tts_mean(i)) > 4.0 * se) colluders_near_zero = false;
    }

    result.checks.push_back(
        {"tts ordering: min(truthful) > max(colluders)", min_truthful_tts > max_colluder_tts});
    result.checks.push_back({"colluder tts scores within 4*SE of zero", colluders_near_zero});
    result.checks.push_back({"majority ordering: min(colluders) > max(truthful)",
                             min_colluder_majority > max_truthful_majority});
    result.checks.push_back(
        {"constant-vs-constant peer components identically zero",
         std::all_of(constant_pair_zero.begin(), constant_pair_zero.end(),
                     [](std::uint8_t b) { return b == 1; })});
    return result;
}

bool ConcentrationResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.passed; });
}

ConcentrationResult concentration_experiment(const WorldConfig& config,
                                             const std::vector<double>& deviations,
                                             std::size_t replications,
                                             const ReplicationOptions& options) {
    for (double t : deviations)
        if (!(t > 0.0)) throw DataError("deviation must be positive");

    const ReplicationDraws draws = draw_replications(config, replications, options);
    const double mean = analytic_source_mean(config, 0);

    ConcentrationResult result;
    result.replications = replications;
    result.n_claims = config.n_claims;
    result.analytic_mean = mean;
    for (double t : deviations) {
        std::size_t hits = 0;
        for (double score : draws.scores[0])
            if (std::abs(score - mean) >= t) ++hits;
        TailCell cell;
        cell.deviation = t;
        cell.empirical = static_cast<double>(hits) / static_cast<double>(replications);
        cell.se = std::sqrt(cell.empirical * (1.0 - cell.empirical) /
                            static_cast<double>(replications));
        cell.bound = mcdiarmid_tail(config.n_claims, t);
        result.cells.push_back(cell);
        result.checks.push_back({"tail within bound at t=" + std::to_string(t),
                                 cell.empirical <= cell.bound + 4.0 * cell.se});
    }
    return result;
}

} // namespace tts
