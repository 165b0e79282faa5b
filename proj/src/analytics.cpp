#include "tts/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "tts/errors.hpp"

namespace tts {

namespace {

void check_series(const ClaimSeries& series, std::size_t n_claims, double lo, double hi,
                  const char* name) {
    if (!series.is_scalar() && series.length() != n_claims)
        throw DataError(std::string(name) + ": per-claim list length does not match n_claims");
    for (std::size_t k = 0; k < (series.is_scalar() ? 1 : n_claims); ++k) {
        const double v = series.at(k);
        if (!(v >= lo && v <= hi))
            throw DataError(std::string(name) + ": entry outside [" + std::to_string(lo) +
                            "," + std::to_string(hi) + "]");
    }
}

void check_params(const ExpectedScoreParams& params) {
    if (!(params.prior > 0.0 && params.prior < 1.0))
        throw DataError("expected score: prior must lie in (0,1)");
    if (params.n_claims == 0) throw DataError("expected score: n_claims must be positive");
    check_series(params.coverage_i, params.n_claims, 0.0, 1.0, "coverage_i");
    check_series(params.informativeness_i, params.n_claims, -1.0, 1.0, "informativeness_i");
    for (const PeerParams& peer : params.peers) {
        check_series(peer.coverage, params.n_claims, 0.0, 1.0, "peer coverage");
        check_series(peer.informativeness, params.n_claims, -1.0, 1.0, "peer informativeness");
    }
}

} // namespace

double expected_pair_score(const ExpectedScoreParams& params, std::size_t peer_index) {
    check_params(params);
    if (peer_index >= params.peers.size())
        throw DataError("expected_pair_score: peer index out of range");
    const PeerParams& peer = params.peers[peer_index];
    const double prevalence = 2.0 * params.prior * (1.0 - params.prior);
    double sum = 0.0;
    for (std::size_t k = 0; k < params.n_claims; ++k) {
        sum += prevalence * params.coverage_i.at(k) * peer.coverage.at(k) *
               params.informativeness_i.at(k) * peer.informativeness.at(k);
    }
    return sum / static_cast<double>(params.n_claims);
}

double expected_source_score(const ExpectedScoreParams& params,
                             const std::optional<std::vector<double>>& weights) {
    if (params.peers.empty()) throw DataError("expected_source_score: no peers");
    if (weights && weights->size() != params.peers.size())
        throw DataError("expected_source_score: weights must align with peers");
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t j = 0; j < params.peers.size(); ++j) {
        const double w = weights ? (*weights)[j] : 1.0;
        if (w == 0.0) continue;
        numerator += w * expected_pair_score(params, j);
        denominator += w;
    }
    if (denominator == 0.0) throw DataError("expected_source_score: weights sum to zero");
    return numerator / denominator;
}

double mcdiarmid_tail(std::size_t n_claims, double deviation) {
    if (n_claims < 1) throw DataError("mcdiarmid_tail: K must be at least 1");
    if (!(deviation > 0.0)) throw DataError("mcdiarmid_tail: deviation must be positive");
    const double bound =
        2.0 * std::exp(-2.0 * static_cast<double>(n_claims) * deviation * deviation / 9.0);
    return bound > 1.0 ? 1.0 : bound;
}

double lipschitz_delta(std::size_t n_claims) {
    if (n_claims < 3) throw DataError("lipschitz_delta: K must be at least 3");
    return 3.0 / static_cast<double>(n_claims);
}

long long min_claims(double gap, double margin, double value, double cost, double epsilon) {
    if (!(gap > 0.0)) throw DataError("min_claims: gap must be positive");
    if (!(margin > 0.0)) throw DataError("min_claims: margin must be positive");
    if (!(value > 0.0)) throw DataError("min_claims: value must be positive");
    if (!(cost >= 0.0 && cost < value))
        throw DataError("min_claims: cost must satisfy 0 <= c < v");
    if (!(epsilon > 0.0 && epsilon < value))
        throw DataError("min_claims: epsilon must satisfy 0 < eps < v");
    const double informed_term = 9.0 / (2.0 * gap * gap) * std::log(2.0 * value / epsilon);
    const double uninformed_term =
        9.0 / (2.0 * margin * margin) * std::log(2.0 / (1.0 - cost / value));
    return static_cast<long long>(std::ceil(std::max(informed_term, uninformed_term)));
}

double gap_lower_bound(double phi_min, double coverage, double informativeness_truth,
                       double gamma) {
    if (!(phi_min > 0.0 && phi_min <= 0.5))
        throw DataError("gap_lower_bound: phi_min must lie in (0,0.5]");
    if (!(coverage > 0.0)) throw DataError("gap_lower_bound: coverage must be positive");
    if (!(informativeness_truth > 0.0))
        throw DataError("gap_lower_bound: truthful informativeness must be positive");
    if (!(gamma > 0.0)) throw DataError("gap_lower_bound: gamma must be positive");
    return phi_min * coverage * informativeness_truth * gamma;
}

bool affine_dominance_check(double value, double slope, double coverage, double gamma,
                            double informativeness_truth, double cost) {
    if (value < 0.0 || slope < 0.0 || coverage < 0.0 || gamma < 0.0 ||
        informativeness_truth < 0.0 || cost < 0.0)
        throw DataError("affine_dominance_check: inputs must be nonnegative");
    return value * slope * coverage * gamma * informativeness_truth > cost;
}

} // namespace tts
