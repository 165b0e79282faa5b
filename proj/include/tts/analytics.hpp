#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace tts {

// A parameter that is either one scalar (homogeneous across claims) or a
// per-claim list. Scalars broadcast, so the homogeneous and heterogeneous
// calculators share one code path.
class ClaimSeries {
public:
    ClaimSeries(double scalar) : scalar_(scalar) {} // NOLINT: implicit by design
    ClaimSeries(std::vector<double> per_claim) : values_(std::move(per_claim)) {}

    bool is_scalar() const { return values_.empty(); }
    std::size_t length() const { return values_.size(); } // 0 when scalar
    double at(std::size_t k) const { return values_.empty() ? scalar_ : values_[k]; }

private:
    double scalar_ = 0.0;
    std::vector<double> values_;
};

struct PeerParams {
    ClaimSeries coverage;        // alpha_jk
    ClaimSeries informativeness; // eta_jk
};

// Inputs to the expected-score calculators: class prior, the scored source's
// coverage/informativeness (scalar or per-claim), and the peer pool.
struct ExpectedScoreParams {
    double prior = 0.5;
    std::size_t n_claims = 0;
    ClaimSeries coverage_i{1.0};
    ClaimSeries informativeness_i{0.0};
    std::vector<PeerParams> peers;
};

// E[sigma_bar_ij] = (1/K) sum_k 2 pi (1-pi) alpha_ik alpha_jk eta_ik eta_jk.
double expected_pair_score(const ExpectedScoreParams& params, std::size_t peer_index);

// E[w_hat_i]: (weighted) peer mean of expected_pair_score. Weights align with
// the peers vector.
double expected_source_score(const ExpectedScoreParams& params,
                             const std::optional<std::vector<double>>& weights = std::nullopt);

// Two-sided concentration bound min(1, 2*exp(-2*K*t^2/9)).
double mcdiarmid_tail(std::size_t n_claims, double deviation);

// Bounded-differences constant 3/K for a single claim block change.
double lipschitz_delta(std::size_t n_claims);

// Smallest K making the mechanism epsilon-informed truthful:
// ceil(max{ 9/(2 g^2) ln(2v/eps), 9/(2 m^2) ln(2/(1 - c/v)) }).
long long min_claims(double gap, double margin, double value, double cost, double epsilon);

// g = phi_min * alpha_i * eta_truth * gamma, the per-side buffer between the
// truthful mean and any deviation flipping at least a phi_min fraction.
double gap_lower_bound(double phi_min, double coverage, double informativeness_truth,
                       double gamma);

// Strict dominance condition for the affine inclusion rule:
// v * b * alpha_i * gamma * eta_truth > c.
bool affine_dominance_check(double value, double slope, double coverage, double gamma,
                            double informativeness_truth, double cost);

} // namespace tts
