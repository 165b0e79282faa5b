#include "tts/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tts {

std::vector<std::string> WorldConfig::source_names() const {
    std::vector<std::string> names;
    names.reserve(strategies.size());
    for (std::size_t i = 0; i < strategies.size(); ++i)
        names.push_back(strategies[i].name.empty() ? "src_" + std::to_string(i)
                                                   : strategies[i].name);
    return names;
}

double WorldConfig::value_for(std::size_t i) const {
    if (value_of_inclusion.empty()) return 1.0;
    return value_of_inclusion[value_of_inclusion.size() == 1 ? 0 : i];
}

double WorldConfig::cost_for(std::size_t i) const {
    if (effort_cost.empty()) return 0.0;
    return effort_cost[effort_cost.size() == 1 ? 0 : i];
}

double WorldConfig::coverage_at(std::size_t source, std::size_t claim) const {
    if (peer_coverage) return (*peer_coverage)[source][claim];
    return strategies[source].coverage;
}

double WorldConfig::informativeness_at(std::size_t source, std::size_t claim) const {
    if (peer_informativeness) return (*peer_informativeness)[source][claim];
    return policy_informativeness(strategies[source]);
}

namespace {

bool matrix_shape_ok(const ClaimMatrix& m, std::size_t rows, std::size_t cols) {
    if (m.size() != rows) return false;
    return std::all_of(m.begin(), m.end(),
                       [cols](const std::vector<double>& r) { return r.size() == cols; });
}

bool matrix_entries_within(const ClaimMatrix& m, double lo, double hi) {
    for (const auto& row : m)
        for (double v : row)
            if (!(v >= lo && v <= hi)) return false;
    return true;
}

} // namespace

ValidationReport validate_config(const WorldConfig& config) {
    ValidationReport report;
    auto flag = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    const std::size_t n = config.n_sources();
    const std::size_t K = config.n_claims;

    if (n < 2) flag("at least 2 sources required (scoring needs a peer)");
    if (K < 3) flag("n_claims must be at least 3");
    if (!(config.prior > 0.0 && config.prior < 1.0))
        flag("prior must lie strictly inside (0,1)");

    for (std::size_t i = 0; i < n; ++i)
        for (auto& v : strategy_violations(config.strategies[i], i)) flag(std::move(v));

    bool coverage_matrix_usable = false;
    if (config.peer_coverage) {
        if (!matrix_shape_ok(*config.peer_coverage, n, K))
            flag("peer_coverage matrix must have shape n_sources x n_claims");
        else if (!matrix_entries_within(*config.peer_coverage, 0.0, 1.0))
            flag("peer_coverage entries must lie in [0,1]");
        else
            coverage_matrix_usable = true;
    }
    bool informativeness_matrix_usable = false;
    if (config.peer_informativeness) {
        if (!matrix_shape_ok(*config.peer_informativeness, n, K))
            flag("peer_informativeness matrix must have shape n_sources x n_claims");
        else if (!matrix_entries_within(*config.peer_informativeness, -1.0, 1.0))
            flag("peer_informativeness entries must lie in [-1,1]");
        else
            informativeness_matrix_usable = true;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!(config.value_for(i) > config.cost_for(i)))
            flag("source " + std::to_string(i) + ": v_i > c_i required");
    }
    if (!config.value_of_inclusion.empty() && config.value_of_inclusion.size() != 1 &&
        config.value_of_inclusion.size() != n)
        flag("value_of_inclusion must be scalar or length n_sources");
    if (!config.effort_cost.empty() && config.effort_cost.size() != 1 &&
        config.effort_cost.size() != n)
        flag("effort_cost must be scalar or length n_sources");
    if (config.reputation_weights) {
        if (config.reputation_weights->size() != n)
            flag("reputation_weights must have length n_sources");
        else
            for (double w : *config.reputation_weights)
                if (!(w >= 0.0 && w <= 1.0)) {
                    flag("reputation_weights entries must lie in [0,1]");
                    break;
                }
    }

    // A3 margin, computed from whatever parameters are well-formed. Malformed
    // matrices fall back to the scalar strategy parameters.
    double gamma = 0.0;
    if (n >= 2 && K >= 1) {
        const double prevalence = 2.0 * config.prior * (1.0 - config.prior);
        gamma = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double sum_over_claims = 0.0;
            for (std::size_t k = 0; k < K; ++k) {
                double peer_sum = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const double alpha = coverage_matrix_usable
                                             ? (*config.peer_coverage)[j][k]
                                             : config.strategies[j].coverage;
                    const double eta = informativeness_matrix_usable
                                           ? (*config.peer_informativeness)[j][k]
                                           : policy_informativeness(config.strategies[j]);
                    peer_sum += alpha * eta;
                }
                sum_over_claims += prevalence * peer_sum / static_cast<double>(n - 1);
            }
            gamma = std::min(gamma, sum_over_claims / static_cast<double>(K));
        }
    }
    report.margin_gamma = std::isfinite(gamma) ? gamma : 0.0;
    if (!(report.margin_gamma > 0.0)) flag("A3 margin nonpositive");

    return report;
}

} // namespace tts
