#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tts/strategy.hpp"

namespace tts {

// Default seed used by the CLI and fixtures whenever none is supplied.
inline constexpr std::uint64_t kDefaultSeed = 1729;

// Default hard inclusion threshold.
inline constexpr double kDefaultThreshold = 0.06;

using ClaimMatrix = std::vector<std::vector<double>>; // n_sources x n_claims

// Full parameterization of a synthetic world: class prior, claim count,
// per-source strategies, optional per-claim peer parameter matrices, inclusion
// economics, optional reputation weights, and the master seed.
struct WorldConfig {
    double prior = 0.5; // pi
    std::size_t n_claims = 0;
    std::vector<SourceStrategy> strategies;
    std::optional<ClaimMatrix> peer_coverage;        // alpha_jk; defaults to scalar coverage
    std::optional<ClaimMatrix> peer_informativeness; // eta_jk; switches on per-claim sampling
    std::vector<double> value_of_inclusion;          // v_i; broadcast to 1.0 when empty
    std::vector<double> effort_cost;                 // c_i; broadcast to 0.0 when empty
    std::optional<std::vector<double>> reputation_weights; // omega_j in [0,1]
    double threshold = kDefaultThreshold; // t_src used for inclusion frequencies
    std::uint64_t seed = kDefaultSeed;

    std::size_t n_sources() const { return strategies.size(); }
    std::vector<std::string> source_names() const;
    double value_for(std::size_t i) const;
    double cost_for(std::size_t i) const;

    // Effective per-claim peer parameters (matrix entry when present, else the
    // strategy scalar). No bounds checking beyond vector access.
    double coverage_at(std::size_t source, std::size_t claim) const;
    double informativeness_at(std::size_t source, std::size_t claim) const;
};

// Outcome of checking a config against the model's structural assumptions.
// Advisory: experiments may run under violated assumptions; only structural
// errors (shapes, K < 3) stop a scoring call.
struct ValidationReport {
    std::vector<std::string> violations;
    double margin_gamma = 0.0; // min over scored sources of the average peer margin
    bool ok() const { return violations.empty(); }
};

// Pure check: reports every violation, computes the peer margin gamma
// (min over scored sources i of (1/K) sum_k 2*pi*(1-pi)*Gamma_i(k) with
// Gamma_i(k) the peer mean of alpha_jk * eta_jk). Never throws.
ValidationReport validate_config(const WorldConfig& config);

} // namespace tts
