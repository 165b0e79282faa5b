#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "tts/analytics.hpp"
#include "tts/errors.hpp"
#include "tts/rng.hpp"

using namespace tts;

namespace {

ExpectedScoreParams homogeneous(double prior, double alpha_i, double eta_i, double alpha_j,
                                double eta_j, std::size_t peers = 1, std::size_t k = 10) {
    ExpectedScoreParams params{prior, k, ClaimSeries(alpha_i), ClaimSeries(eta_i), {}};
    for (std::size_t p = 0; p < peers; ++p)
        params.peers.push_back({ClaimSeries(alpha_j), ClaimSeries(eta_j)});
    return params;
}

} // namespace

TEST_CASE("expected pair score: closed form against the enumeration oracle") {
    // pi=0.5, perfect coverage and informativeness -> 2 * 0.25 = 0.5
    auto params = homogeneous(0.5, 1.0, 1.0, 1.0, 1.0);
    CHECK(expected_pair_score(params, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(oracle::expected_pair_score(0.5, oracle::truthful_agent(1.0, 1.0),
                                      oracle::truthful_agent(1.0, 1.0)) ==
          doctest::Approx(0.5).epsilon(1e-9));

    // uninformative scored source
    params = homogeneous(0.5, 1.0, 0.0, 1.0, 1.0);
    CHECK(expected_pair_score(params, 0) == doctest::Approx(0.0));

    // pi=0.5, alpha=0.8 both, eta_i=0.6, eta_j=0.5 -> 0.5*0.64*0.3 = 0.096
    params = homogeneous(0.5, 0.8, 0.6, 0.8, 0.5);
    CHECK(expected_pair_score(params, 0) == doctest::Approx(0.096).epsilon(1e-12));
    CHECK(oracle::expected_pair_score(0.5, oracle::truthful_agent(0.6, 0.8),
                                      oracle::truthful_agent(0.5, 0.8)) ==
          doctest::Approx(0.096).epsilon(1e-9));

    // random spot checks, asymmetric priors included
    rng::Stream stream(3);
    for (int trial = 0; trial < 12; ++trial) {
        const double prior = 0.15 + 0.7 * stream.uniform01();
        const double ai = stream.uniform01();
        const double aj = stream.uniform01();
        const double ei = 2.0 * stream.uniform01() - 1.0;
        const double ej = 2.0 * stream.uniform01() - 1.0;
        params = homogeneous(prior, ai, ei, aj, ej);
        const double closed = expected_pair_score(params, 0);
        const double enumerated = oracle::expected_pair_score(
            prior, oracle::truthful_agent(ei, ai), oracle::truthful_agent(ej, aj));
        CHECK(closed == doctest::Approx(enumerated).epsilon(1e-9));
    }
}

TEST_CASE("expected source score averages peers and honors weights") {
    auto params = homogeneous(0.5, 1.0, 0.8, 1.0, 1.0, 1);
    CHECK(expected_source_score(params) == doctest::Approx(expected_pair_score(params, 0)));

    // peers with opposite margins cancel
    ExpectedScoreParams cancel{0.5, 10, ClaimSeries(1.0), ClaimSeries(0.8), {}};
    cancel.peers.push_back({ClaimSeries(1.0), ClaimSeries(0.5)});
    cancel.peers.push_back({ClaimSeries(1.0), ClaimSeries(-0.5)});
    CHECK(expected_source_score(cancel) == doctest::Approx(0.0));

    // 3 perfect peers, eta_i = 0.8 -> 0.5 * 0.8 = 0.4
    auto three = homogeneous(0.5, 1.0, 0.8, 1.0, 1.0, 3);
    CHECK(expected_source_score(three) == doctest::Approx(0.4).epsilon(1e-12));

    // weights: zeroing the negative peer leaves the positive one
    CHECK(expected_source_score(cancel, std::vector<double>{1.0, 0.0}) ==
          doctest::Approx(expected_pair_score(cancel, 0)));
    CHECK_THROWS_AS(expected_source_score(cancel, std::vector<double>{0.0, 0.0}), DataError);
}

TEST_CASE("expected score is linear in the scored informativeness") {
    rng::Stream stream(8);
    for (int trial = 0; trial < 10; ++trial) {
        const double eta = 2.0 * stream.uniform01() - 1.0;
        const double lambda = stream.uniform01();
        auto base = homogeneous(0.4, 0.9, eta, 0.7, 0.6, 2);
        auto scaled = homogeneous(0.4, 0.9, lambda * eta, 0.7, 0.6, 2);
        CHECK(expected_source_score(scaled) ==
              doctest::Approx(lambda * expected_source_score(base)).epsilon(1e-12));
    }
}

TEST_CASE("flip attenuation: flipping a phi fraction scales the mean by 1-2phi") {
    for (double phi : {0.0, 0.1, 0.25, 0.4, 0.5}) {
        // post-signal symmetric flip is the reporting rule (q1, q0) = (1-phi, phi)
        oracle::Agent flipper{0.9, 0.95, 0.15, 1.0 - phi, phi};
        oracle::Agent peer = oracle::truthful_agent(0.7, 0.8);
        const double flipped = oracle::expected_pair_score(0.45, flipper, peer);
        oracle::Agent honest{0.9, 0.95, 0.15, 1.0, 0.0};
        const double truthful = oracle::expected_pair_score(0.45, honest, peer);
        CHECK(flipped == doctest::Approx((1.0 - 2.0 * phi) * truthful).epsilon(1e-9));
    }
}

TEST_CASE("heterogeneous per-claim lists reduce to the scalar formula") {
    const std::size_t k = 7;
    std::vector<double> alpha_i(k, 0.8), eta_i(k, 0.6), alpha_j(k, 0.9), eta_j(k, 0.5);
    ExpectedScoreParams het{0.35, k, ClaimSeries(alpha_i), ClaimSeries(eta_i), {}};
    het.peers.push_back({ClaimSeries(alpha_j), ClaimSeries(eta_j)});
    auto hom = homogeneous(0.35, 0.8, 0.6, 0.9, 0.5, 1, k);
    CHECK(expected_pair_score(het, 0) ==
          doctest::Approx(expected_pair_score(hom, 0)).epsilon(1e-12));

    // genuinely per-claim values match a direct average
    std::vector<double> varying{0.1, 0.9, 0.4, 0.6, 0.2, 0.8, 0.5};
    ExpectedScoreParams mixed{0.5, k, ClaimSeries(1.0), ClaimSeries(varying), {}};
    mixed.peers.push_back({ClaimSeries(1.0), ClaimSeries(1.0)});
    double manual = 0.0;
    for (double e : varying) manual += 0.5 * e;
    manual /= double(k);
    CHECK(expected_pair_score(mixed, 0) == doctest::Approx(manual).epsilon(1e-12));

    std::vector<double> short_list{0.5, 0.5};
    ExpectedScoreParams bad{0.5, k, ClaimSeries(1.0), ClaimSeries(short_list), {}};
    bad.peers.push_back({ClaimSeries(1.0), ClaimSeries(1.0)});
    CHECK_THROWS_AS(expected_pair_score(bad, 0), DataError);
}

TEST_CASE("mcdiarmid tail bound") {
    // K=100, t=0.3 -> 2 exp(-2) = 0.27067056647322540...
    CHECK(mcdiarmid_tail(100, 0.3) == doctest::Approx(0.2706705664732254).epsilon(1e-9));
    CHECK(mcdiarmid_tail(10, 5.0) == doctest::Approx(1.0)); // clamped
    CHECK_THROWS_AS(mcdiarmid_tail(100, 0.0), DataError);
    CHECK_THROWS_AS(mcdiarmid_tail(0, 0.1), DataError);

    // doubling K squares then doubles the unclamped bound
    rng::Stream stream(4);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t k = 50 + stream.uniform_below(200);
        const double t = 0.2 + 0.3 * stream.uniform01();
        const double b1 = mcdiarmid_tail(k, t);
        const double b2 = mcdiarmid_tail(2 * k, t);
        if (b1 < 1.0 && b2 < 1.0)
            CHECK(b2 == doctest::Approx(b1 * b1 / 2.0).epsilon(1e-9));
    }
}

TEST_CASE("lipschitz delta is 3/K") {
    CHECK(lipschitz_delta(3) == doctest::Approx(1.0));
    CHECK(lipschitz_delta(30) == doctest::Approx(0.1));
    CHECK(lipschitz_delta(300) == doctest::Approx(0.01));
    CHECK_THROWS_AS(lipschitz_delta(2), DataError);
}

TEST_CASE("min_claims: worked example and monotonicity") {
    // 450*ln(200) = 2384.236... -> 2385, dominating 450*ln(4) = 623.83...
    CHECK(min_claims(0.1, 0.1, 1.0, 0.5, 0.01) == 2385);
    {
        // independent arithmetic at long double precision
        const long double informed = 9.0L / (2.0L * 0.01L) * std::log(200.0L);
        const long double uninformed = 9.0L / (2.0L * 0.01L) * std::log(4.0L);
        CHECK(static_cast<long long>(std::ceil(std::max(informed, uninformed))) == 2385);
    }

    CHECK_THROWS_AS(min_claims(0.1, 0.1, 1.0, 0.0, 1.0), DataError); // eps >= v
    CHECK_THROWS_AS(min_claims(0.0, 0.1, 1.0, 0.0, 0.1), DataError);
    CHECK_THROWS_AS(min_claims(0.1, 0.1, 1.0, 1.0, 0.1), DataError); // c >= v

    const long long base = min_claims(0.1, 0.1, 1.0, 0.5, 0.01);
    CHECK(min_claims(0.2, 0.1, 1.0, 0.5, 0.01) <= base);  // larger gap
    CHECK(min_claims(0.1, 0.2, 1.0, 0.5, 0.01) <= base);  // larger margin
    CHECK(min_claims(0.1, 0.1, 1.0, 0.5, 0.05) <= base);  // looser epsilon
    CHECK(min_claims(0.1, 0.1, 2.0, 0.5, 0.01) >= base);  // higher value
    CHECK(min_claims(0.1, 0.1, 1.0, 0.9, 0.01) >= base);  // higher cost
}

TEST_CASE("gap lower bound is the four-factor product") {
    CHECK(gap_lower_bound(0.5, 1.0, 1.0, 0.5) == doctest::Approx(0.25));
    CHECK(gap_lower_bound(0.1, 0.8, 0.6, 0.2) == doctest::Approx(0.0096).epsilon(1e-12));
    CHECK_THROWS_AS(gap_lower_bound(0.0, 1.0, 1.0, 0.5), DataError);
}

TEST_CASE("affine dominance condition") {
    CHECK(affine_dominance_check(1.0, 1.0, 1.0, 0.5, 1.0, 0.3));
    CHECK_FALSE(affine_dominance_check(1.0, 0.0, 1.0, 0.5, 1.0, 0.3)); // zero slope
    CHECK_FALSE(affine_dominance_check(1.0, 1.0, 1.0, 0.5, 1.0, 0.5)); // boundary is strict
    CHECK_THROWS_AS(affine_dominance_check(-1.0, 1.0, 1.0, 0.5, 1.0, 0.3), DataError);
}
