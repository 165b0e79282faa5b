#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tts/errors.hpp"
#include "tts/mechanism.hpp"
#include "tts/rng.hpp"

using namespace tts;

namespace {

StanceMatrix matrix_from(const std::vector<std::vector<Stance>>& rows) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back("src_" + std::to_string(i));
    return StanceMatrix::from_rows(std::move(ids), rows);
}

constexpr Stance S = Stance::Support;
constexpr Stance C = Stance::Contradict;
constexpr Stance A = Stance::Abstain;

StanceMatrix random_matrix(std::size_t n, std::size_t k, rng::Stream& stream) {
    std::vector<std::vector<Stance>> rows(n, std::vector<Stance>(k));
    for (auto& row : rows)
        for (auto& cell : row) {
            const auto draw = stream.uniform_below(3);
            cell = draw == 0 ? S : (draw == 1 ? C : A);
        }
    return matrix_from(rows);
}

bool offtask_ok(const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    for (std::size_t k = 0; k < n; ++k)
        if (perm[(k + 1) % n] == k || perm[(k + 2) % n] == k) return false;
    return true;
}

} // namespace

TEST_CASE("for K=3 the identity is the only admissible permutation") {
    // Enumerate all 6 permutations of {0,1,2} and check the constraint.
    std::vector<std::size_t> perm{0, 1, 2};
    std::size_t admissible = 0;
    std::vector<std::size_t> found;
    do {
        if (offtask_ok(perm)) {
            ++admissible;
            found = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(admissible == 1);
    CHECK(found == std::vector<std::size_t>{0, 1, 2});

    rng::Stream stream(99);
    const OffTaskPermutation sampled = sample_offtask_permutation(3, stream);
    CHECK(sampled.mapping() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("permutation sampling rejects K < 3 and is deterministic") {
    rng::Stream bad(1);
    CHECK_THROWS_WITH_AS(sample_offtask_permutation(2, bad), "need at least 3 claims", DataError);

    rng::Stream a(12345);
    rng::Stream b(12345);
    const auto p1 = sample_offtask_permutation(10, a);
    const auto p2 = sample_offtask_permutation(10, b);
    CHECK(p1.mapping() == p2.mapping());
    CHECK(offtask_ok(p1.mapping()));

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        rng::Stream s(seed);
        CHECK(offtask_ok(sample_offtask_permutation(8, s).mapping()));
    }
}

TEST_CASE("pair task score matches stances only when both are polar") {
    CHECK(pair_task_score(S, S) == 1);
    CHECK(pair_task_score(C, C) == 1);
    CHECK(pair_task_score(S, C) == 0);
    CHECK(pair_task_score(A, S) == 0);
    CHECK(pair_task_score(S, A) == 0);
    CHECK(pair_task_score(A, A) == 0);
}

TEST_CASE("pairwise claim score: hand-enumerated cases at K=3") {
    const auto perm = OffTaskPermutation::identity(3);

    // identical informative rows
    auto m = matrix_from({{S, C, S}, {S, C, S}});
    // k=1 (0-based): on-task S(C,C)=1, off-task S(r_i2, r_j0)=S(S,S)=1
    CHECK(pairwise_claim_score(m, 0, 1, 1, perm) == 0);

    // constant rows cancel on- and off-task
    auto all_support = matrix_from({{S, S, S}, {S, S, S}});
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(pairwise_claim_score(all_support, 0, 1, k, perm) == 0);

    // opposed rows: k=0 on-task S(S,C)=0, off-task S(r_i1, r_j2)=S(C,C)=1
    auto opposed = matrix_from({{S, C, S}, {C, S, C}});
    CHECK(pairwise_claim_score(opposed, 0, 1, 0, perm) == -1);

    CHECK_THROWS_AS(pairwise_claim_score(m, 0, 0, 0, perm), DataError);
}

TEST_CASE("peer average score: hand-enumerated cases") {
    const auto perm = OffTaskPermutation::identity(3);

    // on-task sum 3, off-task sum 1 -> 2/3
    auto m = matrix_from({{S, C, S}, {S, C, S}});
    CHECK(peer_average_score(m, 0, 1, perm) == doctest::Approx(2.0 / 3.0));

    auto constant = matrix_from({{C, C, C}, {C, C, C}});
    CHECK(peer_average_score(constant, 0, 1, perm) == doctest::Approx(0.0));

    auto abstainer = matrix_from({{S, C, S}, {A, A, A}});
    CHECK(peer_average_score(abstainer, 0, 1, perm) == doctest::Approx(0.0));
}

TEST_CASE("source score averages peers, with optional weights") {
    const auto perm = OffTaskPermutation::identity(3);
    auto m = matrix_from({{S, C, S}, {S, C, S}});
    CHECK(source_score(m, 0, perm) == doctest::Approx(peer_average_score(m, 0, 1, perm)));

    rng::Stream stream(5);
    auto big = random_matrix(4, 9, stream);
    rng::Stream ps(17);
    const auto perm9 = sample_offtask_permutation(9, ps);

    const double unweighted = source_score(big, 0, perm9);
    const double uniform = source_score(big, 0, perm9, std::vector<double>{0.7, 0.7, 0.7, 0.7});
    CHECK(std::abs(unweighted - uniform) <= 1e-12);

    // zero weight on peer 2 equals dropping it from the average
    const double zeroed = source_score(big, 0, perm9, std::vector<double>{1.0, 1.0, 0.0, 1.0});
    const double manual = (peer_average_score(big, 0, 1, perm9) +
                           peer_average_score(big, 0, 3, perm9)) /
                          2.0;
    CHECK(std::abs(zeroed - manual) <= 1e-12);

    CHECK_THROWS_AS(source_score(big, 0, perm9, std::vector<double>{0, 0, 0, 0}), DataError);
    auto single = matrix_from({{S, C, S}});
    CHECK_THROWS_AS(source_score(single, 0, perm), DataError);
}

TEST_CASE("score_all: identical informative rows both score 2/3 and pass t=0.06") {
    auto m = matrix_from({{S, C, S}, {S, C, S}});
    const ScoreReport report = score_all(m, 7, 0.06);
    CHECK(report.scores[0] == doctest::Approx(2.0 / 3.0));
    CHECK(report.scores[1] == doctest::Approx(2.0 / 3.0));
    CHECK(report.included[0]);
    CHECK(report.included[1]);
    // K=3 forces the identity permutation for every source
    CHECK(report.permutations[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(report.permutations[1] == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("score_all: all-abstain matrix scores zero, none included") {
    auto m = matrix_from({{A, A, A, A}, {A, A, A, A}, {A, A, A, A}});
    const ScoreReport report = score_all(m, 11, 0.06);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(report.scores[i] == doctest::Approx(0.0));
        CHECK_FALSE(report.included[i]);
    }
}

TEST_CASE("score_all: structural errors and determinism") {
    auto two_claims = matrix_from({{S, C}, {S, C}});
    CHECK_THROWS_WITH_AS(score_all(two_claims, 1, 0.06), "need at least 3 claims", DataError);

    rng::Stream stream(23);
    auto m = random_matrix(5, 12, stream);
    const ScoreReport a = score_all(m, 0, 0.06);
    const ScoreReport b = score_all(m, 0, 0.06);
    CHECK(a.scores == b.scores);
    CHECK(a.permutations == b.permutations);

    // report invariants: score is the mean of the peer components
    for (std::size_t i = 0; i < m.n_sources(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m.n_sources(); ++j) sum += a.peer_components[i][j];
        CHECK(a.scores[i] == doctest::Approx(sum / double(m.n_sources() - 1)).epsilon(1e-12));
        CHECK(a.scores[i] >= -1.0);
        CHECK(a.scores[i] <= 1.0);
    }
}

TEST_CASE("majority score: agreement with the peer mode, self excluded") {
    auto unanimous = matrix_from({{S, C, S}, {S, C, S}, {S, C, S}});
    CHECK(majority_score(unanimous, 0) == doctest::Approx(1.0));

    auto abstainers = matrix_from({{S, C, S}, {A, A, A}, {A, A, A}});
    CHECK(majority_score(abstainers, 0) == doctest::Approx(0.0));

    // scored source's own stance must not feed its mode
    auto self_heavy = matrix_from({{S, S, S}, {C, C, C}, {A, A, A}});
    CHECK(majority_score(self_heavy, 0) == doctest::Approx(0.0));
    CHECK(majority_score(self_heavy, 1) == doctest::Approx(0.0)); // peer mode is S, i says C

    // tie between one S and one C peer contributes nothing
    auto tie = matrix_from({{S, S, S}, {S, S, S}, {C, C, C}});
    CHECK(majority_score(tie, 0) == doctest::Approx(0.0));
}

TEST_CASE("majority and source scores stay in range on random matrices") {
    rng::Stream stream(31);
    for (int trial = 0; trial < 25; ++trial) {
        auto m = random_matrix(3 + stream.uniform_below(4), 3 + stream.uniform_below(10), stream);
        const ScoreReport report = score_all(m, trial, 0.06);
        for (std::size_t i = 0; i < m.n_sources(); ++i) {
            CHECK(report.scores[i] >= -1.0);
            CHECK(report.scores[i] <= 1.0);
            const double mj = majority_score(m, i);
            CHECK(mj >= 0.0);
            CHECK(mj <= 1.0);
        }
    }
}

TEST_CASE("hard threshold inclusion uses >= and rejects NaN") {
    CHECK(hard_threshold_include(0.08, 0.06));
    CHECK(hard_threshold_include(0.06, 0.06));
    CHECK_FALSE(hard_threshold_include(-0.1, 0.06));
    CHECK_THROWS_AS(hard_threshold_include(std::nan(""), 0.06), DataError);
}

TEST_CASE("affine inclusion clamps into [0,1] and flags it") {
    auto r = affine_inclusion_probability(0.0, 0.1, 1.0);
    CHECK(r.probability == doctest::Approx(0.1));
    CHECK_FALSE(r.clamped);

    r = affine_inclusion_probability(1.0, 0.5, 1.0);
    CHECK(r.probability == doctest::Approx(1.0));
    CHECK(r.clamped);

    r = affine_inclusion_probability(0.2, 0.0, 2.0);
    CHECK(r.probability == doctest::Approx(0.4));
    CHECK_FALSE(r.clamped);

    CHECK_THROWS_AS(affine_inclusion_probability(0.0, -0.1, 1.0), DataError);
    CHECK_THROWS_AS(affine_inclusion_probability(0.0, 0.1, -1.0), DataError);
}

TEST_CASE("midpoint threshold and expected utility") {
    CHECK(midpoint_threshold(0.2, 0.0) == doctest::Approx(0.1));
    CHECK(midpoint_threshold(0.096, 0.0384) == doctest::Approx(0.0672));
    CHECK_THROWS_WITH_AS(midpoint_threshold(0.1, 0.1),
                         "midpoint_threshold: no separation between means", DataError);

    CHECK(expected_utility(1.0, 1.0, 0.3, true) == doctest::Approx(0.7));
    CHECK(expected_utility(0.0, 1.0, 0.0, false) == doctest::Approx(0.0));
    CHECK(expected_utility(0.5, 2.0, 0.5, true) == doctest::Approx(0.5));
    CHECK_THROWS_AS(expected_utility(1.2, 1.0, 0.0, false), DataError);
}

TEST_CASE("constant-row collusion cancels exactly") {
    rng::Stream stream(77);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t k_count = 3 + stream.uniform_below(10);
        std::vector<std::vector<Stance>> rows;
        rows.push_back(std::vector<Stance>(k_count, C));
        rows.push_back(std::vector<Stance>(k_count, C));
        rows.push_back(std::vector<Stance>(k_count, S));
        auto extra = random_matrix(1, k_count, stream);
        std::vector<Stance> random_row(k_count);
        for (std::size_t k = 0; k < k_count; ++k) random_row[k] = extra.at(0, k);
        rows.push_back(random_row);
        auto m = matrix_from(rows);

        rng::Stream ps(trial);
        const auto perm = sample_offtask_permutation(k_count, ps);
        CHECK(peer_average_score(m, 0, 1, perm) == 0.0); // same constant
        CHECK(peer_average_score(m, 0, 2, perm) == 0.0); // opposite constants
        CHECK(peer_average_score(m, 2, 0, perm) == 0.0);
    }
}

TEST_CASE("single-column perturbations move scores by at most 3/K") {
    rng::Stream stream(123);
    for (std::size_t k_count = 3; k_count <= 12; ++k_count) {
        for (int trial = 0; trial < 10; ++trial) {
            auto m = random_matrix(5, k_count, stream);
            rng::Stream ps(rng::mix(9, k_count, trial));
            const auto perm = sample_offtask_permutation(k_count, ps);

            std::vector<double> base(5);
            for (std::size_t i = 0; i < 5; ++i) base[i] = source_score(m, i, perm);

            for (std::size_t col = 0; col < k_count; ++col) {
                auto perturbed = m;
                for (std::size_t i = 0; i < 5; ++i) {
                    const auto draw = stream.uniform_below(3);
                    perturbed.set(i, col, draw == 0 ? S : (draw == 1 ? C : A));
                }
                for (std::size_t i = 0; i < 5; ++i) {
                    const double moved = source_score(perturbed, i, perm);
                    CHECK(std::abs(moved - base[i]) <= 3.0 / double(k_count) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("score expectation is insensitive to the permutation sample") {
    rng::Stream stream(2024);
    auto m = random_matrix(4, 10, stream);

    auto sample_mean = [&](std::uint64_t seed) {
        double sum = 0.0, sumsq = 0.0;
        const int reps = 1000;
        for (int r = 0; r < reps; ++r) {
            rng::Stream ps(rng::mix(seed, r));
            const auto perm = sample_offtask_permutation(10, ps);
            const double w = source_score(m, 0, perm);
            sum += w;
            sumsq += w * w;
        }
        const double mean = sum / reps;
        const double var = (sumsq - reps * mean * mean) / (reps - 1);
        return std::pair<double, double>(mean, std::sqrt(var / reps));
    };

    const auto [mean_a, se_a] = sample_mean(1);
    const auto [mean_b, se_b] = sample_mean(2);
    CHECK(std::abs(mean_a - mean_b) <= 3.0 * std::hypot(se_a, se_b) + 1e-9);
}
