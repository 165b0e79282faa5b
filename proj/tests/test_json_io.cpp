#include <doctest.h>

#include "tts/errors.hpp"
#include "tts/json_io.hpp"

using namespace tts;

TEST_CASE("world config round-trips through JSON") {
    WorldConfig config;
    config.prior = 0.4;
    config.n_claims = 12;
    config.seed = 99;
    config.threshold = 0.05;
    config.strategies.push_back(SourceStrategy::truthful(0.9, 0.1, 0.8, "t1"));
    config.strategies.push_back(SourceStrategy::constant(Stance::Contradict, 1.0, "c1"));
    config.strategies.push_back(SourceStrategy::flip(0.2, 0.85, 0.15));
    config.strategies.push_back(SourceStrategy::uninformed_random(0.6));
    config.value_of_inclusion = {1.0, 2.0, 1.5, 1.0};
    config.effort_cost = {0.1};
    config.reputation_weights = std::vector<double>{1.0, 0.5, 1.0, 0.0};
    config.peer_coverage = ClaimMatrix(4, std::vector<double>(12, 0.9));

    const WorldConfig back = world_config_from_json(world_config_to_json(config));
    CHECK(back.prior == config.prior);
    CHECK(back.n_claims == config.n_claims);
    CHECK(back.seed == config.seed);
    CHECK(back.threshold == config.threshold);
    CHECK(back.strategies.size() == 4);
    CHECK(back.strategies[0].name == "t1");
    CHECK(back.strategies[1].script->kind == ScriptKind::Constant);
    CHECK(back.strategies[1].script->stance == Stance::Contradict);
    CHECK(back.strategies[2].script->flip_fraction == 0.2);
    CHECK(back.strategies[3].script->kind == ScriptKind::UninformedRandom);
    CHECK(back.value_of_inclusion == config.value_of_inclusion);
    CHECK(*back.reputation_weights == *config.reputation_weights);
    CHECK(*back.peer_coverage == *config.peer_coverage);

    CHECK_THROWS_AS(world_config_from_json(nlohmann::json{{"prior", 0.5}}), DataError);
}

TEST_CASE("stance matrix JSON uses the pinned schema") {
    StanceMatrix matrix({"a", "b"}, 3);
    matrix.set(0, 0, Stance::Support);
    matrix.set(0, 1, Stance::Contradict);
    matrix.set(1, 2, Stance::Support);

    const nlohmann::json j = stance_matrix_to_json(matrix);
    CHECK(j["source_ids"] == nlohmann::json::array({"a", "b"}));
    CHECK(j["claims"] == 3);
    CHECK(j["rows"][0] == nlohmann::json::array({"support", "contradict", "abstain"}));

    const StanceMatrix back = stance_matrix_from_json(j);
    CHECK(back == matrix);

    nlohmann::json mismatched = j;
    mismatched["claims"] = 5;
    CHECK_THROWS_AS(stance_matrix_from_json(mismatched), DataError);

    nlohmann::json ragged = j;
    ragged["rows"][1] = nlohmann::json::array({"support"});
    CHECK_THROWS_AS(stance_matrix_from_json(ragged), DataError);
}

TEST_CASE("score report JSON carries scores, inclusion, components, permutations") {
    StanceMatrix matrix({"a", "b"}, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        matrix.set(0, k, k == 1 ? Stance::Contradict : Stance::Support);
        matrix.set(1, k, k == 1 ? Stance::Contradict : Stance::Support);
    }
    const ScoreReport report = score_all(matrix, 1, 0.06);
    const nlohmann::json j = score_report_to_json(report);
    CHECK(j["threshold"] == 0.06);
    CHECK(j["scores"].contains("a"));
    CHECK(j["included"]["a"] == true);
    CHECK(j["peer_components"]["a"].contains("b"));
    CHECK_FALSE(j["peer_components"]["a"].contains("a"));
    // 1-based permutation serialization
    CHECK(j["permutations"]["a"] == nlohmann::json::array({1, 2, 3}));
}

TEST_CASE("document pool and provider config loaders validate their input") {
    const nlohmann::json pool_json{
        {"query", "q"},
        {"documents",
         {{{"source_id", "s1"}, {"text", "body"}, {"role", "truthful"}},
          {{"source_id", "s2"}, {"text", "body2"}}}}};
    const DocumentPool pool = document_pool_from_json(pool_json);
    CHECK(pool.query == "q");
    CHECK(pool.documents.size() == 2);
    CHECK(pool.documents[0].role == "truthful");

    CHECK_THROWS_AS(document_pool_from_json(nlohmann::json{{"query", "q"}}), DataError);

    const ProviderConfig mock = provider_config_from_json(nlohmann::json{{"provider", "mock"}});
    CHECK(mock.kind == "mock");
    const ProviderConfig http = provider_config_from_json(
        nlohmann::json{{"provider", "http"},
                       {"base_url", "http://localhost:1"},
                       {"model", "m"},
                       {"credential_env", "KEY"}});
    CHECK(http.http.base_url == "http://localhost:1");
    CHECK(http.http.credential_env == "KEY");
    CHECK_THROWS_AS(provider_config_from_json(nlohmann::json{{"provider", "carrier-pigeon"}}),
                    DataError);
}

TEST_CASE("experiment CSV schemas are pinned") {
    ReplicateResult rep;
    rep.replications = 5;
    rep.threshold = 0.06;
    rep.sources.push_back({"s", {0.5, 0.01, 5}, 0.4, 0.8, 0.7, std::nullopt});
    const std::string rep_csv = replicate_result_to_csv(rep);
    CHECK(rep_csv.rfind("experiment,source_id,replications,mean_score,se,analytic,"
                        "inclusion_frequency,utility\n",
                        0) == 0);

    IncentiveSweepResult sweep;
    sweep.replications = 5;
    sweep.cells.push_back({0.1, {0.2, 0.02, 5}, 0.25, 0.9});
    CHECK(sweep_result_to_csv(sweep).rfind(
              "experiment,flip_fraction,replications,mean_score,se,analytic,"
              "inclusion_frequency\n",
              0) == 0);

    CollusionResult collusion;
    collusion.replications = 5;
    collusion.sources.push_back({"s", "truthful", {0.1, 0.01, 5}, {0.4, 0.02, 5}});
    CHECK(collusion_result_to_csv(collusion).rfind(
              "experiment,source_id,role,replications,tts_mean,tts_se,majority_mean,"
              "majority_se\n",
              0) == 0);

    ConcentrationResult conc;
    conc.replications = 5;
    conc.cells.push_back({0.1, 0.05, 0.01, 0.2});
    CHECK(concentration_result_to_csv(conc).rfind(
              "experiment,deviation,replications,empirical_tail,se,bound\n", 0) == 0);
}
