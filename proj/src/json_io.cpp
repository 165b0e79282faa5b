#include "tts/json_io.hpp"

#include <fstream>
#include <sstream>

#include "tts/errors.hpp"

namespace tts {

using nlohmann::json;

namespace {

double get_number(const json& j, const char* key, double fallback, bool required = false) {
    if (!j.contains(key)) {
        if (required) throw DataError(std::string("missing key \"") + key + "\"");
        return fallback;
    }
    if (!j[key].is_number()) throw DataError(std::string("key \"") + key + "\" must be a number");
    return j[key].get<double>();
}

std::vector<double> get_broadcastable(const json& j, const char* key) {
    std::vector<double> out;
    if (!j.contains(key)) return out;
    const json& v = j[key];
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array()) {
        for (const auto& item : v) {
            if (!item.is_number())
                throw DataError(std::string("key \"") + key + "\" must contain numbers");
            out.push_back(item.get<double>());
        }
    } else {
        throw DataError(std::string("key \"") + key + "\" must be a number or array");
    }
    return out;
}

ClaimMatrix matrix_from_json(const json& j, const char* key) {
    ClaimMatrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw DataError(std::string(key) + " must be a list of rows");
        std::vector<double> r;
        for (const auto& item : row) {
            if (!item.is_number()) throw DataError(std::string(key) + " entries must be numbers");
            r.push_back(item.get<double>());
        }
        m.push_back(std::move(r));
    }
    return m;
}

json script_to_json(const ReportScript& script) {
    switch (script.kind) {
    case ScriptKind::Truthful: return {{"kind", "truthful"}};
    case ScriptKind::Flip: return {{"kind", "flip"}, {"phi", script.flip_fraction}};
    case ScriptKind::UninformedRandom:
        return {{"kind", "uninformed_random"}, {"p", script.support_probability}};
    case ScriptKind::Constant:
        return {{"kind", "constant"}, {"stance", std::string(to_string(script.stance))}};
    }
    return {};
}

ReportScript script_from_json(const json& j) {
    if (!j.contains("kind") || !j["kind"].is_string())
        throw DataError("script requires a string \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "truthful") return ReportScript::truthful();
    if (kind == "flip") return ReportScript::flip(get_number(j, "phi", 0.0, true));
    if (kind == "uninformed_random")
        return ReportScript::uninformed_random(get_number(j, "p", 0.5));
    if (kind == "constant") {
        if (!j.contains("stance") || !j["stance"].is_string())
            throw DataError("constant script requires a string \"stance\"");
        return ReportScript::constant(stance_from_string(j["stance"].get<std::string>()));
    }
    throw DataError("unknown script kind \"" + kind + "\"");
}

json strategy_to_json(const SourceStrategy& s) {
    json j{{"effort", s.effort ? 1 : 0},
           {"signal_accuracy_true", s.signal_accuracy_true},
           {"signal_accuracy_false", s.signal_accuracy_false},
           {"report_given_one", s.report_given_one},
           {"report_given_zero", s.report_given_zero},
           {"coverage", s.coverage}};
    if (!s.name.empty()) j["name"] = s.name;
    if (s.script) j["script"] = script_to_json(*s.script);
    return j;
}

SourceStrategy strategy_from_json(const json& j) {
    SourceStrategy s;
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    if (j.contains("effort")) {
        if (j["effort"].is_boolean()) s.effort = j["effort"].get<bool>();
        else s.effort = j["effort"].get<double>() != 0.0;
    }
    s.signal_accuracy_true = get_number(j, "signal_accuracy_true", s.signal_accuracy_true);
    s.signal_accuracy_false = get_number(j, "signal_accuracy_false", s.signal_accuracy_false);
    s.report_given_one = get_number(j, "report_given_one", s.report_given_one);
    s.report_given_zero = get_number(j, "report_given_zero", s.report_given_zero);
    s.coverage = get_number(j, "coverage", s.coverage);
    if (j.contains("script")) {
        s.script = script_from_json(j["script"]);
        if (s.script->kind == ScriptKind::Truthful) {
            s.effort = true;
            s.report_given_one = 1.0;
            s.report_given_zero = 0.0;
        }
    }
    return s;
}

} // namespace

json world_config_to_json(const WorldConfig& config) {
    json j{{"prior", config.prior},
           {"n_claims", config.n_claims},
           {"seed", config.seed},
           {"threshold", config.threshold}};
    j["strategies"] = json::array();
    for (const SourceStrategy& s : config.strategies) j["strategies"].push_back(strategy_to_json(s));
    if (config.peer_coverage) j["peer_coverage"] = *config.peer_coverage;
    if (config.peer_informativeness) j["peer_informativeness"] = *config.peer_informativeness;
    if (!config.value_of_inclusion.empty()) j["value_of_inclusion"] = config.value_of_inclusion;
    if (!config.effort_cost.empty()) j["effort_cost"] = config.effort_cost;
    if (config.reputation_weights) j["reputation_weights"] = *config.reputation_weights;
    return j;
}

WorldConfig world_config_from_json(const json& j) {
    if (!j.is_object()) throw DataError("world config must be a JSON object");
    WorldConfig config;
    config.prior = get_number(j, "prior", 0.5, true);
    if (!j.contains("n_claims") || !j["n_claims"].is_number_integer())
        throw DataError("missing integer key \"n_claims\"");
    config.n_claims = j["n_claims"].get<std::size_t>();
    if (!j.contains("strategies") || !j["strategies"].is_array())
        throw DataError("missing array key \"strategies\"");
    for (const auto& item : j["strategies"]) config.strategies.push_back(strategy_from_json(item));
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    config.threshold = get_number(j, "threshold", kDefaultThreshold);
    if (j.contains("peer_coverage"))
        config.peer_coverage = matrix_from_json(j["peer_coverage"], "peer_coverage");
    if (j.contains("peer_informativeness"))
        config.peer_informativeness =
            matrix_from_json(j["peer_informativeness"], "peer_informativeness");
    config.value_of_inclusion = get_broadcastable(j, "value_of_inclusion");
    config.effort_cost = get_broadcastable(j, "effort_cost");
    if (j.contains("reputation_weights")) {
        auto w = get_broadcastable(j, "reputation_weights");
        config.reputation_weights = std::move(w);
    }
    return config;
}

json stance_matrix_to_json(const StanceMatrix& matrix) {
    json rows = json::array();
    for (std::size_t i = 0; i < matrix.n_sources(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < matrix.n_claims(); ++k)
            row.push_back(std::string(to_string(matrix.at(i, k))));
        rows.push_back(std::move(row));
    }
    return {{"source_ids", matrix.source_ids()},
            {"claims", matrix.n_claims()},
            {"rows", std::move(rows)}};
}

StanceMatrix stance_matrix_from_json(const json& j) {
    if (!j.is_object()) throw DataError("stance matrix must be a JSON object");
    if (!j.contains("source_ids") || !j["source_ids"].is_array())
        throw DataError("stance matrix: missing array key \"source_ids\"");
    if (!j.contains("rows") || !j["rows"].is_array())
        throw DataError("stance matrix: missing array key \"rows\"");
    std::vector<std::string> ids;
    for (const auto& id : j["source_ids"]) ids.push_back(id.get<std::string>());
    std::vector<std::vector<Stance>> rows;
    for (const auto& row : j["rows"]) {
        if (!row.is_array()) throw DataError("stance matrix: rows must be arrays");
        std::vector<Stance> r;
        for (const auto& cell : row) {
            if (!cell.is_string()) throw DataError("stance matrix: cells must be strings");
            r.push_back(stance_from_string(cell.get<std::string>()));
        }
        rows.push_back(std::move(r));
    }
    StanceMatrix matrix = StanceMatrix::from_rows(std::move(ids), rows);
    if (j.contains("claims")) {
        const std::size_t declared = j["claims"].get<std::size_t>();
        if (declared != matrix.n_claims())
            throw DataError("stance matrix: declared claim count " + std::to_string(declared) +
                            " does not match rows (" + std::to_string(matrix.n_claims()) + ")");
    }
    return matrix;
}

namespace {

// Permutations serialize 1-based: entry p at position k means claim k maps to p.
json permutation_to_json(const std::vector<std::size_t>& mapping) {
    json out = json::array();
    for (std::size_t v : mapping) out.push_back(v + 1);
    return out;
}

} // namespace

json score_report_to_json(const ScoreReport& report) {
    json scores = json::object();
    json included = json::object();
    json components = json::object();
    json permutations = json::object();
    for (std::size_t i = 0; i < report.source_ids.size(); ++i) {
        const std::string& id = report.source_ids[i];
        scores[id] = report.scores[i];
        included[id] = static_cast<bool>(report.included[i]);
        json row = json::object();
        for (std::size_t j = 0; j < report.source_ids.size(); ++j)
            if (j != i) row[report.source_ids[j]] = report.peer_components[i][j];
        components[id] = std::move(row);
        permutations[id] = permutation_to_json(report.permutations[i]);
    }
    json out{{"scores", std::move(scores)},
             {"included", std::move(included)},
             {"threshold", report.threshold},
             {"peer_components", std::move(components)},
             {"permutations", std::move(permutations)}};
    if (report.utilities) {
        json utilities = json::object();
        for (std::size_t i = 0; i < report.source_ids.size(); ++i)
            utilities[report.source_ids[i]] = (*report.utilities)[i];
        out["utilities"] = std::move(utilities);
    }
    return out;
}

json claim_set_to_json(const ClaimSet& set) {
    json claims = json::array();
    for (const Claim& claim : set.claims)
        claims.push_back({{"id", claim.id}, {"text", claim.text}});
    return {{"scored_source", set.scored_source},
            {"claims", std::move(claims)},
            {"provenance", set.provenance}};
}

json pipeline_result_to_json(const PipelineResult& result) {
    json claim_sets = json::object();
    for (const auto& [id, set] : result.claim_sets) claim_sets[id] = claim_set_to_json(set);
    json matrices = json::object();
    for (const auto& [id, matrix] : result.stance_matrices)
        matrices[id] = stance_matrix_to_json(matrix);
    return {{"query", result.query},
            {"source_ids", result.source_ids},
            {"report", score_report_to_json(result.report)},
            {"reliable_set", result.reliable_set},
            {"abstained", result.abstained},
            {"final_summary", result.final_summary},
            {"claim_sets", std::move(claim_sets)},
            {"stance_matrices", std::move(matrices)}};
}

DocumentPool document_pool_from_json(const json& j) {
    if (!j.is_object()) throw DataError("manifest must be a JSON object");
    DocumentPool pool;
    if (j.contains("query")) pool.query = j["query"].get<std::string>();
    if (!j.contains("documents") || !j["documents"].is_array())
        throw DataError("manifest: missing array key \"documents\"");
    for (const auto& item : j["documents"]) {
        Document doc;
        if (!item.contains("source_id") || !item.contains("text"))
            throw DataError("manifest: every document needs \"source_id\" and \"text\"");
        doc.source_id = item["source_id"].get<std::string>();
        doc.text = item["text"].get<std::string>();
        if (item.contains("role")) doc.role = item["role"].get<std::string>();
        pool.documents.push_back(std::move(doc));
    }
    return pool;
}

ProviderConfig provider_config_from_json(const json& j, const std::string& base_dir) {
    if (!j.is_object()) throw DataError("provider config must be a JSON object");
    ProviderConfig config;
    if (j.contains("provider")) config.kind = j["provider"].get<std::string>();
    if (config.kind != "mock" && config.kind != "http")
        throw DataError("provider must be \"mock\" or \"http\"");
    if (j.contains("base_url")) config.http.base_url = j["base_url"].get<std::string>();
    if (j.contains("model")) config.http.model = j["model"].get<std::string>();
    if (j.contains("credential_env"))
        config.http.credential_env = j["credential_env"].get<std::string>();
    if (j.contains("completions_path"))
        config.http.completions_path = j["completions_path"].get<std::string>();
    config.http.timeout_seconds =
        static_cast<int>(get_number(j, "timeout_seconds", config.http.timeout_seconds));
    config.http.max_retries = static_cast<int>(get_number(j, "max_retries", config.http.max_retries));
    if (j.contains("prompts")) {
        const json& prompts = j["prompts"];
        auto load_override = [&](const char* key, std::string& slot) {
            if (!prompts.contains(key)) return;
            std::string path = prompts[key].get<std::string>();
            if (!base_dir.empty() && !path.empty() && path.front() != '/')
                path = base_dir + "/" + path;
            slot = read_text_file(path);
        };
        load_override("synthesis", config.templates.synthesis);
        load_override("decompose", config.templates.decompose);
        load_override("stance", config.templates.stance);
    }
    return config;
}

namespace {

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += "\"";
    return quoted;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string se_or_empty(const std::optional<double>& se) { return se ? num(*se) : ""; }

json stats_to_json(const CellStats& stats) {
    json j{{"mean", stats.mean}, {"count", stats.count}};
    if (stats.se) j["se"] = *stats.se;
    return j;
}

json checks_to_json(const std::vector<NamedCheck>& checks) {
    json out = json::array();
    for (const NamedCheck& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}});
    return out;
}

} // namespace

json replicate_result_to_json(const ReplicateResult& result) {
    json sources = json::array();
    for (const ScoreCell& cell : result.sources) {
        json j{{"source_id", cell.source_id},
               {"score", stats_to_json(cell.score)},
               {"analytic", cell.analytic},
               {"inclusion_frequency", cell.inclusion_frequency},
               {"utility", cell.utility}};
        if (cell.raw_scores) j["raw_scores"] = *cell.raw_scores;
        sources.push_back(std::move(j));
    }
    return {{"experiment", "replicate"},
            {"replications", result.replications},
            {"threshold", result.threshold},
            {"sources", std::move(sources)}};
}

json sweep_result_to_json(const IncentiveSweepResult& result) {
    json cells = json::array();
    for (const SweepCell& cell : result.cells)
        cells.push_back({{"flip_fraction", cell.flip_fraction},
                         {"score", stats_to_json(cell.score)},
                         {"analytic", cell.analytic},
                         {"inclusion_frequency", cell.inclusion_frequency}});
    return {{"experiment", "incentive-sweep"},
            {"replications", result.replications},
            {"threshold", result.threshold},
            {"truthful_analytic", result.truthful_analytic},
            {"cells", std::move(cells)},
            {"checks", checks_to_json(result.checks)},
            {"passed", result.passed()}};
}

json collusion_result_to_json(const CollusionResult& result) {
    json sources = json::array();
    for (const CollusionCell& cell : result.sources)
        sources.push_back({{"source_id", cell.source_id},
                           {"role", cell.role},
                           {"tts", stats_to_json(cell.tts)},
                           {"majority", stats_to_json(cell.majority)}});
    return {{"experiment", "collusion"},
            {"replications", result.replications},
            {"threshold", result.threshold},
            {"sources", std::move(sources)},
            {"checks", checks_to_json(result.checks)},
            {"passed", result.passed()}};
}

json concentration_result_to_json(const ConcentrationResult& result) {
    json cells = json::array();
    for (const TailCell& cell : result.cells)
        cells.push_back({{"deviation", cell.deviation},
                         {"empirical_tail", cell.empirical},
                         {"se", cell.se},
                         {"bound", cell.bound}});
    return {{"experiment", "concentration"},
            {"replications", result.replications},
            {"n_claims", result.n_claims},
            {"analytic_mean", result.analytic_mean},
            {"cells", std::move(cells)},
            {"checks", checks_to_json(result.checks)},
            {"passed", result.passed()}};
}

std::string replicate_result_to_csv(const ReplicateResult& result) {
    std::string out = "experiment,source_id,replications,mean_score,se,analytic,"
                      "inclusion_frequency,utility\n";
    for (const ScoreCell& cell : result.sources) {
        out += "replicate," + csv_field(cell.source_id) + "," +
               std::to_string(result.replications) + "," + num(cell.score.mean) + "," +
               se_or_empty(cell.score.se) + "," + num(cell.analytic) + "," +
               num(cell.inclusion_frequency) + "," + num(cell.utility) + "\n";
    }
    return out;
}

std::string sweep_result_to_csv(const IncentiveSweepResult& result) {
    std::string out = "experiment,flip_fraction,replications,mean_score,se,analytic,"
                      "inclusion_frequency\n";
    for (const SweepCell& cell : result.cells) {
        out += "incentive-sweep," + num(cell.flip_fraction) + "," +
               std::to_string(result.replications) + "," + num(cell.score.mean) + "," +
               se_or_empty(cell.score.se) + "," + num(cell.analytic) + "," +
               num(cell.inclusion_frequency) + "\n";
    }
    return out;
}

std::string collusion_result_to_csv(const CollusionResult& result) {
    std::string out =
        "experiment,source_id,role,replications,tts_mean,tts_se,majority_mean,majority_se\n";
    for (const CollusionCell& cell : result.sources) {
        out += "collusion," + csv_field(cell.source_id) + "," + cell.role + "," +
               std::to_string(result.replications) + "," + num(cell.tts.mean) + "," +
               se_or_empty(cell.tts.se) + "," + num(cell.majority.mean) + "," +
               se_or_empty(cell.majority.se) + "\n";
    }
    return out;
}

std::string concentration_result_to_csv(const ConcentrationResult& result) {
    std::string out = "experiment,deviation,replications,empirical_tail,se,bound\n";
    for (const TailCell& cell : result.cells) {
        out += "concentration," + num(cell.deviation) + "," +
               std::to_string(result.replications) + "," + num(cell.empirical) + "," +
               num(cell.se) + "," + num(cell.bound) + "\n";
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("cannot parse JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace tts
