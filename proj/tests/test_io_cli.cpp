#include <catch2/catch.hpp>

#include <cstdio>
#include <fstream>

#include "strsub/cli.hpp"
#include "strsub/io.hpp"

using namespace strsub;
using nlohmann::json;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("strsub_test_" + name) {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) { return io::read_file(path); }

const char* kLinearTable = R"({
  "num_actions": 3,
  "K": 2,
  "values": {"": 0.0,
             "0": 1.0, "1": 5.0, "2": 2.0,
             "0,0": 2.0, "0,1": 6.0, "0,2": 3.0,
             "1,0": 6.0, "1,1": 10.0, "1,2": 7.0,
             "2,0": 3.0, "2,1": 7.0, "2,2": 4.0},
  "default": 0.0
})";

}  // namespace

TEST_CASE("table oracle JSON schema") {
    json doc = json::parse(kLinearTable);
    TableOracle table = io::table_oracle_from_json(doc);
    CHECK(table(ActionString{}) == 0.0);
    CHECK(table(ActionString{1, 1}) == 10.0);
    CHECK(table(ActionString{2, 2, 2}) == 0.0);  // missing takes default

    SECTION("default is optional and misses become errors") {
        json strict = doc;
        strict.erase("default");
        TableOracle t2 = io::table_oracle_from_json(strict);
        CHECK_THROWS_AS(t2(ActionString{2, 2, 2}), DepthExceededError);
    }
    SECTION("unknown actions in keys are rejected") {
        json bad = doc;
        bad["values"]["7"] = 1.0;
        CHECK_THROWS_AS(io::table_oracle_from_json(bad), InputError);
    }
    SECTION("missing fields are rejected") {
        CHECK_THROWS_AS(io::table_oracle_from_json(json::object()), InputError);
    }
}

TEST_CASE("matroid JSON selectors") {
    CHECK(io::matroid_from_json(json::parse(R"({"kind": "uniform"})"), 3)
              .is_independent(ActionString{0, 0, 0}));
    StringMatroid reps =
        io::matroid_from_json(json::parse(R"({"kind": "max_repeats", "caps": [1, 2]})"), 3);
    CHECK(reps.is_independent(ActionString{0, 1, 1}));
    CHECK_FALSE(reps.is_independent(ActionString{0, 0}));
    StringMatroid forb = io::matroid_from_json(
        json::parse(R"({"kind": "prefix_forbidden", "forbidden": [[0, 1]]})"), 2);
    CHECK(forb.is_independent(ActionString{0, 0}));
    CHECK_FALSE(forb.is_independent(ActionString{0, 1}));
    CHECK_THROWS_AS(io::matroid_from_json(json::parse(R"({"kind": "nope"})"), 2),
                    InputError);
}

TEST_CASE("curvature report serialization spells witnesses as comma-joined ids") {
    CurvatureReport report;
    report.kind = CurvatureKind::elemental;
    report.value = 1.25;
    report.witness_a = 0;
    report.witness_b = 2;
    report.witness_m = ActionString{1, 0, 2};
    report.search_len = 3;
    json out = io::curvature_report_to_json(report);
    CHECK(out["kind"] == "eta");
    CHECK(out["witness"]["m"] == "1,0,2");
    CHECK(out["witness"]["a"] == 0);
    CHECK(out["witness"]["b"] == 2);
}

TEST_CASE("solve command reports a unit ratio on a linear table") {
    TempFile instance("linear.json", kLinearTable);
    TempFile out("solve.json", "");
    cli::RunConfig config;
    config.command = "solve";
    config.instance_path = instance.path;
    config.model_kind = "table";
    config.output_path = out.path;
    config.output_format = "json";
    REQUIRE(cli::run(config) == cli::kOk);
    json result = json::parse(slurp(out.path));
    CHECK(result["ratio"].get<double>() == Approx(1.0));
    CHECK(result["greedy_strategy"] == "1,1");
    CHECK(result["f_optimal"].get<double>() == Approx(10.0));
    CHECK(result["f_backward_greedy"].get<double>() == Approx(10.0));

    // csv variant carries the same header fields
    TempFile out_csv("solve.csv", "");
    config.output_format = "csv";
    config.output_path = out_csv.path;
    REQUIRE(cli::run(config) == cli::kOk);
    std::string csv = slurp(out_csv.path);
    CHECK(csv.find("ratio") != std::string::npos);
    CHECK(csv.find("f_greedy") != std::string::npos);
}

TEST_CASE("bounds command passes on a golden task instance") {
    json doc;
    doc["n"] = 1;
    doc["K"] = 3;
    doc["L"] = {0.4, 0.42, 0.39};
    doc["U"] = {0.6, 0.58, 0.61};
    std::vector<std::vector<std::vector<double>>> probs(1);
    probs[0].assign(8, {0.5, 0.5, 0.5});
    for (int j = 0; j < 8; ++j) {
        probs[0][j][0] = 0.45 + 0.01 * j;
        probs[0][j][1] = 0.55 - 0.01 * j;
        probs[0][j][2] = 0.5;
    }
    doc["probs"] = probs;
    TempFile instance("golden.json", doc.dump());
    TempFile out("bounds.csv", "");
    cli::RunConfig config;
    config.command = "bounds";
    config.instance_path = instance.path;
    config.model_kind = "tasks";
    config.output_path = out.path;
    REQUIRE(cli::run(config) == cli::kOk);
    std::string csv = slurp(out.path);
    CHECK(csv.find("theorem,guaranteed,measured,applicable,pass") == 0);
    CHECK(csv.find("FAIL") == std::string::npos);
    CHECK(csv.find("T1i,") != std::string::npos);
    CHECK(csv.find("PASS") != std::string::npos);
}

TEST_CASE("curvature command reports the witness for decreasing noise") {
    json doc;
    doc["s0"] = 1.5;
    doc["t0"] = 1.0;
    doc["noise_vars"] = {0.5, 1.0, 0.8, 1.5, 1.5, 1.5};
    doc["a"] = 0.5;
    doc["b"] = 1.5;
    doc["grid"] = {0.0, 0.25, 0.5, 0.75, 1.0};
    doc["K"] = 3;
    TempFile instance("noise.json", doc.dump());
    TempFile out("curv.json", "");
    cli::RunConfig config;
    config.command = "curvature";
    config.instance_path = instance.path;
    config.model_kind = "infogain";
    config.output_path = out.path;
    config.output_format = "json";
    REQUIRE(cli::run(config) == cli::kOk);
    json result = json::parse(slurp(out.path));
    CHECK(result["closed_forms"]["noise_nondecreasing"] == false);
    CHECK(result["closed_forms"]["diminishing_return_witness"]["violation_confirmed"] ==
          true);
    double eta_hat = -1.0;
    for (const json& r : result["reports"])
        if (r["kind"] == "eta_hat") eta_hat = r["value"].get<double>();
    CHECK(eta_hat > 1.0);
}

TEST_CASE("validate-matroid reports hereditary violations through the CLI") {
    json doc = json::parse(kLinearTable);
    doc["matroid"] = {{"kind", "prefix_forbidden"}, {"forbidden", {{1}}}};
    TempFile instance("badmatroid.json", doc.dump());
    TempFile out("violations.csv", "");
    cli::RunConfig config;
    config.command = "validate-matroid";
    config.instance_path = instance.path;
    config.output_path = out.path;
    REQUIRE(cli::run(config) == cli::kOk);
    CHECK(slurp(out.path).find("hereditary") != std::string::npos);
}

TEST_CASE("a uniform matroid section keeps the length-only bounds applicable") {
    json doc = json::parse(kLinearTable);
    doc["K"] = 1;  // the table covers depth 2, which is this horizon's probe window
    doc["matroid"] = {{"kind", "uniform"}};
    TempFile instance("uniformmatroid.json", doc.dump());
    TempFile out("uniformbounds.json", "");
    cli::RunConfig config;
    config.command = "bounds";
    config.instance_path = instance.path;
    config.output_path = out.path;
    config.output_format = "json";
    REQUIRE(cli::run(config) == cli::kOk);
    json result = json::parse(slurp(out.path));
    for (const json& check : result["checks"])
        if (check["theorem"] == "T1i") CHECK(check["hypotheses_met"] == true);
}

TEST_CASE("CLI exit codes") {
    SECTION("missing instance file") {
        cli::RunConfig config;
        config.command = "solve";
        config.instance_path = "does_not_exist.json";
        CHECK(cli::run(config) == cli::kInputError);
    }
    SECTION("malformed JSON") {
        TempFile instance("broken.json", "{ not json");
        cli::RunConfig config;
        config.command = "solve";
        config.instance_path = instance.path;
        CHECK(cli::run(config) == cli::kInputError);
    }
    SECTION("budget exhaustion") {
        TempFile instance("linear2.json", kLinearTable);
        cli::RunConfig config;
        config.command = "bounds";
        config.instance_path = instance.path;
        config.budget = 5;
        CHECK(cli::run(config) == cli::kBudgetExceeded);
    }
    SECTION("unknown command") {
        TempFile instance("linear3.json", kLinearTable);
        cli::RunConfig config;
        config.command = "explode";
        config.instance_path = instance.path;
        CHECK(cli::run(config) == cli::kInputError);
    }
}

TEST_CASE("seed sweeps are deterministic and sound") {
    json doc;
    doc["generator"] = {{"kind", "random_submodular"}, {"num_actions", 3}, {"K", 3}};
    json values = json::array();
    for (int seed = 1; seed <= 10; ++seed) values.push_back(seed);
    doc["sweep"] = {{"param", "seed"}, {"values", values}};
    TempFile instance("sweep.json", doc.dump());
    TempFile out_a("sweep_a.csv", "");
    TempFile out_b("sweep_b.csv", "");

    cli::RunConfig config;
    config.command = "sweep";
    config.instance_path = instance.path;
    config.seed = 7;
    config.output_path = out_a.path;
    REQUIRE(cli::run(config) == cli::kOk);
    config.output_path = out_b.path;
    REQUIRE(cli::run(config) == cli::kOk);
    std::string a = slurp(out_a.path), b = slurp(out_b.path);
    CHECK(a == b);
    CHECK(a.find("param,value,") == 0);

    // the failed-count column (10th field) is zero on every row
    std::istringstream lines(a);
    std::string line;
    std::getline(lines, line);  // header
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string field;
        for (int i = 0; i < 10; ++i) std::getline(fields, field, ',');
        CHECK(field == "0");
    }
    CHECK(rows == 10);
}

TEST_CASE("upper-probability sweeps drive the closed-form backward curvature up") {
    json doc;
    doc["generator"] = {{"kind", "random_task"}, {"num_actions", 3}, {"K", 3},
                        {"n", 1},                {"L", 0.382}};
    doc["sweep"] = {{"param", "U"}, {"values", {0.45, 0.5, 0.55, 0.6}}};
    TempFile instance("usweep.json", doc.dump());
    TempFile out("usweep.json.out", "");
    cli::RunConfig config;
    config.command = "sweep";
    config.instance_path = instance.path;
    config.model_kind = "tasks";
    config.seed = 3;
    config.output_path = out.path;
    config.output_format = "json";
    REQUIRE(cli::run(config) == cli::kOk);
    json rows = json::parse(slurp(out.path));
    REQUIRE(rows.size() == 4);
    double last = -1.0;
    for (const json& row : rows) {
        double closed = row["extras"]["sigma_hat_closed"].get<double>();
        CHECK(closed >= last - 1e-12);
        last = closed;
        CHECK(row["suite"]["measured_ratio"].get<double>() >= 0.0);
    }
}

TEST_CASE("horizon sweeps produce monotone geometric-bound columns") {
    json doc;
    doc["n"] = 1;
    doc["K"] = 2;
    doc["L"] = {0.4, 0.4, 0.4};
    doc["U"] = {0.6, 0.6, 0.6};
    std::vector<std::vector<std::vector<double>>> probs(1);
    probs[0].assign(14, {0.5, 0.45, 0.55});
    doc["probs"] = probs;
    doc["sweep"] = {{"param", "K"}, {"values", {2, 3, 4}}};
    TempFile instance("ksweep.json", doc.dump());
    TempFile out("ksweep.json.out", "");
    cli::RunConfig config;
    config.command = "sweep";
    config.instance_path = instance.path;
    config.model_kind = "tasks";
    config.output_path = out.path;
    config.output_format = "json";
    REQUIRE(cli::run(config) == cli::kOk);
    json rows = json::parse(slurp(out.path));
    REQUIRE(rows.size() == 3);
    double last = 2.0;
    for (const json& row : rows) {
        const json& checks = row["suite"]["checks"];
        for (const json& check : checks) {
            if (check["theorem"] == "C1") {
                REQUIRE(check["hypotheses_met"] == true);
                double guaranteed = check["guaranteed_ratio"].get<double>();
                CHECK(guaranteed <= last + 1e-12);
                last = guaranteed;
            }
        }
    }
}
