#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "strsub/bounds.hpp"
#include "strsub/curvature.hpp"
#include "strsub/errors.hpp"
#include "strsub/infogain.hpp"
#include "strsub/matroid.hpp"
#include "strsub/oracle.hpp"
#include "strsub/tasks.hpp"

namespace strsub::io {

using nlohmann::json;

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// ─── Instance schemas ─────────────────────────────────────────

// Table oracle document:
//   {"num_actions": int, "values": {"1,2,3": float, ...}, "default": float}
// Keys are comma-joined action ids; the empty key is the empty string.
// Strings missing from "values" take "default".
inline TableOracle table_oracle_from_json(const json& doc) {
    if (!doc.contains("num_actions") || !doc.contains("values"))
        throw InputError("table oracle: needs num_actions and values");
    int num_actions = doc.at("num_actions").get<int>();
    if (num_actions < 1) throw InputError("table oracle: num_actions must be >= 1");
    std::unordered_map<ActionString, double, ActionStringHash> values;
    for (const auto& [key, value] : doc.at("values").items()) {
        ActionString s = ActionString::from_key(key);
        for (Action a : s)
            if (a < 0 || a >= num_actions)
                throw InputError("table oracle: key (" + key + ") uses an unknown action");
        values.emplace(s, value.get<double>());
    }
    std::optional<double> fallback;
    if (doc.contains("default")) fallback = doc.at("default").get<double>();
    return TableOracle(num_actions, std::move(values), fallback);
}

// Task instance: {"n": int, "K": int, "probs": [[[float]]], "L": [float],
// "U": [float]} with probs indexed [subtask][stage][action].
inline tasks::TaskModel task_model_from_json(const json& doc) {
    for (const char* field : {"n", "K", "probs", "L", "U"})
        if (!doc.contains(field))
            throw InputError(std::string("task instance: missing field ") + field);
    return tasks::make_task_model(
        doc.at("n").get<int>(), doc.at("K").get<int>(),
        doc.at("probs").get<std::vector<std::vector<std::vector<double>>>>(),
        doc.at("L").get<std::vector<double>>(), doc.at("U").get<std::vector<double>>());
}

// Information-gain instance: {"s0": float, "t0": float, "noise_vars":
// [float], "a": float, "b": float, "grid": [float], "K": int}.
inline infogain::InfoGainModel infogain_model_from_json(
    const json& doc, const std::vector<double>& grid_override = {}) {
    for (const char* field : {"s0", "t0", "noise_vars", "a", "b", "K"})
        if (!doc.contains(field))
            throw InputError(std::string("infogain instance: missing field ") + field);
    std::vector<double> grid = grid_override;
    if (grid.empty() && doc.contains("grid"))
        grid = doc.at("grid").get<std::vector<double>>();
    return infogain::make_infogain_model(
        doc.at("s0").get<double>(), doc.at("t0").get<double>(),
        doc.at("noise_vars").get<std::vector<double>>(), doc.at("a").get<double>(),
        doc.at("b").get<double>(), std::move(grid), doc.at("K").get<int>());
}

// Matroid selector: {"kind": "uniform"}, {"kind": "max_repeats", "caps":
// [int]}, or {"kind": "prefix_forbidden", "forbidden": [[int]]}. Rank is
// the instance horizon.
inline StringMatroid matroid_from_json(const json& doc, int rank) {
    std::string kind = doc.at("kind").get<std::string>();
    if (kind == "uniform") return uniform_matroid(rank);
    if (kind == "max_repeats")
        return max_repeats_matroid(doc.at("caps").get<std::vector<int>>(), rank);
    if (kind == "prefix_forbidden") {
        std::vector<ActionString> forbidden;
        for (const auto& entry : doc.at("forbidden"))
            forbidden.push_back(ActionString(entry.get<std::vector<Action>>()));
        return prefix_forbidden_matroid(std::move(forbidden), rank);
    }
    throw InputError("matroid: unknown kind '" + kind + "'");
}

// ─── Report serialization ─────────────────────────────────────

inline json curvature_report_to_json(const CurvatureReport& r) {
    json witness;
    witness["m"] = r.witness_m.key();
    if (r.witness_a >= 0) witness["a"] = r.witness_a;
    if (r.witness_b >= 0) witness["b"] = r.witness_b;
    json out;
    out["kind"] = curvature_kind_name(r.kind);
    out["value"] = r.value;
    out["witness"] = witness;
    if (!r.fixed_m.empty() || r.kind == CurvatureKind::total_backward_wrt ||
        r.kind == CurvatureKind::total_forward_wrt)
        out["fixed_m"] = r.fixed_m.key();
    out["search_len"] = r.search_len;
    out["candidates"] = r.candidates;
    out["skipped_zero_denominators"] = r.skipped_zero_denominators;
    return out;
}

inline json bound_check_to_json(const BoundCheck& c) {
    json out;
    out["theorem"] = bound_id_name(c.id);
    out["guaranteed_ratio"] = c.guaranteed_ratio;
    out["measured_ratio"] = c.measured_ratio;
    out["hypotheses_met"] = c.hypotheses_met;
    out["pass"] = c.pass;
    out["status"] = c.status();
    out["diagnostics"] = c.diagnostics;
    return out;
}

inline json bound_suite_to_json(const BoundSuiteResult& r) {
    json out;
    out["f_greedy"] = r.f_greedy;
    out["f_optimal"] = r.f_optimal;
    out["measured_ratio"] = r.measured_ratio;
    out["greedy_strategy"] = r.greedy_trace.strategy.key();
    out["optimal_strategy"] = r.optimal_strategy.key();
    out["forward_monotone"] = r.forward_monotone;
    out["diminishing_return"] = r.diminishing_return;
    out["backward_monotone"] = r.backward_monotone;
    out["prefix_extension_hypothesis"] = r.prefix_extension_hypothesis;
    out["full_extension_hypothesis"] = r.full_extension_hypothesis;
    if (r.sigma_known) {
        out["sigma_opt"] = r.sigma_opt;
        out["sigma_label"] = r.sigma_label;
    }
    if (r.eta_known) {
        out["eta"] = r.eta;
        out["eta_window"] = r.eta_window;
    }
    out["eps_prefix"] = r.eps_prefix;
    json checks = json::array();
    for (BoundId id : kAllBoundIds) checks.push_back(bound_check_to_json(r.check(id)));
    out["checks"] = checks;
    return out;
}

// CSV with one row per check: theorem, guaranteed, measured, applicable, pass.
inline std::string bound_suite_csv(const BoundSuiteResult& r) {
    std::ostringstream out;
    out << "theorem,guaranteed,measured,applicable,pass\n";
    for (BoundId id : kAllBoundIds) {
        const BoundCheck& c = r.check(id);
        out << bound_id_name(id) << ',' << format_double(c.guaranteed_ratio) << ','
            << format_double(c.measured_ratio) << ',' << (c.hypotheses_met ? "yes" : "no")
            << ',' << c.status() << '\n';
    }
    return out.str();
}

inline json matroid_report_to_json(const MatroidValidationReport& r) {
    json out;
    out["rank"] = r.rank;
    out["independent_count"] = r.independent_count;
    out["ok"] = r.ok();
    json violations = json::array();
    for (const MatroidViolation& v : r.violations) {
        json item;
        switch (v.axiom) {
            case MatroidAxiom::non_empty: item["axiom"] = "non_empty"; break;
            case MatroidAxiom::hereditary: item["axiom"] = "hereditary"; break;
            case MatroidAxiom::augmentation: item["axiom"] = "augmentation"; break;
            case MatroidAxiom::has_maximal_string:
                item["axiom"] = "has_maximal_string";
                break;
        }
        item["m"] = v.m.key();
        item["n"] = v.n.key();
        item["detail"] = v.detail;
        violations.push_back(item);
    }
    out["violations"] = violations;
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline json parse_json_file(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw InputError("cannot parse " + path + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + path);
    out << content;
}

}  // namespace strsub::io
