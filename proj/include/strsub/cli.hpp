#pragma once

#include <algorithm>
#include <climits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "strsub/bounds.hpp"
#include "strsub/curvature.hpp"
#include "strsub/errors.hpp"
#include "strsub/infogain.hpp"
#include "strsub/io.hpp"
#include "strsub/matroid.hpp"
#include "strsub/random_instances.hpp"
#include "strsub/strategies.hpp"
#include "strsub/tasks.hpp"

namespace strsub::cli {

using nlohmann::json;

struct RunConfig {
    std::string command;               // solve | curvature | bounds | validate-matroid | sweep
    std::string instance_path;
    std::string model_kind = "table";  // table | tasks | infogain
    std::string output_path;           // empty: stdout
    std::string output_format = "csv";
    double tol = kDefaultTol;
    std::uint64_t budget = 2'000'000;
    std::uint64_t seed = 0;
    std::vector<double> grid_override;  // infogain power grid
    int search_len = -1;                // -1: per-operation defaults
};

enum ExitCode : int {
    kOk = 0,
    kBoundFailed = 1,
    kInputError = 2,
    kBudgetExceeded = 3,
};

struct LoadedInstance {
    std::string model_kind;
    int num_actions = 0;
    int horizon = 0;
    int probe_depth = INT_MAX / 2;  // longest string the oracle accepts
    ObjectiveOracle oracle;
    std::optional<StringMatroid> matroid;
    bool matroid_is_uniform = false;  // vacuous constraint: keep the
                                      // length-only bounds applicable
    std::optional<tasks::TaskModel> task;
    std::optional<infogain::InfoGainModel> info;
    json raw;
};

inline LoadedInstance load_instance(const json& doc, const RunConfig& config) {
    LoadedInstance inst;
    inst.raw = doc;
    inst.model_kind = config.model_kind;
    if (config.model_kind == "table") {
        TableOracle table = io::table_oracle_from_json(doc);
        inst.num_actions = table.num_actions();
        if (!doc.contains("K")) throw InputError("table instance: missing field K");
        inst.horizon = doc.at("K").get<int>();
        if (!doc.contains("default")) {
            std::size_t longest = 0;
            for (const auto& [key, value] : doc.at("values").items())
                longest = std::max(longest, ActionString::from_key(key).length());
            inst.probe_depth = static_cast<int>(longest);
        }
        inst.oracle = normalize(table.as_objective());
    } else if (config.model_kind == "tasks") {
        inst.task = io::task_model_from_json(doc);
        inst.num_actions = inst.task->num_actions();
        inst.horizon = inst.task->horizon;
        inst.probe_depth = inst.task->probe_depth();
        inst.oracle = tasks::task_objective(*inst.task);
    } else if (config.model_kind == "infogain") {
        inst.info = io::infogain_model_from_json(doc, config.grid_override);
        inst.num_actions = inst.info->num_actions();
        inst.horizon = inst.info->horizon;
        inst.probe_depth = inst.info->probe_depth();
        inst.oracle = infogain::infogain_objective(*inst.info);
    } else {
        throw InputError("unknown model kind '" + config.model_kind + "'");
    }
    if (inst.horizon < 1) throw InputError("instance: K must be >= 1");
    if (doc.contains("matroid")) {
        inst.matroid = io::matroid_from_json(doc.at("matroid"), inst.horizon);
        inst.matroid_is_uniform = doc.at("matroid").value("kind", "") == "uniform";
    }
    return inst;
}

namespace detail {

inline void emit(const RunConfig& config, const std::string& content) {
    if (config.output_path.empty())
        std::cout << content;
    else
        io::write_file(config.output_path, content);
}

inline std::string solve_csv(const json& fields) {
    std::ostringstream head, row;
    bool first = true;
    for (const auto& [key, value] : fields.items()) {
        if (!first) {
            head << ',';
            row << ',';
        }
        first = false;
        head << key;
        if (value.is_number_float())
            row << io::format_double(value.get<double>());
        else if (value.is_string())
            row << '"' << value.get<std::string>() << '"';
        else
            row << value.dump();
    }
    return head.str() + "\n" + row.str() + "\n";
}

inline int run_solve(const RunConfig& config, const LoadedInstance& inst) {
    ProblemSpec spec{inst.num_actions, inst.horizon, inst.oracle};
    EnumerationBudget budget{config.budget};

    json out;
    if (inst.matroid) {
        GreedyTrace trace = constrained_greedy(spec, *inst.matroid, config.tol);
        auto [opt, opt_value] = constrained_optimal(spec, *inst.matroid, budget);
        out["f_greedy"] = trace.value();
        out["f_optimal"] = opt_value;
        out["ratio"] = opt_value > 0 ? trace.value() / opt_value : 0.0;
        out["greedy_strategy"] = trace.strategy.key();
        out["optimal_strategy"] = opt.key();
        out["reached_rank"] = trace.reached_horizon;
    } else {
        GreedyTrace trace = greedy(spec, config.tol);
        GreedyTrace backward = backward_greedy(spec, config.tol);
        auto [opt, opt_value] = optimal_exhaustive(spec, budget);
        out["f_greedy"] = trace.value();
        out["f_backward_greedy"] = backward.value();
        out["f_optimal"] = opt_value;
        out["ratio"] = opt_value > 0 ? trace.value() / opt_value : 0.0;
        out["greedy_strategy"] = trace.strategy.key();
        out["backward_greedy_strategy"] = backward.strategy.key();
        out["optimal_strategy"] = opt.key();
    }
    emit(config, config.output_format == "json" ? out.dump(2) + "\n" : solve_csv(out));
    return kOk;
}

inline int run_curvature(const RunConfig& config, const LoadedInstance& inst) {
    const ObjectiveOracle& f = inst.oracle;
    const int k = inst.horizon;
    EnumerationBudget budget{config.budget};

    int singleton_len = std::min(2 * k, inst.probe_depth - 1);
    int elemental_len = std::min(2 * k - 2, inst.probe_depth - 2);
    if (config.search_len >= 0) {
        singleton_len = std::min(config.search_len, inst.probe_depth - 1);
        elemental_len = std::min(config.search_len, inst.probe_depth - 2);
    }

    std::vector<CurvatureReport> reports;
    reports.push_back(total_backward_curvature(f, inst.num_actions, singleton_len, budget));
    reports.push_back(total_forward_curvature(f, inst.num_actions, singleton_len, budget));
    reports.push_back(elemental_forward_curvature(f, inst.num_actions, elemental_len, budget));
    if (2 * k <= inst.probe_depth)
        reports.push_back(restricted_backward_curvature(f, inst.num_actions, k, budget));
    reports.push_back(restricted_elemental_curvature(f, inst.num_actions, k, budget));
    for (int i = 1; i <= k - 1; ++i)
        reports.push_back(restricted_forward_curvature_at(f, inst.num_actions, i, k, budget));

    json closed = json::object();
    if (inst.task) {
        const tasks::TaskModel& m = *inst.task;
        closed["eta_upper"] = tasks::eta_upper_bound(m);
        closed["sigma_hat_closed"] = tasks::sigma_hat_closed_form(m);
        json eps = json::array();
        for (int i = 1; i <= k - 1; ++i) eps.push_back(tasks::epsilon_hat_closed_form(m, i));
        closed["epsilon_hat_closed"] = eps;
        closed["submodular_sufficient"] = tasks::submodular_sufficient(m);
        closed["golden_ratio_condition"] = tasks::golden_ratio_condition(m);
    }
    if (inst.info) {
        const infogain::InfoGainModel& m = *inst.info;
        auto upper = infogain::eta_hat_upper_bound(m);
        closed["eta_hat_lower"] = infogain::eta_hat_lower_bound(m);
        closed["eta_hat_lower_interval"] = infogain::eta_hat_lower_bound_interval(m);
        closed["eta_hat_upper_instance"] = upper.instance_bound;
        closed["eta_hat_upper_interval"] = upper.interval_bound;
        closed["greedy_first_split"] = infogain::greedy_first_split(m);
        closed["t2_condition_sufficient"] = infogain::t2_condition_sufficient(m);
        auto witness = infogain::submodularity_witness(m, config.tol, budget);
        closed["noise_nondecreasing"] = witness.non_decreasing;
        if (!witness.non_decreasing) {
            json w;
            w["step_index"] = witness.step_index;
            w["prefix"] = witness.witness_prefix.key();
            w["longer"] = witness.witness_longer.key();
            w["action"] = witness.witness_action;
            w["gain_after"] = witness.gain_after;
            w["gain_before"] = witness.gain_before;
            w["violation_confirmed"] = witness.violation_confirmed;
            closed["diminishing_return_witness"] = w;
        }
    }

    if (config.output_format == "json") {
        json out;
        json list = json::array();
        for (const CurvatureReport& r : reports) list.push_back(io::curvature_report_to_json(r));
        out["reports"] = list;
        if (!closed.empty()) out["closed_forms"] = closed;
        emit(config, out.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "kind,value,witness_a,witness_b,witness_m,search_len\n";
        for (const CurvatureReport& r : reports) {
            out << curvature_kind_name(r.kind) << ',' << io::format_double(r.value) << ',';
            if (r.witness_a >= 0) out << r.witness_a;
            out << ',';
            if (r.witness_b >= 0) out << r.witness_b;
            out << ",\"" << r.witness_m.key() << "\"," << r.search_len << '\n';
        }
        for (const auto& [key, value] : closed.items()) {
            if (value.is_number())
                out << key << ',' << io::format_double(value.get<double>()) << ",,,,\n";
            else if (value.is_boolean())
                out << key << ',' << (value.get<bool>() ? "true" : "false") << ",,,,\n";
        }
        emit(config, out.str());
    }
    return kOk;
}

inline int run_bounds(const RunConfig& config, const LoadedInstance& inst) {
    ProblemSpec spec{inst.num_actions, inst.horizon, inst.oracle};
    BoundSuiteOptions options;
    options.tol = config.tol;
    options.budget = EnumerationBudget{config.budget};
    std::optional<StringMatroid> constraint =
        inst.matroid_is_uniform ? std::nullopt : inst.matroid;
    BoundSuiteResult result = run_bound_suite(spec, constraint, options);
    emit(config, config.output_format == "json"
                     ? io::bound_suite_to_json(result).dump(2) + "\n"
                     : io::bound_suite_csv(result));
    return result.any_failure() ? kBoundFailed : kOk;
}

inline int run_validate_matroid(const RunConfig& config, const LoadedInstance& inst) {
    if (!inst.matroid)
        throw InputError("validate-matroid: instance has no matroid section");
    MatroidValidationReport report =
        validate_axioms(*inst.matroid, inst.num_actions, EnumerationBudget{config.budget});
    if (config.output_format == "json") {
        emit(config, io::matroid_report_to_json(report).dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "axiom,m,n,detail\n";
        for (const MatroidViolation& v : report.violations) {
            const char* axiom = v.axiom == MatroidAxiom::non_empty      ? "non_empty"
                                : v.axiom == MatroidAxiom::hereditary   ? "hereditary"
                                : v.axiom == MatroidAxiom::augmentation ? "augmentation"
                                                                        : "has_maximal_string";
            out << axiom << ",\"" << v.m.key() << "\",\"" << v.n.key() << "\"," << v.detail
                << '\n';
        }
        emit(config, out.str());
    }
    return kOk;
}

// ─── Sweeps ───────────────────────────────────────────────────

struct SweepRow {
    std::string param;
    double value = 0.0;
    BoundSuiteResult suite;
    json extras = json::object();
};

inline void append_row_csv(std::ostringstream& out, const SweepRow& row,
                           const std::vector<std::string>& extra_columns) {
    const BoundSuiteResult& r = row.suite;
    out << row.param << ',' << io::format_double(row.value) << ','
        << io::format_double(r.f_greedy) << ',' << io::format_double(r.f_optimal) << ','
        << io::format_double(r.measured_ratio) << ','
        << (r.sigma_known ? io::format_double(r.sigma_opt) : std::string()) << ','
        << io::format_double(r.max_eps_before_last) << ','
        << io::format_double(r.eps_full) << ','
        << (r.eta_known ? io::format_double(r.eta) : std::string());
    int failed = 0;
    for (BoundId id : kAllBoundIds)
        if (r.check(id).failed()) ++failed;
    out << ',' << failed;
    for (BoundId id : kAllBoundIds) {
        const BoundCheck& c = r.check(id);
        out << ',';
        if (c.hypotheses_met) out << io::format_double(c.guaranteed_ratio);
    }
    for (const std::string& column : extra_columns) {
        out << ',';
        if (row.extras.contains(column)) {
            const json& v = row.extras.at(column);
            if (v.is_number())
                out << io::format_double(v.get<double>());
            else
                out << v.dump();
        }
    }
    out << '\n';
}

inline int run_sweep(const RunConfig& config, const json& doc) {
    if (!doc.contains("sweep")) throw InputError("sweep: instance has no sweep section");
    const json& sweep = doc.at("sweep");
    std::string param = sweep.at("param").get<std::string>();
    std::vector<double> values = sweep.at("values").get<std::vector<double>>();

    BoundSuiteOptions options;
    options.tol = config.tol;
    options.budget = EnumerationBudget{config.budget};

    std::vector<std::string> extra_columns;
    if (param == "U") extra_columns = {"sigma_hat_closed", "eta_upper"};
    if (param == "b") extra_columns = {"eta_hat_lower", "eta_hat_upper", "eta_hat"};

    std::vector<SweepRow> rows;
    for (std::size_t index = 0; index < values.size(); ++index) {
        double value = values[index];
        SweepRow row;
        row.param = param;
        row.value = value;

        if (param == "seed") {
            const json& generator = doc.at("generator");
            int num_actions = generator.at("num_actions").get<int>();
            int horizon = generator.at("K").get<int>();
            std::string kind = generator.value("kind", "random_submodular");
            std::uint64_t seed = static_cast<std::uint64_t>(value);
            TableOracle table =
                kind == "random_decay"      ? gen::random_decay_table(num_actions, horizon, seed)
                : kind == "random_coverage" ? gen::random_coverage_table(num_actions, horizon, seed)
                                            : gen::random_submodular_table(num_actions, horizon, seed);
            ProblemSpec spec{num_actions, horizon, table.as_objective()};
            std::optional<StringMatroid> matroid;
            if (doc.contains("matroid"))
                matroid = io::matroid_from_json(doc.at("matroid"), horizon);
            row.suite = run_bound_suite(spec, matroid, options);
        } else if (param == "K") {
            json adjusted = doc;
            adjusted["K"] = static_cast<int>(value);
            RunConfig sub = config;
            LoadedInstance inst = load_instance(adjusted, sub);
            ProblemSpec spec{inst.num_actions, inst.horizon, inst.oracle};
            row.suite = run_bound_suite(spec, inst.matroid, options);
        } else if (param == "U") {
            const json& generator = doc.at("generator");
            int num_actions = generator.at("num_actions").get<int>();
            int horizon = generator.at("K").get<int>();
            int subtasks = generator.value("n", 1);
            double lo = generator.at("L").get<double>();
            if (value <= lo) throw InputError("sweep U: value must exceed L");
            std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ull + index);
            std::vector<double> lower(num_actions, lo), upper(num_actions, value);
            std::vector<std::vector<std::vector<double>>> probs(subtasks);
            const int depth = 3 * horizon - 1;
            for (int i = 0; i < subtasks; ++i) {
                probs[i].assign(depth, std::vector<double>(num_actions));
                for (int j = 0; j < depth; ++j)
                    for (Action a = 0; a < num_actions; ++a)
                        probs[i][j][a] = gen::uniform(rng, lo, value);
            }
            tasks::TaskModel model =
                tasks::make_task_model(subtasks, horizon, probs, lower, upper);
            ProblemSpec spec{num_actions, horizon, tasks::task_objective(model)};
            row.suite = run_bound_suite(spec, std::nullopt, options);
            row.extras["sigma_hat_closed"] = tasks::sigma_hat_closed_form(model);
            row.extras["eta_upper"] = tasks::eta_upper_bound(model);
        } else if (param == "b") {
            const json& generator = doc.at("generator");
            int horizon = generator.at("K").get<int>();
            double dev_lo = generator.value("a", 0.5);
            if (value < dev_lo) throw InputError("sweep b: value must be >= a");
            infogain::InfoGainModel model = gen::random_infogain(
                horizon, config.seed + index, false, dev_lo, value);
            ProblemSpec spec{model.num_actions(), horizon,
                             infogain::infogain_objective(model)};
            row.suite = run_bound_suite(spec, std::nullopt, options);
            auto upper = infogain::eta_hat_upper_bound(model);
            row.extras["eta_hat_lower"] = infogain::eta_hat_lower_bound(model);
            row.extras["eta_hat_upper"] = upper.instance_bound;
            row.extras["eta_hat"] =
                restricted_elemental_curvature(infogain::infogain_objective(model),
                                               model.num_actions(), horizon, options.budget)
                    .value;
        } else {
            throw InputError("sweep: unknown param '" + param + "'");
        }
        rows.push_back(std::move(row));
    }

    bool any_failed = false;
    if (config.output_format == "json") {
        json out = json::array();
        for (const SweepRow& row : rows) {
            json item;
            item["param"] = row.param;
            item["value"] = row.value;
            item["suite"] = io::bound_suite_to_json(row.suite);
            if (!row.extras.empty()) item["extras"] = row.extras;
            out.push_back(item);
            any_failed = any_failed || row.suite.any_failure();
        }
        detail::emit(config, out.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "param,value,f_greedy,f_optimal,ratio,sigma_opt,max_eps_prefix,eps_full,eta,"
               "failed";
        for (BoundId id : kAllBoundIds) out << ",guar_" << bound_id_name(id);
        for (const std::string& column : extra_columns) out << ',' << column;
        out << '\n';
        for (const SweepRow& row : rows) {
            append_row_csv(out, row, extra_columns);
            any_failed = any_failed || row.suite.any_failure();
        }
        detail::emit(config, out.str());
    }
    return any_failed ? kBoundFailed : kOk;
}

}  // namespace detail

// Dispatches a configured run. Returns the process exit status: 0 success,
// 1 a hypotheses-met bound check measured below its guarantee, 2 input
// error, 3 enumeration budget exceeded.
inline int run(const RunConfig& config) {
    try {
        if (config.instance_path.empty()) throw InputError("no instance file given");
        json doc = io::parse_json_file(config.instance_path);
        if (config.command == "sweep") return detail::run_sweep(config, doc);
        LoadedInstance inst = load_instance(doc, config);
        if (config.command == "solve") return detail::run_solve(config, inst);
        if (config.command == "curvature") return detail::run_curvature(config, inst);
        if (config.command == "bounds") return detail::run_bounds(config, inst);
        if (config.command == "validate-matroid")
            return detail::run_validate_matroid(config, inst);
        throw InputError("unknown command '" + config.command + "'");
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudgetExceeded;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace strsub::cli
