// Command-line front end: loads an instance file, runs strategies,
// curvature computations, bound suites, matroid validation, or parameter
// sweeps, and writes CSV/JSON reports.

#include <string>
#include <vector>

#include "CLI11.hpp"

#include "strsub/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"greedy strategies and curvature bounds for string submodular objectives"};

    strsub::cli::RunConfig config;
    app.add_option("--cmd", config.command,
                   "command: solve | curvature | bounds | validate-matroid | sweep")
        ->required();
    app.add_option("--instance", config.instance_path, "instance JSON file")->required();
    app.add_option("--model", config.model_kind, "instance model: table | tasks | infogain")
        ->default_val("table");
    app.add_option("--out", config.output_path, "output file (default: stdout)");
    app.add_option("--format", config.output_format, "output format: csv | json")
        ->default_val("csv");
    app.add_option("--tol", config.tol, "absolute tolerance for checks")
        ->default_val(strsub::kDefaultTol);
    app.add_option("--budget", config.budget, "oracle evaluation cap per operation")
        ->default_val(2'000'000);
    app.add_option("--seed", config.seed, "seed for randomized sweep instances")
        ->default_val(0);
    app.add_option("--grid", config.grid_override,
                   "power-split grid override for infogain instances")
        ->delimiter(',');
    app.add_option("--search-len", config.search_len,
                   "string-length window for curvature enumeration")
        ->default_val(-1);

    CLI11_PARSE(app, argc, argv);
    return strsub::cli::run(config);
}
