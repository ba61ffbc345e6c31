// chemolab: exponent tables, single runs and parameter sweeps.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chemolab/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"chemolab: chemotaxis with singular sensitivity, exponent calculus and simulator"};
    app.require_subcommand(1);

    chemolab::ExponentsOptions ex;
    std::string ex_csv;
    auto* exponents = app.add_subcommand("exponents", "thresholds, c0/c_sup and the bootstrap chain");
    exponents->add_option("--chi", ex.chi, "chemotactic sensitivity")->required();
    exponents->add_option("--k", ex.k, "chemical diffusivity")->required();
    exponents->add_option("--n", ex.n, "space dimension")->required();
    exponents->add_option("--theta", ex.theta, "fraction of each selection interval")->capture_default_str();
    exponents->add_option("--max-steps", ex.max_steps, "bootstrap step limit")->capture_default_str();
    exponents->add_option("--csv", ex_csv, "also write the chain as CSV");

    std::string run_config;
    std::string run_out = ".";
    std::vector<std::string> overrides;
    auto* run = app.add_subcommand("run", "integrate one configuration");
    run->add_option("config", run_config, "run configuration file")->required();
    run->add_option("--out", run_out, "output directory")->capture_default_str();
    run->add_option("--set", overrides, "override a config key, e.g. --set model.chi=0.7");

    std::string sweep_spec;
    std::string sweep_out = ".";
    std::optional<int> parallelism;
    auto* sweep = app.add_subcommand("sweep", "run a (chi, k) grid");
    sweep->add_option("spec", sweep_spec, "sweep specification file")->required();
    sweep->add_option("--out", sweep_out, "output directory")->capture_default_str();
    sweep->add_option("--parallelism", parallelism, "concurrent sweep points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : chemolab::exit_code::input_error;
    }

    if (*exponents) {
        if (!ex_csv.empty()) ex.csv = ex_csv;
        return chemolab::cmd_exponents(ex, std::cout, std::cerr);
    }
    if (*run) return chemolab::cmd_run(run_config, run_out, overrides, std::cout, std::cerr);
    return chemolab::cmd_sweep(sweep_spec, sweep_out, parallelism, std::cout, std::cerr);
}
