// qtt: batch front-end: run canned or configured sweeps, list scenarios, run the invariant suite.
#include "qtt/checks.hpp"
#include "qtt/scenarios.hpp"
#include "qtt/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    CLI::App app{"three-qubit quantum thermal transistor simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario and write <out>/<scenario>.csv + .manifest");
    std::string scenario;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> jobs;
    bool serial = false;
    run->add_option("scenario", scenario, "canned scenario name, or 'custom' with --config")->required();
    run->add_option("--config", config_path, "key = value config file overriding the scenario defaults")
        ->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "master seed for random initial states");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--jobs", jobs, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    run->add_flag("--serial", serial, "use the serial reference loop instead of OpenMP");

    auto* list = app.add_subcommand("list", "print the scenario catalog as JSON");
    auto* chk = app.add_subcommand("check", "run the invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            qtt::write_catalog(std::cout);
            return 0;
        }
        if (chk->parsed()) {
            return qtt::report_checks(std::cout, qtt::run_invariant_checks()) ? 0 : 1;
        }

        qtt::SweepConfig cfg;
        if (scenario == "custom") {
            cfg.scenario = "custom";
            cfg.tb_grid = qtt::default_tb_grid();
            cfg.times = qtt::kDefaultTimes;
        } else {
            cfg = qtt::scenario_config(scenario);
        }
        if (!config_path.empty()) qtt::apply_config_file(cfg, config_path);
        if (seed) cfg.master_seed = *seed;
        if (out_dir) cfg.out_dir = *out_dir;
        if (jobs) cfg.jobs = *jobs;
        cfg.validate();

        const auto exec = serial ? qtt::Execution::kSerial : qtt::Execution::kParallel;
        const auto out = qtt::run_scenario(cfg, exec);
        std::cout << "wrote " << out.result.records.size() << " rows to " << out.csv.string() << " in "
                  << out.result.seconds << " s";
        if (!out.result.failures.empty()) std::cout << " (" << out.result.failures.size() << " failed points)";
        std::cout << "\nmanifest: " << out.manifest.string() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "qtt: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
