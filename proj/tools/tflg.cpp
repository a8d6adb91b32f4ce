#include <tflg/acceptance.hpp>
#include <tflg/errors.hpp>
#include <tflg/expcli.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#ifndef TFLG_CONFIG_DIR
#define TFLG_CONFIG_DIR "configs"
#endif

namespace {

int cmd_run(const std::string& experiment, const std::string& config, std::optional<std::uint64_t> seed,
            std::string out)
{
    auto cfg = tflg::ExperimentConfig::load(config);
    if (cfg.experiment != experiment) {
        throw tflg::config_error("config " + config + " is for '" + cfg.experiment + "', not '" + experiment + "'");
    }
    if (seed) cfg.seed = *seed;
    if (out.empty()) out = "out/" + experiment;

    const auto result = tflg::run_experiment(cfg);
    for (const auto& path : tflg::write_outputs(result, cfg, out)) std::cout << "wrote " << path << '\n';
    for (const auto& a : result.assertions) {
        std::cout << (a.passed ? "PASS " : "FAIL ") << a.id << ": " << a.detail << '\n';
    }
    if (!result.passed()) {
        std::cerr << tflg::failure_report(result).dump() << '\n';
        return 1;
    }
    return 0;
}

int cmd_check(const std::string& config_dir, const std::string& out)
{
    const auto results = tflg::run_acceptance({config_dir, out}, std::cout);
    const auto report = tflg::acceptance_report(results);
    if (!report["passed"].get<bool>()) {
        std::cerr << report.dump() << '\n';
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Local Gabor frames on time-frequency regions: experiment runner"};
    app.require_subcommand(1);

    std::string experiment, config, out;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "run one experiment and write CSV tables and masks");
    run->add_option("experiment", experiment, "exp1 | exp2 | exp3 | bounds")
        ->required()
        ->check(CLI::IsMember({"exp1", "exp2", "exp3", "bounds"}));
    run->add_option("--config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--out", out, "output directory (default out/<experiment>)");

    std::string config_dir = TFLG_CONFIG_DIR, check_out = "tflg_check";
    auto* check = app.add_subcommand("check", "run the full acceptance suite");
    check->add_option("--config-dir", config_dir, "directory holding exp1/exp2/exp3/bounds.json")
        ->check(CLI::ExistingDirectory);
    check->add_option("--out", check_out, "scratch directory for the two determinism runs");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(experiment, config, seed, out);
        return cmd_check(config_dir, check_out);
    } catch (const tflg::error& e) {
        std::cerr << nlohmann::json{{"passed", false}, {"failures", {{{"id", "error"}, {"detail", e.what()}}}}}.dump() << '\n';
        return 2;
    }
}
