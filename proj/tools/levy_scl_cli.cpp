#include <CLI11.hpp>

#include <iostream>

#include "levy_scl/errors.hpp"
#include "levy_scl/experiments.hpp"
#include "levy_scl/presets.hpp"

using namespace levy_scl;

namespace {

int cmd_run(const std::string& config_path, const std::string& out, std::optional<std::size_t> paths,
            std::optional<std::uint64_t> seed, std::optional<std::size_t> threads) {
    ExperimentConfig cfg = parse_config(config_path);
    if (paths) cfg.paths = *paths;
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    const ExperimentReport report = run_experiment(cfg);
    emit_report(report, out);
    write_summary(std::cout, report);
    return report.passed() ? 0 : 2;
}

int cmd_validate(const std::string& config_path) {
    const ExperimentConfig cfg = parse_config(config_path);
    for (const auto& w : validate(cfg)) std::cout << "warning: " << w << '\n';
    std::cout << config_path << ": ok (" << to_string(cfg.kind) << ")\n";
    return 0;
}

int cmd_presets() {
    for (const auto& p : preset_catalog()) {
        std::cout << p.family << "." << p.kind << ": " << p.description << '\n';
        for (const auto& [key, value] : p.defaults) std::cout << "    " << key << " = " << value << '\n';
    }
    std::cout << "\nnoise.kind: zero | linear, with noise.x_dependence none | bump\n"
              << "measure.kind: atomic | power_law\n\n"
              << config_schema();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo experiments for scalar conservation laws with Levy jump noise"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "levy-scl-out";
    std::optional<std::size_t> paths, threads;
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "run an experiment and write its report");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory")->capture_default_str();
    run->add_option("--paths", paths, "override ensemble.paths");
    run->add_option("--seed", seed, "override ensemble.seed");
    run->add_option("--threads", threads, "override ensemble.threads");

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "parse and check a config without running it");
    val->add_option("config", validate_path, "config file")->required();

    auto* presets = app.add_subcommand("presets", "list presets and config keys");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*run) return cmd_run(config_path, out_dir, paths, seed, threads);
        if (*val) return cmd_validate(validate_path);
        if (*presets) return cmd_presets();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
