#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "refsa/commands.hpp"

namespace {

struct CommonOptions {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "scenario config file (JSON)");
    cmd->add_option("--seed", opts.seed, "override the master seed");
    cmd->add_option("--out", opts.out_dir, "override the output directory");
}

// Loads the config (or defaults) and applies flag/environment overrides.
refsa::ScenarioConfig make_config(const CommonOptions& opts) {
    refsa::ScenarioConfig config;
    if (opts.config_path)
        config = refsa::ScenarioConfig::load(*opts.config_path);
    if (const char* env_out = std::getenv("REFSA_OUT_DIR"); env_out && !opts.out_dir)
        config.out_dir = env_out;
    if (opts.seed)
        config.seed = *opts.seed;
    if (opts.out_dir)
        config.out_dir = *opts.out_dir;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral simulator of finite state automata on a 1T1R "
                 "multi-level ReRAM crossbar"};
    app.require_subcommand(1);

    CommonOptions sim_opts, mc_opts, krinsky_opts, report_opts;
    std::optional<int> trials, steps;

    CLI::App* simulate =
        app.add_subcommand("simulate", "execute a transition or automaton workload");
    add_common(simulate, sim_opts);

    CLI::App* montecarlo =
        app.add_subcommand("montecarlo", "run the variation detection study");
    add_common(montecarlo, mc_opts);
    montecarlo->add_option("--trials", trials, "trials per state under test");

    CLI::App* krinsky =
        app.add_subcommand("krinsky", "run the two-action learning automaton");
    add_common(krinsky, krinsky_opts);
    krinsky->add_option("--steps", steps, "number of learning steps");

    CLI::App* report =
        app.add_subcommand("report", "write margin and energy reports");
    add_common(report, report_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return refsa::cmd_simulate(make_config(sim_opts), std::cerr);
        if (montecarlo->parsed()) {
            refsa::ScenarioConfig config = make_config(mc_opts);
            if (trials) {
                if (*trials < 1) {
                    std::cerr << "error: --trials must be positive\n";
                    return refsa::kExitConfigError;
                }
                config.mc_trials = *trials;
            }
            return refsa::cmd_montecarlo(config, std::cerr);
        }
        if (krinsky->parsed()) {
            refsa::ScenarioConfig config = make_config(krinsky_opts);
            if (steps) {
                if (!config.workload ||
                    config.workload->kind != refsa::WorkloadSpec::Kind::Krinsky) {
                    std::cerr << "error: --steps requires a krinsky workload\n";
                    return refsa::kExitConfigError;
                }
                config.workload->krinsky_steps = *steps;
            }
            return refsa::cmd_krinsky(config, std::cerr);
        }
        if (report->parsed())
            return refsa::cmd_report(make_config(report_opts), std::cerr);
    } catch (const refsa::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return refsa::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return refsa::kExitExecutionError;
    }
    return refsa::kExitConfigError;
}
