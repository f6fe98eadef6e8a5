#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "refsa/analysis.hpp"
#include "refsa/automaton.hpp"

namespace refsa {

/// What a simulation run executes.
struct WorkloadSpec {
    enum class Kind { Transitions, Fsa, Krinsky };
    Kind kind = Kind::Transitions;

    // Kind::Transitions — explicit commanded transitions on one cell.
    std::vector<std::pair<StateId, StateId>> transitions;

    // Kind::Fsa — a transition table plus an input string.
    std::optional<FsaSpec> fsa;
    std::optional<std::string> fsa_file; // loaded relative to the config file
    std::vector<int> inputs;

    // Kind::Krinsky — learning-automaton environment.
    std::optional<KrinskyEnvironment> krinsky_env;
    int krinsky_steps = 1000;
    StateId krinsky_initial = S(1);
};

/// Full scenario: device calibration, array size, variation, pricing,
/// workload and outputs. An empty config file reproduces the built-in
/// defaults. The JSON dump of a loaded config reloads to an identical run.
struct ScenarioConfig {
    CrossbarConfig crossbar;
    StateTable table = StateTable::defaults();
    VariationProfile profile;
    PhysicalModelParams params;
    EnergyLedger energy = EnergyLedger::defaults();
    LatencyLedger latency;
    std::optional<AdcConfig> adc; // derived from the table when absent
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::optional<WorkloadSpec> workload;
    int mc_trials = 10000;
    std::vector<StateId> mc_states = {S(1), S(2), S(3), S(4), S(5), S(6)};
    StateEncoding encoding = StateEncoding::Base6;
    RewritePolicy rewrite = RewritePolicy::ChangedDigitsOnly;

    AdcConfig effective_adc() const;
    MonteCarloConfig monte_carlo() const;

    static ScenarioConfig from_json(const nlohmann::json& j);
    static ScenarioConfig load(const std::filesystem::path& file);
    nlohmann::json to_json() const;
    void save(const std::filesystem::path& file) const;
};

} // namespace refsa
