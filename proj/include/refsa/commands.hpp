#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "refsa/config.hpp"

namespace refsa {

// Exit codes of the command layer.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitExecutionError = 2;

/// CSV exporters shared by the commands.
void write_cycle_traces_csv(std::ostream& out, const std::vector<CycleTrace>& traces);
void write_transition_ledger_csv(std::ostream& out,
                                 const std::vector<TransitionRecord>& records);
void write_readouts_csv(std::ostream& out, const std::vector<ReadoutRecord>& readouts);
void write_margin_csv(std::ostream& out, const std::vector<MarginEntry>& margins);
void write_krinsky_csv(std::ostream& out, const KrinskyTrajectory& trajectory);

/// Executes the configured workload and writes states.csv, cycles.csv,
/// ledger.csv, readouts.csv, summary.txt and effective_config.json into the
/// output directory. `diagnostics` receives human-readable errors.
int cmd_simulate(const ScenarioConfig& config, std::ostream& diagnostics);

/// Runs the detection study and writes detection_report.csv plus summary.
int cmd_montecarlo(const ScenarioConfig& config, std::ostream& diagnostics);

/// Runs the learning automaton and writes trajectory.csv plus summary.
int cmd_krinsky(const ScenarioConfig& config, std::ostream& diagnostics);

/// Writes the margin and energy reports for the configured calibration.
int cmd_report(const ScenarioConfig& config, std::ostream& diagnostics);

} // namespace refsa
