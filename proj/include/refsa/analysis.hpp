#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "refsa/controller.hpp"
#include "refsa/crossbar.hpp"

namespace refsa {

/// Configuration of one detection study: per state and trial, program the
/// state through the intermediate state on a fresh device draw, read it back
/// through the converter and compare.
struct MonteCarloConfig {
    int trials = 10000;
    std::uint64_t seed = 1;
    VariationProfile profile;
    std::vector<StateId> states = {S(1), S(2), S(3), S(4), S(5), S(6)};
    StateTable table = StateTable::defaults();
    AdcConfig adc = AdcConfig::from_table(StateTable::defaults());
    PhysicalModelParams params;

    void validate() const;
};

/// Margin between one adjacent state pair: the nominal current ratio, the
/// detection threshold between them, and whether the worst-case variation
/// bands cross that threshold.
struct MarginEntry {
    StateId upper; // higher-current state of the pair
    StateId lower;
    double current_ratio;           // I_upper / I_lower
    double threshold_ua;
    double upper_worst_low_ua;      // I_upper * (1 - bound_upper)
    double lower_worst_high_ua;     // I_lower * (1 + bound_lower)
    bool overlap;                   // a worst-case band crosses the threshold
};

std::vector<MarginEntry> margin_report(const StateTable& table,
                                       const VariationProfile& profile);

struct StateDetectionStats {
    StateId state;
    int trials = 0;
    int misdetections = 0;
    double min_current_ua = 0.0;
    double max_current_ua = 0.0;
    double mean_abs_rel_deviation = 0.0; // mean |I - I_nom| / I_nom
    std::array<int, StateId::kCount> detected_as{}; // histogram by level
};

struct DetectionReport {
    std::vector<StateDetectionStats> per_state;
    int total_trials = 0;
    int total_misdetections = 0;
    double error_rate = 0.0; // misdetections / (trials * states)
    std::vector<MarginEntry> margins;

    bool pair_flagged(StateId upper, StateId lower) const;
    double mean_abs_rel_deviation(StateId state) const;
    void write_csv(std::ostream& out) const;
    std::string summary_text() const;
};

/// Runs the detection study. Per-trial seeds are derived independently, so
/// the report is deterministic given (config, seed) and independent of any
/// execution order.
DetectionReport run_detection_mc(const MonteCarloConfig& config);

/// Aggregate energy/latency/cycle counts over everything a controller has
/// executed. Throws EmptyWorkload when nothing ran.
struct WorkloadStats {
    int write_cycles = 0;
    int read_cycles = 0;
    double total_energy_pj = 0.0;
    double mean_energy_per_transition_pj = 0.0;
    double write_latency_ns = 0.0;
    double read_latency_ns = 0.0;
    double total_latency_ns = 0.0;

    void write_csv(std::ostream& out) const;
    std::string summary_text() const;
};

WorkloadStats workload_report(const Controller& controller);

} // namespace refsa
