#include "refsa/analysis.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "refsa/device.hpp"
#include "refsa/rng.hpp"

namespace refsa {

namespace {
constexpr std::uint64_t kTrialTag = 0x7472;  // per-trial substream
constexpr std::uint64_t kDeviceTag = 0xd3f0; // per-trial device draw
} // namespace

void MonteCarloConfig::validate() const {
    if (trials < 1)
        throw ConfigError("detection study needs at least one trial");
    if (states.empty())
        throw ConfigError("detection study needs at least one state under test");
    for (StateId s : states) {
        if (!s.is_resting())
            throw ConfigError("only resting states can be under test");
    }
    profile.validate();
    table.validate();
    adc.validate();
}

std::vector<MarginEntry> margin_report(const StateTable& table,
                                       const VariationProfile& profile) {
    // Midpoints are computed inline rather than through default_thresholds:
    // the report must still describe a degenerate pair (ratio 1, flagged)
    // instead of refusing to build a converter for it.
    std::vector<MarginEntry> entries;
    for (int j = StateId::kFirstResting; j < StateId::kCount - 1; ++j) {
        const StateId upper = S(j), lower = S(j + 1);
        MarginEntry e{};
        e.upper = upper;
        e.lower = lower;
        e.current_ratio = table.current_ua(upper) / table.current_ua(lower);
        e.threshold_ua = std::sqrt(table.current_ua(upper) * table.current_ua(lower));
        e.upper_worst_low_ua =
            table.current_ua(upper) * (1.0 - profile.bound_for(upper));
        e.lower_worst_high_ua =
            table.current_ua(lower) * (1.0 + profile.bound_for(lower));
        e.overlap = e.current_ratio <= 1.0 ||
                    e.upper_worst_low_ua < e.threshold_ua ||
                    e.lower_worst_high_ua >= e.threshold_ua;
        entries.push_back(e);
    }
    return entries;
}

bool DetectionReport::pair_flagged(StateId upper, StateId lower) const {
    for (const MarginEntry& e : margins) {
        if (e.upper == upper && e.lower == lower)
            return e.overlap;
    }
    return false;
}

double DetectionReport::mean_abs_rel_deviation(StateId state) const {
    for (const StateDetectionStats& s : per_state) {
        if (s.state == state)
            return s.mean_abs_rel_deviation;
    }
    throw OutOfRange("state " + state.name() + " was not under test");
}

DetectionReport run_detection_mc(const MonteCarloConfig& config) {
    config.validate();
    DetectionReport report;
    report.margins = margin_report(config.table, config.profile);

    for (StateId state : config.states) {
        StateDetectionStats stats;
        stats.state = state;
        stats.trials = config.trials;
        const double nominal = config.table.current_ua(state);
        double abs_rel_sum = 0.0;
        double min_ua = 0.0, max_ua = 0.0;

        for (int trial = 0; trial < config.trials; ++trial) {
            const std::uint64_t trial_seed =
                derive_seed(config.seed, kTrialTag + state.level(), trial);

            // Fresh device draw, then program the state through the
            // intermediate state and read it back once.
            CellDevice cell = CellDevice::formed(derive_seed(trial_seed, kDeviceTag));
            if (config.profile.d2d_enabled)
                cell.set_d2d_multipliers(
                    sample_d2d(config.params, config.profile, trial_seed));
            cell.apply_set(config.table, config.table.set_pulse());
            cell.apply_reset(config.table, config.table.reset_pulse_for(state));

            const double current = cell.read_current(
                config.table, config.table.read_voltage_v(), config.profile);
            const StateId detected = adc_quantize(current, config.adc);

            if (detected != state)
                ++stats.misdetections;
            ++stats.detected_as[static_cast<std::size_t>(detected.level())];
            abs_rel_sum += std::abs(current - nominal) / nominal;
            if (trial == 0) {
                min_ua = max_ua = current;
            } else {
                min_ua = std::min(min_ua, current);
                max_ua = std::max(max_ua, current);
            }
        }

        stats.min_current_ua = min_ua;
        stats.max_current_ua = max_ua;
        stats.mean_abs_rel_deviation = abs_rel_sum / config.trials;
        report.per_state.push_back(stats);
        report.total_trials += stats.trials;
        report.total_misdetections += stats.misdetections;
    }

    report.error_rate = static_cast<double>(report.total_misdetections) /
                        static_cast<double>(report.total_trials);
    return report;
}

namespace {
std::string fmt(double value) {
    std::ostringstream out;
    out << std::setprecision(12) << value;
    return out.str();
}
} // namespace

void DetectionReport::write_csv(std::ostream& out) const {
    out << "state,trials,misdetections,error_rate,min_current_uA,max_current_uA,"
           "mean_abs_rel_deviation\n";
    for (const StateDetectionStats& s : per_state) {
        out << s.state.name() << ',' << s.trials << ',' << s.misdetections << ','
            << fmt(static_cast<double>(s.misdetections) / s.trials) << ','
            << fmt(s.min_current_ua) << ',' << fmt(s.max_current_ua) << ','
            << fmt(s.mean_abs_rel_deviation) << '\n';
    }
    out << "overall," << total_trials << ',' << total_misdetections << ','
        << fmt(error_rate) << ",,,\n";
}

std::string DetectionReport::summary_text() const {
    std::ostringstream out;
    out << "detection study: " << total_misdetections << " misdetections in "
        << total_trials << " trials (error rate " << fmt(error_rate) << ")\n";
    for (const StateDetectionStats& s : per_state) {
        out << "  " << s.state.name() << ": " << s.misdetections << '/' << s.trials
            << " misdetected, current range [" << fmt(s.min_current_ua) << ", "
            << fmt(s.max_current_ua) << "] uA, mean |dI|/I "
            << fmt(s.mean_abs_rel_deviation) << '\n';
    }
    out << "margins (threshold in uA, worst-case bands under the profile):\n";
    for (const MarginEntry& e : margins) {
        out << "  " << e.upper.name() << '/' << e.lower.name() << ": ratio "
            << fmt(e.current_ratio) << ", threshold " << fmt(e.threshold_ua)
            << ", bands [" << fmt(e.upper_worst_low_ua) << " | "
            << fmt(e.lower_worst_high_ua) << "]"
            << (e.overlap ? "  ** worst-case overlap **" : "") << '\n';
    }
    return out.str();
}

void WorkloadStats::write_csv(std::ostream& out) const {
    out << "write_cycles,read_cycles,total_energy_pJ,mean_energy_per_transition_pJ,"
           "write_latency_ns,read_latency_ns,total_latency_ns\n";
    out << write_cycles << ',' << read_cycles << ',' << fmt(total_energy_pj) << ','
        << fmt(mean_energy_per_transition_pj) << ',' << fmt(write_latency_ns) << ','
        << fmt(read_latency_ns) << ',' << fmt(total_latency_ns) << '\n';
}

std::string WorkloadStats::summary_text() const {
    std::ostringstream out;
    out << "workload: " << write_cycles << " write cycles, " << read_cycles
        << " read cycles\n"
        << "  energy: " << fmt(total_energy_pj) << " pJ total, "
        << fmt(mean_energy_per_transition_pj) << " pJ per transition\n"
        << "  latency: " << fmt(write_latency_ns) << " ns writes + "
        << fmt(read_latency_ns) << " ns reads = " << fmt(total_latency_ns) << " ns\n";
    return out.str();
}

WorkloadStats workload_report(const Controller& controller) {
    if (controller.write_cycles() == 0 && controller.read_cycles() == 0)
        throw EmptyWorkload("no cycles were executed");
    WorkloadStats stats;
    stats.write_cycles = controller.write_cycles();
    stats.read_cycles = controller.read_cycles();
    stats.total_energy_pj = controller.total_energy_pj();
    stats.mean_energy_per_transition_pj =
        controller.write_cycles() > 0
            ? controller.total_energy_pj() / controller.write_cycles()
            : 0.0;
    stats.write_latency_ns = controller.write_latency_ns();
    stats.read_latency_ns = controller.read_latency_ns();
    stats.total_latency_ns = stats.write_latency_ns + stats.read_latency_ns;
    return stats;
}

} // namespace refsa
