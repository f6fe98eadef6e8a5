#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>

#include "refsa/errors.hpp"

namespace refsa {

/// One level of the seven-state cell ladder. Level 0 is the low-resistance
/// landing state every transition routes through; levels 1..6 are the resting
/// automaton states. States are totally ordered by level.
class StateId {
public:
    static constexpr int kCount = 7;        // S0..S6
    static constexpr int kFirstResting = 1; // S1 is the lowest resting state

    constexpr StateId() = default;

    static StateId from_level(int level) {
        if (level < 0 || level >= kCount)
            throw InvalidState("state level out of range: " + std::to_string(level));
        StateId s;
        s.level_ = level;
        return s;
    }

    static StateId parse(std::string_view name);

    constexpr int level() const { return level_; }
    std::string name() const { return "S" + std::to_string(level_); }

    constexpr bool is_intermediate() const { return level_ == 0; }
    constexpr bool is_resting() const { return level_ >= kFirstResting; }

    auto operator<=>(const StateId&) const = default;

private:
    int level_ = 0;
};

inline StateId S(int level) { return StateId::from_level(level); }

/// Resting states S1..S6 in ascending order, for iteration.
std::array<StateId, 6> resting_states();

/// One voltage pulse. Every pulse occupies one generator frame regardless of
/// its width, so width never exceeds the frame period.
struct PulseSpec {
    double amplitude_v = 0.0;
    double width_ns = 0.0;
    double frame_period_ns = 150.0;
};

struct StateRow {
    double pulse_width_ns;  // programming width from the intermediate state
    double current_ua;      // nominal read current at the read voltage
    double resistance_kohm; // nominal resistance, carried as metadata only
};

/// Per-state switching calibration: pulse widths, read currents and
/// resistances, plus the three canonical operating voltages. The current
/// column is authoritative for sensing; the resistance column is metadata
/// (the configured defaults are not exactly V/R consistent).
class StateTable {
public:
    static StateTable defaults();

    const StateRow& row(StateId s) const { return rows_[s.level()]; }
    void set_row(StateId s, StateRow r) { rows_[s.level()] = r; }

    double width_ns(StateId s) const { return rows_[s.level()].pulse_width_ns; }
    double current_ua(StateId s) const { return rows_[s.level()].current_ua; }
    double resistance_kohm(StateId s) const { return rows_[s.level()].resistance_kohm; }

    double set_voltage_v() const { return set_voltage_v_; }
    double reset_voltage_v() const { return reset_voltage_v_; }
    double read_voltage_v() const { return read_voltage_v_; }
    double frame_period_ns() const { return frame_period_ns_; }

    void set_voltages(double set_v, double reset_v, double read_v);
    void set_frame_period_ns(double ns) { frame_period_ns_ = ns; }

    bool is_canonical_amplitude(double v) const {
        return v == set_voltage_v_ || v == reset_voltage_v_ || v == read_voltage_v_;
    }

    PulseSpec set_pulse() const {
        return {set_voltage_v_, rows_[0].pulse_width_ns, frame_period_ns_};
    }
    PulseSpec reset_pulse(double width_ns) const {
        return {reset_voltage_v_, width_ns, frame_period_ns_};
    }
    PulseSpec reset_pulse_for(StateId target) const {
        return reset_pulse(width_ns(target));
    }

    /// Maps cumulative RESET exposure to the state it lands in: the
    /// intermediate state below the first width, otherwise the largest level
    /// whose width fits in the exposure.
    StateId state_for_exposure(double exposure_ns) const;

    /// Throws ConfigError unless widths increase, currents decrease and
    /// resistances increase strictly along the ladder.
    void validate() const;

private:
    std::array<StateRow, StateId::kCount> rows_{};
    double set_voltage_v_ = -2.0;
    double reset_voltage_v_ = 1.8;
    double read_voltage_v_ = 0.1;
    double frame_period_ns_ = 150.0;
};

/// Throws unless the pulse is well formed (positive width, fits the frame,
/// canonical amplitude for this table).
void validate_pulse(const PulseSpec& pulse, const StateTable& table);

} // namespace refsa
