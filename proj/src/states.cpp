#include "refsa/states.hpp"

namespace refsa {

StateId StateId::parse(std::string_view name) {
    if (name.size() == 2 && (name[0] == 'S' || name[0] == 's') && name[1] >= '0' &&
        name[1] <= '6')
        return from_level(name[1] - '0');
    throw InvalidState("unknown state name: " + std::string(name));
}

std::array<StateId, 6> resting_states() {
    return {S(1), S(2), S(3), S(4), S(5), S(6)};
}

StateTable StateTable::defaults() {
    StateTable t;
    // width ns, current uA, resistance kOhm; the S0 width is the SET width.
    t.rows_ = {{
        {10.0, 12.8, 7.8},
        {5.0, 12.6, 8.0},
        {10.0, 1.6, 95.2},
        {15.0, 0.56, 196.1},
        {30.0, 0.3, 342.5},
        {60.0, 0.2, 588.2},
        {150.0, 0.07, 1492.5},
    }};
    return t;
}

void StateTable::set_voltages(double set_v, double reset_v, double read_v) {
    set_voltage_v_ = set_v;
    reset_voltage_v_ = reset_v;
    read_voltage_v_ = read_v;
}

StateId StateTable::state_for_exposure(double exposure_ns) const {
    if (exposure_ns < 0.0)
        throw OutOfRange("negative RESET exposure");
    int level = 0;
    for (int j = StateId::kFirstResting; j < StateId::kCount; ++j) {
        if (rows_[j].pulse_width_ns <= exposure_ns)
            level = j;
    }
    return StateId::from_level(level);
}

void StateTable::validate() const {
    for (int j = StateId::kFirstResting + 1; j < StateId::kCount; ++j) {
        if (rows_[j].pulse_width_ns <= rows_[j - 1].pulse_width_ns)
            throw ConfigError("state table widths must increase strictly from S1 to S6");
    }
    for (int j = 1; j < StateId::kCount; ++j) {
        if (rows_[j].current_ua >= rows_[j - 1].current_ua)
            throw ConfigError("state table currents must decrease strictly from S0 to S6");
        if (rows_[j].resistance_kohm <= rows_[j - 1].resistance_kohm)
            throw ConfigError("state table resistances must increase strictly from S0 to S6");
    }
    for (const StateRow& r : rows_) {
        if (r.pulse_width_ns <= 0.0 || r.pulse_width_ns > frame_period_ns_)
            throw ConfigError("state table pulse widths must lie in (0, frame period]");
        if (r.current_ua <= 0.0 || r.resistance_kohm <= 0.0)
            throw ConfigError("state table currents and resistances must be positive");
    }
}

void validate_pulse(const PulseSpec& pulse, const StateTable& table) {
    if (pulse.width_ns <= 0.0)
        throw ConfigError("pulse width must be positive");
    if (pulse.width_ns > pulse.frame_period_ns)
        throw ConfigError("pulse width exceeds the generator frame period");
    if (!table.is_canonical_amplitude(pulse.amplitude_v))
        throw WrongAmplitude("pulse amplitude " + std::to_string(pulse.amplitude_v) +
                             " V is not a canonical operating voltage");
}

} // namespace refsa
