#include "refsa/device.hpp"

#include <string>

namespace refsa {

CellDevice CellDevice::formed(std::uint64_t c2c_stream_seed) {
    CellDevice cell;
    cell.formed_ = true;
    cell.state_ = StateId{};
    cell.reset_exposure_ns_ = 0.0;
    cell.c2c_rng_ = Rng(c2c_stream_seed);
    return cell;
}

void CellDevice::apply_set(const StateTable& table, const PulseSpec& pulse) {
    if (pulse.amplitude_v != table.set_voltage_v())
        throw WrongAmplitude("SET requires " + std::to_string(table.set_voltage_v()) +
                             " V, got " + std::to_string(pulse.amplitude_v) + " V");
    const double min_width = table.width_ns(StateId{});
    if (pulse.width_ns < min_width)
        throw PulseTooShort("SET width " + std::to_string(pulse.width_ns) +
                            " ns is below the switching width of " +
                            std::to_string(min_width) + " ns");
    formed_ = true;
    state_ = StateId{};
    reset_exposure_ns_ = 0.0;
}

void CellDevice::apply_reset(const StateTable& table, const PulseSpec& pulse) {
    if (pulse.amplitude_v != table.reset_voltage_v())
        throw WrongAmplitude("RESET requires " + std::to_string(table.reset_voltage_v()) +
                             " V, got " + std::to_string(pulse.amplitude_v) + " V");
    if (!formed_)
        throw NeverFormed("RESET applied to a device that was never SET");
    reset_exposure_ns_ += pulse.width_ns;
    state_ = table.state_for_exposure(reset_exposure_ns_);
}

double CellDevice::read_current(const StateTable& table, double v_read,
                                const VariationProfile& profile) {
    if (v_read != table.read_voltage_v())
        throw WrongAmplitude("read requires " + std::to_string(table.read_voltage_v()) +
                             " V, got " + std::to_string(v_read) + " V");
    double current = table.current_ua(state_);
    if (profile.d2d_enabled)
        current *= d2d_[state_.level()];
    if (profile.c2c_enabled)
        current *= draw_multiplier(c2c_rng_, profile, state_);
    return current;
}

} // namespace refsa
