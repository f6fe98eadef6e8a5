#pragma once

#include <cstdint>

#include "refsa/rng.hpp"
#include "refsa/states.hpp"
#include "refsa/variation.hpp"

namespace refsa {

/// Behavioral model of one 1T1R cell.
///
/// A SET pulse lands the cell in the intermediate state S0 and clears its
/// cumulative RESET exposure. RESET pulses accumulate exposure, and the state
/// is always the one the calibration table maps that exposure to, so the
/// ladder only moves forward between SETs. Reads are non-destructive and
/// return the state's nominal current scaled by the enabled variation
/// factors.
class CellDevice {
public:
    /// A virgin device: never formed, RESET pulses are rejected until the
    /// first SET.
    CellDevice() = default;

    /// A device already formed into the intermediate state, with the given
    /// cycle-to-cycle draw stream.
    static CellDevice formed(std::uint64_t c2c_stream_seed);

    StateId state() const { return state_; }
    double reset_exposure_ns() const { return reset_exposure_ns_; }
    bool is_formed() const { return formed_; }

    const StateMultipliers& d2d_multipliers() const { return d2d_; }
    void set_d2d_multipliers(const StateMultipliers& m) { d2d_ = m; }
    void reseed_c2c(std::uint64_t seed) { c2c_rng_ = Rng(seed); }

    /// SET: requires the SET voltage and at least the calibration SET width.
    /// Longer pulses still land in S0.
    void apply_set(const StateTable& table, const PulseSpec& pulse);

    /// RESET: requires the RESET voltage and a formed device. Adds the pulse
    /// width to the cumulative exposure and moves the state forward
    /// accordingly; saturates at the top of the ladder.
    void apply_reset(const StateTable& table, const PulseSpec& pulse);

    /// Read current in uA at the given read voltage. Applies the fixed
    /// per-device factor and a fresh cycle-to-cycle draw when the profile
    /// enables them. State and exposure are unchanged.
    double read_current(const StateTable& table, double v_read,
                        const VariationProfile& profile);

private:
    StateId state_{};
    double reset_exposure_ns_ = 0.0;
    bool formed_ = false;
    StateMultipliers d2d_ = unit_multipliers();
    Rng c2c_rng_{0};
};

} // namespace refsa
