#pragma once

#include <array>
#include <cstdint>

#include "refsa/physical_params.hpp"
#include "refsa/rng.hpp"
#include "refsa/states.hpp"

namespace refsa {

/// Stochastic read-current model. Low states (S0..S3) carry a wider
/// fractional envelope than high states (S4..S6). Draws are Gaussian with
/// sigma = bound / sigma_divisor, redrawn until they land inside
/// [1-bound, 1+bound]; the adversarial mode pins every draw at an envelope
/// edge instead.
///
/// Device-to-device factors are fixed per cell for its lifetime;
/// cycle-to-cycle factors are drawn fresh at every read. By default only the
/// device-to-device mechanism is active: the configured bounds describe the
/// total observed current excursion, and stacking both mechanisms at full
/// width would exceed it. Enabling both composes them multiplicatively.
struct VariationProfile {
    double low_state_bound = 0.5;  // applies to S0..S3
    double high_state_bound = 0.2; // applies to S4..S6
    double sigma_divisor = 3.0;    // sigma = bound / divisor
    bool d2d_enabled = true;
    bool c2c_enabled = false;
    bool uniform_at_bound = false; // adversarial worst-case mode

    static VariationProfile disabled() {
        VariationProfile p;
        p.d2d_enabled = false;
        p.c2c_enabled = false;
        return p;
    }

    bool any_enabled() const { return d2d_enabled || c2c_enabled; }

    double bound_for(StateId s) const {
        return s.level() <= 3 ? low_state_bound : high_state_bound;
    }
    double sigma_for(StateId s) const { return bound_for(s) / sigma_divisor; }

    void validate() const {
        if (low_state_bound < 0.0 || low_state_bound >= 1.0 || high_state_bound < 0.0 ||
            high_state_bound >= 1.0)
            throw ConfigError("variation bounds must lie in [0, 1)");
        if (sigma_divisor <= 0.0)
            throw ConfigError("variation sigma divisor must be positive");
    }

    bool operator==(const VariationProfile&) const = default;
};

/// Read-current multipliers, one per ladder state.
using StateMultipliers = std::array<double, StateId::kCount>;

constexpr StateMultipliers unit_multipliers() {
    return {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
}

/// One multiplier draw for the given state from the profile's distribution.
double draw_multiplier(Rng& rng, const VariationProfile& profile, StateId state);

/// Samples the fixed per-device multipliers for all seven states. The
/// physical parameter record identifies what is being varied; the draw maps
/// its spread directly onto read-current factors. Deterministic given seed.
StateMultipliers sample_d2d(const PhysicalModelParams& params,
                            const VariationProfile& profile, std::uint64_t seed);

} // namespace refsa
