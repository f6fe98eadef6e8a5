#include "refsa/variation.hpp"

namespace refsa {

double draw_multiplier(Rng& rng, const VariationProfile& profile, StateId state) {
    const double bound = profile.bound_for(state);
    if (bound == 0.0)
        return 1.0;
    if (profile.uniform_at_bound)
        return (rng.next_u64() & 1u) ? 1.0 + bound : 1.0 - bound;
    return rng.next_truncated_gaussian(1.0, profile.sigma_for(state), 1.0 - bound,
                                       1.0 + bound);
}

StateMultipliers sample_d2d(const PhysicalModelParams& /*params*/,
                            const VariationProfile& profile, std::uint64_t seed) {
    StateMultipliers m = unit_multipliers();
    Rng rng(seed);
    for (int level = 0; level < StateId::kCount; ++level)
        m[level] = draw_multiplier(rng, profile, StateId::from_level(level));
    return m;
}

} // namespace refsa
