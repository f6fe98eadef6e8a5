#pragma once

#include <map>
#include <optional>

#include "refsa/states.hpp"

namespace refsa {

/// Per-transition write energy in pJ, keyed by route and target state.
/// Energies are target-dominated (they grow with the target's pulse width),
/// so any route to the same target through the intermediate state is charged
/// the same. Lookups on targets the ledger does not carry throw
/// MissingLedgerEntry; see defaults() for how the two unmeasured entries are
/// filled in.
class EnergyLedger {
public:
    static EnergyLedger defaults();

    /// Cost of a plan that routes through the intermediate state.
    double via_intermediate_pj(StateId target) const;
    /// Cost of a single direct pulse from the intermediate state.
    double direct_pj(StateId target) const;

    void set_via_intermediate(StateId target, double pj);
    void set_direct(StateId target, double pj);
    std::optional<double> via_entry(StateId target) const;
    std::optional<double> direct_entry(StateId target) const;

    bool operator==(const EnergyLedger&) const = default;

private:
    std::map<int, double> via_pj_;
    std::map<int, double> direct_pj_;
};

/// Frame-count latency accounting. Every pulse occupies one full generator
/// frame regardless of its width; a read cycle occupies one frame by default.
struct LatencyLedger {
    double frame_ns = 150.0;
    int frames_per_pulse = 1;
    int frames_per_read = 1;

    double write_latency_ns(int pulses) const {
        return frame_ns * frames_per_pulse * pulses;
    }
    double read_latency_ns() const { return frame_ns * frames_per_read; }

    bool operator==(const LatencyLedger&) const = default;
};

} // namespace refsa
