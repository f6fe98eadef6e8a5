#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "refsa/crossbar.hpp"
#include "refsa/handshake.hpp"
#include "refsa/ledgers.hpp"

namespace refsa {

/// Ordered pulse operations realizing one state transition. Every transition
/// routes through the intermediate state (SET, then the target's RESET
/// width), including self-loops; only a cell already sitting in the
/// intermediate state takes the single direct RESET pulse.
struct TransitionPlan {
    StateId source;
    StateId target;
    std::vector<PulseSpec> steps; // one or two pulses

    bool via_intermediate() const { return steps.size() == 2; }
    int pulse_count() const { return static_cast<int>(steps.size()); }
};

/// Builds the plan for current -> target. Throws InvalidTarget when the
/// target is the intermediate state: cells never rest there.
TransitionPlan plan_transition(StateId current, StateId target, const StateTable& table);

/// Energy charged for executing a plan, from the ledger.
double energy_of(const TransitionPlan& plan, const EnergyLedger& ledger);

/// One executed transition, for ledger export.
struct TransitionRecord {
    int index;
    StateId source;
    StateId target;
    int pulses;
    double energy_pj;
    double latency_ns;
};

/// One raw readout, for trace export.
struct ReadoutRecord {
    int cycle_index;
    int row;
    int col;
    double raw_current_ua;
    StateId quantized;
};

/// Next-state function of the automaton under simulation: (state, input) to
/// the next resting state.
using NextStateFn = std::function<StateId(StateId, double)>;

/// Drives read and write cycles against one crossbar, emitting handshake
/// traces and accounting energy and latency. Strictly sequential, mirroring
/// the single shared sense path.
class Controller {
public:
    Controller(Crossbar& crossbar, AdcConfig adc, EnergyLedger energy,
               LatencyLedger latency);
    explicit Controller(Crossbar& crossbar);

    Crossbar& crossbar() { return crossbar_; }
    const AdcConfig& adc() const { return adc_; }
    const EnergyLedger& energy_ledger() const { return energy_; }
    const LatencyLedger& latency_ledger() const { return latency_; }

    /// Executes a write cycle on the selected cell. The cell ends in the
    /// plan's target; energy and latency are charged per plan. On a device
    /// fault the partial trace is still recorded before the error propagates.
    CycleTrace execute_write_cycle(const Selection& sel, const TransitionPlan& plan);

    /// Executes a read cycle: sense, quantize, hand the state back. The cell
    /// is unchanged.
    std::pair<StateId, CycleTrace> execute_read_cycle(const Selection& sel);

    /// Select/release wrappers around one full cycle.
    StateId read_state(int row, int col);
    void execute_transition(int row, int col, StateId source, StateId target);

    /// One automaton step: read the present state, evaluate the next-state
    /// function, write the result through the intermediate state. The input
    /// magnitude must lie in [0, 1]; a next state outside S1..S6 raises
    /// DeltaRange.
    StateId step_fsa(int row, int col, const NextStateFn& delta, double input);

    // Accounting and trace log.
    const std::vector<CycleTrace>& trace_log() const { return traces_; }
    const std::vector<TransitionRecord>& transitions() const { return transitions_; }
    const std::vector<ReadoutRecord>& readouts() const { return readouts_; }
    double total_energy_pj() const { return total_energy_pj_; }
    double write_latency_ns() const { return write_latency_ns_; }
    double read_latency_ns() const { return read_latency_ns_; }
    int write_cycles() const { return write_cycles_; }
    int read_cycles() const { return read_cycles_; }

private:
    Crossbar& crossbar_;
    AdcConfig adc_;
    EnergyLedger energy_;
    LatencyLedger latency_;
    std::vector<CycleTrace> traces_;
    std::vector<TransitionRecord> transitions_;
    std::vector<ReadoutRecord> readouts_;
    double total_energy_pj_ = 0.0;
    double write_latency_ns_ = 0.0;
    double read_latency_ns_ = 0.0;
    int write_cycles_ = 0;
    int read_cycles_ = 0;
};

} // namespace refsa
