#include "refsa/controller.hpp"

#include <cmath>

namespace refsa {

TransitionPlan plan_transition(StateId current, StateId target,
                               const StateTable& table) {
    if (!target.is_resting())
        throw InvalidTarget("S0 is not a resting state");
    TransitionPlan plan{current, target, {}};
    if (!current.is_intermediate())
        plan.steps.push_back(table.set_pulse());
    plan.steps.push_back(table.reset_pulse_for(target));
    return plan;
}

double energy_of(const TransitionPlan& plan, const EnergyLedger& ledger) {
    return plan.via_intermediate() ? ledger.via_intermediate_pj(plan.target)
                                   : ledger.direct_pj(plan.target);
}

Controller::Controller(Crossbar& crossbar, AdcConfig adc, EnergyLedger energy,
                       LatencyLedger latency)
    : crossbar_(crossbar), adc_(std::move(adc)), energy_(std::move(energy)),
      latency_(latency) {
    adc_.validate();
}

Controller::Controller(Crossbar& crossbar)
    : Controller(crossbar, AdcConfig::from_table(crossbar.table()),
                 EnergyLedger::defaults(), LatencyLedger{}) {}

CycleTrace Controller::execute_write_cycle(const Selection& sel,
                                           const TransitionPlan& plan) {
    CycleTrace trace;
    trace.kind = CycleKind::Write;
    trace.phases = plan.pulse_count();
    const CycleTrace canonical = canonical_write_trace(trace.phases);

    // The cycle strobe, then one selection phase per pulse. On a device
    // fault the trace collected so far is logged before rethrowing.
    std::size_t cursor = 0;
    trace.events.push_back(canonical.events[cursor++]); // DW+
    try {
        for (const PulseSpec& pulse : plan.steps) {
            trace.events.push_back(canonical.events[cursor++]); // MEN+
            trace.events.push_back(canonical.events[cursor++]); // MACK+
            trace.events.push_back(canonical.events[cursor++]); // DN+
            crossbar_.apply_pulse(sel, pulse);
            trace.events.push_back(canonical.events[cursor++]); // DN-
            trace.events.push_back(canonical.events[cursor++]); // MEN-
            trace.events.push_back(canonical.events[cursor++]); // MACK-
        }
    } catch (...) {
        traces_.push_back(trace);
        throw;
    }
    trace.events.push_back(canonical.events[cursor++]); // ACK+
    trace.events.push_back(canonical.events[cursor++]); // DW-
    trace.events.push_back(canonical.events[cursor++]); // ACK-
    trace.result = crossbar_.cell(sel.row, sel.col).state();

    const double energy = energy_of(plan, energy_);
    const double latency = latency_.write_latency_ns(plan.pulse_count());
    total_energy_pj_ += energy;
    write_latency_ns_ += latency;
    ++write_cycles_;
    transitions_.push_back({static_cast<int>(transitions_.size()), plan.source,
                            plan.target, plan.pulse_count(), energy, latency});
    traces_.push_back(trace);
    return trace;
}

std::pair<StateId, CycleTrace> Controller::execute_read_cycle(const Selection& sel) {
    const double raw_ua = crossbar_.sense(sel);
    const StateId quantized = adc_quantize(raw_ua, adc_);

    CycleTrace trace = canonical_read_trace();
    trace.result = quantized;
    read_latency_ns_ += latency_.read_latency_ns();
    ++read_cycles_;
    readouts_.push_back({read_cycles_ - 1, sel.row, sel.col, raw_ua, quantized});
    traces_.push_back(trace);
    return {quantized, trace};
}

StateId Controller::read_state(int row, int col) {
    Selection sel = crossbar_.select(row, col);
    try {
        const StateId state = execute_read_cycle(sel).first;
        crossbar_.release(sel);
        return state;
    } catch (...) {
        crossbar_.release(sel);
        throw;
    }
}

void Controller::execute_transition(int row, int col, StateId source, StateId target) {
    const TransitionPlan plan = plan_transition(source, target, crossbar_.table());
    Selection sel = crossbar_.select(row, col);
    try {
        execute_write_cycle(sel, plan);
        crossbar_.release(sel);
    } catch (...) {
        crossbar_.release(sel);
        throw;
    }
}

StateId Controller::step_fsa(int row, int col, const NextStateFn& delta, double input) {
    if (std::abs(input) > 1.0)
        throw OutOfRange("automaton input magnitude must lie in [0, 1]");
    const StateId present = read_state(row, col);
    const StateId next = delta(present, input);
    if (!next.is_resting())
        throw DeltaRange("next-state function returned " + next.name() +
                         ", which is not a resting state");
    execute_transition(row, col, present, next);
    return next;
}

} // namespace refsa
