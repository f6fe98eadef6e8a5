#include "refsa/handshake.hpp"

#include <array>
#include <map>

namespace refsa {

std::string_view signal_name(Signal s) {
    switch (s) {
    case Signal::DR: return "DR";
    case Signal::DW: return "DW";
    case Signal::MEN: return "MEN";
    case Signal::MACK: return "MACK";
    case Signal::DN: return "DN";
    case Signal::ACK: return "ACK";
    }
    return "?";
}

char polarity_char(Polarity p) { return p == Polarity::Plus ? '+' : '-'; }

std::optional<Signal> parse_signal(std::string_view name) {
    for (Signal s : {Signal::DR, Signal::DW, Signal::MEN, Signal::MACK, Signal::DN,
                     Signal::ACK}) {
        if (signal_name(s) == name)
            return s;
    }
    return std::nullopt;
}

namespace {

void push(CycleTrace& trace, Signal s, Polarity p) {
    trace.events.push_back({s, p, static_cast<int>(trace.events.size())});
}

// One selection phase: enable peripherals, get the acknowledge, strobe the
// cell, then tear everything down for the next phase.
void push_phase(CycleTrace& trace) {
    push(trace, Signal::MEN, Polarity::Plus);
    push(trace, Signal::MACK, Polarity::Plus);
    push(trace, Signal::DN, Polarity::Plus);
    push(trace, Signal::DN, Polarity::Minus);
    push(trace, Signal::MEN, Polarity::Minus);
    push(trace, Signal::MACK, Polarity::Minus);
}

std::string describe(const SignalEvent& e) {
    return std::string(signal_name(e.signal)) + polarity_char(e.polarity);
}

} // namespace

CycleTrace canonical_read_trace() {
    CycleTrace trace;
    trace.kind = CycleKind::Read;
    trace.phases = 1;
    push(trace, Signal::DR, Polarity::Plus);
    push_phase(trace);
    push(trace, Signal::ACK, Polarity::Plus);
    push(trace, Signal::DR, Polarity::Minus);
    push(trace, Signal::ACK, Polarity::Minus);
    return trace;
}

CycleTrace canonical_write_trace(int phases) {
    CycleTrace trace;
    trace.kind = CycleKind::Write;
    trace.phases = phases;
    push(trace, Signal::DW, Polarity::Plus);
    for (int i = 0; i < phases; ++i)
        push_phase(trace);
    push(trace, Signal::ACK, Polarity::Plus);
    push(trace, Signal::DW, Polarity::Minus);
    push(trace, Signal::ACK, Polarity::Minus);
    return trace;
}

std::optional<std::string> validate_trace(const CycleTrace& trace) {
    if (trace.events.empty())
        return "empty trace";
    if (trace.phases < 1 || (trace.kind == CycleKind::Write && trace.phases > 2))
        return "invalid phase count";

    const Signal strobe = trace.kind == CycleKind::Read ? Signal::DR : Signal::DW;
    const Signal foreign = trace.kind == CycleKind::Read ? Signal::DW : Signal::DR;

    // Polarity alternation per signal, starting with +.
    std::map<Signal, Polarity> last;
    for (const SignalEvent& e : trace.events) {
        if (e.signal == foreign)
            return std::string("wrong strobe for cycle kind: ") + describe(e);
        auto it = last.find(e.signal);
        if (it == last.end()) {
            if (e.polarity != Polarity::Plus)
                return describe(e) + " before the corresponding + event";
        } else if (it->second == e.polarity) {
            return "polarity does not alternate on " + std::string(signal_name(e.signal));
        }
        last[e.signal] = e.polarity;
    }

    // Request/acknowledge causality.
    bool strobe_up = false, men_up = false, mack_up = false, dn_up = false;
    bool ack_seen = false;
    int completed_phases = 0;
    for (const SignalEvent& e : trace.events) {
        const bool up = e.polarity == Polarity::Plus;
        if (e.signal == strobe) {
            strobe_up = up;
        } else if (e.signal == Signal::MEN) {
            if (up && !strobe_up)
                return "selection enabled before the cycle strobe";
            men_up = up;
        } else if (e.signal == Signal::MACK) {
            if (up && !men_up)
                return "acknowledge before request: MACK+ without MEN+";
            if (!up)
                ++completed_phases;
            mack_up = up;
        } else if (e.signal == Signal::DN) {
            if (up && !mack_up)
                return "data strobe before selection acknowledge";
            dn_up = up;
        } else if (e.signal == Signal::ACK) {
            if (up && (men_up || mack_up || dn_up))
                return "premature acknowledge: ACK+ before DN-/MEN-/MACK-";
            if (up && completed_phases == 0)
                return "acknowledge without any completed phase";
            ack_seen = true;
        }
    }
    if (!ack_seen)
        return "missing final acknowledge";
    if (completed_phases < trace.phases) {
        if (trace.kind == CycleKind::Write && trace.phases == 2)
            return "missing intermediate phase";
        return "missing selection phase";
    }
    if (completed_phases > trace.phases)
        return "more selection phases than the cycle declares";

    // Exact canonical order for the cycle kind.
    const CycleTrace canonical = trace.kind == CycleKind::Read
                                     ? canonical_read_trace()
                                     : canonical_write_trace(trace.phases);
    if (trace.events.size() != canonical.events.size())
        return "event count deviates from the canonical cycle";
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        if (trace.events[i].signal != canonical.events[i].signal ||
            trace.events[i].polarity != canonical.events[i].polarity)
            return "event order deviates from the canonical cycle at index " +
                   std::to_string(i) + ": got " + describe(trace.events[i]) +
                   ", expected " + describe(canonical.events[i]);
    }
    return std::nullopt;
}

} // namespace refsa
