#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refsa/states.hpp"

namespace refsa {

/// Handshake signals of the asynchronous control unit.
///  DR/DW  - read/write strobes from the digital interface
///  MEN    - selection peripherals enable (row MUX + bit-line encoder)
///  MACK   - selection acknowledge
///  DN     - data strobe for the selected cell
///  ACK    - final acknowledge back to the digital interface
enum class Signal { DR, DW, MEN, MACK, DN, ACK };

enum class Polarity { Plus, Minus };

std::string_view signal_name(Signal s);
char polarity_char(Polarity p);
std::optional<Signal> parse_signal(std::string_view name);

struct SignalEvent {
    Signal signal;
    Polarity polarity;
    int timestamp = 0; // event index within the cycle

    bool operator==(const SignalEvent&) const = default;
};

enum class CycleKind { Read, Write };

/// Ordered signal events of one read or write control cycle. A write cycle
/// has one selection phase per pulse: two when routing through the
/// intermediate state, one when the cell already sits there. A read cycle
/// has exactly one.
struct CycleTrace {
    CycleKind kind = CycleKind::Read;
    int phases = 1;
    std::vector<SignalEvent> events;
    std::optional<StateId> result; // quantized state (read) or final state (write)
};

/// The canonical event orders emitted by the control unit.
CycleTrace canonical_read_trace();
CycleTrace canonical_write_trace(int phases);

/// Checks a trace against the control-unit protocol: per-signal polarity
/// alternation, request/acknowledge causality (MACK+ only after MEN+, data
/// strobe only after the selection acknowledge, ACK+ only once DN/MEN/MACK
/// are all back down), the declared number of selection phases, and the
/// canonical order for the cycle kind. Returns a violation description, or
/// nullopt when the trace is well formed.
std::optional<std::string> validate_trace(const CycleTrace& trace);

} // namespace refsa
