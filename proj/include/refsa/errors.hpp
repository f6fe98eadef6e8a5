#pragma once

#include <stdexcept>
#include <string>

namespace refsa {

// Base class for every fault the simulator raises on purpose, so callers can
// catch one type at the CLI boundary and still discriminate in tests.
struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pulse amplitude is not the canonical voltage the operation requires.
struct WrongAmplitude : SimError {
    using SimError::SimError;
};

// SET pulse shorter than the minimum switching width.
struct PulseTooShort : SimError {
    using SimError::SimError;
};

// RESET applied to a device that has never seen a forming SET.
struct NeverFormed : SimError {
    using SimError::SimError;
};

// Row/column outside the crossbar, or an index outside a table.
struct OutOfRange : SimError {
    using SimError::SimError;
};

// A second selection was requested while the shared sense path is busy.
struct AlreadySelected : SimError {
    using SimError::SimError;
};

// Sense or pulse issued without a live, gate-enabled selection.
struct NotSelected : SimError {
    using SimError::SimError;
};

// Adjacent state currents leave no margin to place a threshold between.
struct DegenerateTable : SimError {
    using SimError::SimError;
};

// Transition target is not a resting automaton state.
struct InvalidTarget : SimError {
    using SimError::SimError;
};

// Operation applied to a state outside its domain (e.g. the intermediate state).
struct InvalidState : SimError {
    using SimError::SimError;
};

// Next-state function returned a state outside the resting range.
struct DeltaRange : SimError {
    using SimError::SimError;
};

// Energy table has no entry for the requested transition.
struct MissingLedgerEntry : SimError {
    using SimError::SimError;
};

// Crossbar too small for the number of digit cells an automaton needs.
struct InsufficientCells : SimError {
    using SimError::SimError;
};

// A report was requested over zero executed cycles.
struct EmptyWorkload : SimError {
    using SimError::SimError;
};

// Malformed or inconsistent scenario configuration.
struct ConfigError : SimError {
    using SimError::SimError;
};

} // namespace refsa
