#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "refsa/controller.hpp"

namespace refsa {

// ---------------------------------------------------------------------------
// Generic finite state automata
// ---------------------------------------------------------------------------

/// A finite state automaton: N states, K input symbols, a total transition
/// function and an initial state. Loadable from a plain-text transition table
/// (one "state symbol next-state" triple per line, optional "initial I"
/// line).
struct FsaSpec {
    int state_count = 0;
    int alphabet_size = 0;
    int initial_state = 0;
    std::vector<int> table; // table[state * alphabet_size + symbol]

    int next(int state, int symbol) const;
    void validate() const;

    static FsaSpec load(const std::filesystem::path& file);
    static FsaSpec parse(const std::string& text);
};

// ---------------------------------------------------------------------------
// Krinsky learning automaton
// ---------------------------------------------------------------------------

enum class KrinskyAction { A, B };

inline char action_char(KrinskyAction a) { return a == KrinskyAction::A ? 'A' : 'B'; }

/// Action a resting state selects: A for S1..S3, B for S4..S6. The
/// intermediate state selects nothing.
KrinskyAction action_of(StateId state);

/// Two-action update rule over the six resting states. Reward (beta = 0)
/// jumps to the action's innermost state (S1 or S4); penalty (beta = 1)
/// steps along the ladder toward the action boundary, crossing it at S3 -> S4
/// and wrapping S6 -> S1.
struct KrinskyRule {
    // next_state[level - 1][beta]
    std::array<std::array<StateId, 2>, 6> next_state;

    static KrinskyRule defaults();
    StateId next(StateId state, int beta) const;
};

StateId krinsky_next(StateId state, int beta);

/// Stationary two-action environment: the probability of a reward for each
/// action.
struct KrinskyEnvironment {
    double p_reward_a = 0.5;
    double p_reward_b = 0.5;

    void validate() const;
    double p_reward(KrinskyAction a) const {
        return a == KrinskyAction::A ? p_reward_a : p_reward_b;
    }
};

struct KrinskyStep {
    StateId before;
    KrinskyAction action;
    int beta;
    StateId after;
};

struct KrinskyTrajectory {
    StateId initial;
    std::vector<KrinskyStep> steps;

    /// Initial state followed by the state after each step.
    std::vector<StateId> state_sequence() const;
    double fraction_action_a() const;
};

/// The environment's response stream for a run seed: one uniform draw per
/// step, kept separate from every device variation stream so a run and a
/// pure re-evaluation of the update rule consume identical responses.
Rng krinsky_env_stream(std::uint64_t seed);

/// Runs the learning automaton on one cell: program the initial state, then
/// per step read the state, select its action, sample the environment
/// response and write the updated state through the controller.
/// Deterministic given the seed; the environment stream is separate from any
/// device variation stream.
KrinskyTrajectory run_krinsky(Controller& controller, int row, int col,
                              const KrinskyEnvironment& env, int steps,
                              std::uint64_t seed, StateId initial = S(1),
                              const KrinskyRule& rule = KrinskyRule::defaults());

// ---------------------------------------------------------------------------
// Multi-cell state encoding
// ---------------------------------------------------------------------------

/// How automaton states map onto cells: base-6 positional digits (one digit
/// per cell, digit v held as state S_{v+1}) or strict one-bit-per-cell binary
/// (0 as S1, 1 as S6).
enum class StateEncoding { Base6, Binary };

int encoding_radix(StateEncoding enc);

/// Cells needed for an N-state automaton under the encoding.
int digits_needed(int state_count, StateEncoding enc = StateEncoding::Base6);

/// Positional encoding of a state index, least significant digit first.
/// Throws OutOfRange unless 0 <= k < state_count.
std::vector<int> encode_state(int k, int state_count,
                              StateEncoding enc = StateEncoding::Base6);
int decode_state(const std::vector<int>& digits,
                 StateEncoding enc = StateEncoding::Base6);

StateId digit_to_cell_state(int digit, StateEncoding enc = StateEncoding::Base6);
int cell_state_to_digit(StateId state, StateEncoding enc = StateEncoding::Base6);

// ---------------------------------------------------------------------------
// Automaton-on-cells mapping
// ---------------------------------------------------------------------------

struct CellRef {
    int row = 0;
    int col = 0;
};

enum class RewritePolicy {
    ChangedDigitsOnly, // rewrite only digit cells whose value changed
    AllDigits          // rewrite every digit cell, for flat energy accounting
};

/// An FsaSpec laid out on crossbar digit cells. Each step reads all digit
/// cells, decodes the state index, applies the transition function,
/// re-encodes and writes digit cells per the rewrite policy (each write
/// routed through the intermediate state).
class MappedFsa {
public:
    /// Allocates digit cells row-major from the crossbar origin and programs
    /// the initial state. Throws InsufficientCells when the crossbar is too
    /// small.
    static MappedFsa map(FsaSpec spec, Controller& controller,
                         StateEncoding enc = StateEncoding::Base6,
                         RewritePolicy policy = RewritePolicy::ChangedDigitsOnly);

    const FsaSpec& spec() const { return spec_; }
    const std::vector<CellRef>& cells() const { return cells_; }

    /// Reads the digit cells and decodes the current state index.
    int current_state();

    /// Applies one input symbol; returns the new state index.
    int step(int symbol);

    /// Rewrites the initial state into the digit cells.
    void reset();

private:
    MappedFsa(FsaSpec spec, Controller& controller, std::vector<CellRef> cells,
              StateEncoding enc, RewritePolicy policy);

    void write_digits(const std::vector<int>& current,
                      const std::vector<int>& target, bool force_all);
    std::vector<int> read_digits();

    FsaSpec spec_;
    Controller& controller_;
    std::vector<CellRef> cells_;
    StateEncoding encoding_;
    RewritePolicy policy_;
};

} // namespace refsa
