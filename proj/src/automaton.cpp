#include "refsa/automaton.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "refsa/rng.hpp"

namespace refsa {

// ---------------------------------------------------------------------------
// FsaSpec
// ---------------------------------------------------------------------------

int FsaSpec::next(int state, int symbol) const {
    if (state < 0 || state >= state_count)
        throw OutOfRange("state index " + std::to_string(state) + " out of range");
    if (symbol < 0 || symbol >= alphabet_size)
        throw OutOfRange("input symbol " + std::to_string(symbol) + " out of range");
    return table[static_cast<std::size_t>(state) * alphabet_size + symbol];
}

void FsaSpec::validate() const {
    if (state_count < 1)
        throw ConfigError("automaton needs at least one state");
    if (alphabet_size < 1)
        throw ConfigError("automaton needs at least one input symbol");
    if (initial_state < 0 || initial_state >= state_count)
        throw ConfigError("initial state out of range");
    if (table.size() != static_cast<std::size_t>(state_count) * alphabet_size)
        throw ConfigError("transition table is not total");
    for (int entry : table) {
        if (entry < 0 || entry >= state_count)
            throw ConfigError("transition target out of range");
    }
}

FsaSpec FsaSpec::parse(const std::string& text) {
    struct Triple {
        int state, symbol, next;
    };
    std::vector<Triple> triples;
    int initial = 0;
    bool initial_given = false;
    int max_state = -1, max_symbol = -1;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first))
            continue; // blank or comment-only line
        if (first == "initial") {
            if (!(fields >> initial))
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": malformed initial-state line");
            initial_given = true;
            continue;
        }
        Triple t{};
        try {
            t.state = std::stoi(first);
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected a state index, got '" + first + "'");
        }
        if (!(fields >> t.symbol >> t.next))
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected 'state symbol next-state'");
        triples.push_back(t);
        max_state = std::max({max_state, t.state, t.next});
        max_symbol = std::max(max_symbol, t.symbol);
    }
    if (triples.empty())
        throw ConfigError("transition table is empty");

    FsaSpec spec;
    spec.state_count = max_state + 1;
    spec.alphabet_size = max_symbol + 1;
    spec.initial_state = initial_given ? initial : 0;
    spec.table.assign(static_cast<std::size_t>(spec.state_count) * spec.alphabet_size,
                      -1);
    for (const Triple& t : triples) {
        auto& slot = spec.table[static_cast<std::size_t>(t.state) * spec.alphabet_size +
                                t.symbol];
        if (slot != -1)
            throw ConfigError("duplicate transition for state " +
                              std::to_string(t.state) + ", symbol " +
                              std::to_string(t.symbol));
        slot = t.next;
    }
    spec.validate();
    return spec;
}

FsaSpec FsaSpec::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ConfigError("cannot open transition table file: " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

// ---------------------------------------------------------------------------
// Krinsky learning automaton
// ---------------------------------------------------------------------------

KrinskyAction action_of(StateId state) {
    if (!state.is_resting())
        throw InvalidState("the intermediate state selects no action");
    return state.level() <= 3 ? KrinskyAction::A : KrinskyAction::B;
}

KrinskyRule KrinskyRule::defaults() {
    KrinskyRule rule;
    for (int level = 1; level <= 6; ++level) {
        // Reward jumps to the innermost state of the current action.
        rule.next_state[level - 1][0] = level <= 3 ? S(1) : S(4);
        // Penalty steps toward the action boundary, wrapping at the top.
        rule.next_state[level - 1][1] = level == 6 ? S(1) : S(level + 1);
    }
    return rule;
}

StateId KrinskyRule::next(StateId state, int beta) const {
    if (!state.is_resting())
        throw InvalidState("the intermediate state is not a learning state");
    if (beta != 0 && beta != 1)
        throw OutOfRange("environment response must be 0 or 1");
    return next_state[state.level() - 1][beta];
}

StateId krinsky_next(StateId state, int beta) {
    return KrinskyRule::defaults().next(state, beta);
}

void KrinskyEnvironment::validate() const {
    if (p_reward_a < 0.0 || p_reward_a > 1.0 || p_reward_b < 0.0 || p_reward_b > 1.0)
        throw ConfigError("reward probabilities must lie in [0, 1]");
}

std::vector<StateId> KrinskyTrajectory::state_sequence() const {
    std::vector<StateId> seq;
    seq.reserve(steps.size() + 1);
    seq.push_back(initial);
    for (const KrinskyStep& s : steps)
        seq.push_back(s.after);
    return seq;
}

double KrinskyTrajectory::fraction_action_a() const {
    if (steps.empty())
        return 0.0;
    int count = 0;
    for (const KrinskyStep& s : steps)
        if (s.action == KrinskyAction::A)
            ++count;
    return static_cast<double>(count) / static_cast<double>(steps.size());
}

Rng krinsky_env_stream(std::uint64_t seed) {
    return Rng(derive_seed(seed, 0x6b72));
}

KrinskyTrajectory run_krinsky(Controller& controller, int row, int col,
                              const KrinskyEnvironment& env, int steps,
                              std::uint64_t seed, StateId initial,
                              const KrinskyRule& rule) {
    env.validate();
    if (steps < 1)
        throw ConfigError("a learning run needs at least one step");
    if (!initial.is_resting())
        throw InvalidState("the learning automaton cannot start in the intermediate state");

    // Program the starting state, planning from the read-back state.
    const StateId present = controller.read_state(row, col);
    controller.execute_transition(row, col, present, initial);

    Rng env_rng = krinsky_env_stream(seed);
    KrinskyTrajectory trajectory;
    trajectory.initial = initial;
    for (int i = 0; i < steps; ++i) {
        const StateId before = controller.read_state(row, col);
        const KrinskyAction action = action_of(before);
        const int beta = env_rng.next_double() < env.p_reward(action) ? 0 : 1;
        const StateId after = rule.next(before, beta);
        controller.execute_transition(row, col, before, after);
        trajectory.steps.push_back({before, action, beta, after});
    }
    return trajectory;
}

// ---------------------------------------------------------------------------
// Multi-cell state encoding
// ---------------------------------------------------------------------------

int encoding_radix(StateEncoding enc) {
    return enc == StateEncoding::Base6 ? 6 : 2;
}

int digits_needed(int state_count, StateEncoding enc) {
    if (state_count < 1)
        throw OutOfRange("state count must be positive");
    const int radix = encoding_radix(enc);
    int digits = 0;
    long long capacity = 1;
    while (capacity < state_count) {
        capacity *= radix;
        ++digits;
    }
    return digits;
}

std::vector<int> encode_state(int k, int state_count, StateEncoding enc) {
    if (k < 0 || k >= state_count)
        throw OutOfRange("state index " + std::to_string(k) + " outside [0, " +
                         std::to_string(state_count) + ")");
    const int radix = encoding_radix(enc);
    std::vector<int> digits(static_cast<std::size_t>(digits_needed(state_count, enc)));
    for (int& digit : digits) {
        digit = k % radix;
        k /= radix;
    }
    return digits;
}

int decode_state(const std::vector<int>& digits, StateEncoding enc) {
    const int radix = encoding_radix(enc);
    long long k = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] < 0 || digits[i] >= radix)
            throw OutOfRange("digit " + std::to_string(digits[i]) +
                             " outside the encoding radix");
        k = k * radix + digits[i];
    }
    return static_cast<int>(k);
}

StateId digit_to_cell_state(int digit, StateEncoding enc) {
    if (enc == StateEncoding::Base6) {
        if (digit < 0 || digit > 5)
            throw OutOfRange("base-6 digit must lie in 0..5");
        return S(digit + 1);
    }
    if (digit != 0 && digit != 1)
        throw OutOfRange("binary digit must be 0 or 1");
    return digit == 0 ? S(1) : S(6);
}

int cell_state_to_digit(StateId state, StateEncoding enc) {
    if (!state.is_resting())
        throw InvalidState("digit cells never rest in the intermediate state");
    if (enc == StateEncoding::Base6)
        return state.level() - 1;
    if (state == S(1))
        return 0;
    if (state == S(6))
        return 1;
    throw InvalidState("binary digit cells hold only S1 or S6");
}

// ---------------------------------------------------------------------------
// MappedFsa
// ---------------------------------------------------------------------------

MappedFsa MappedFsa::map(FsaSpec spec, Controller& controller, StateEncoding enc,
                         RewritePolicy policy) {
    spec.validate();
    const int digits = digits_needed(spec.state_count, enc);
    Crossbar& xbar = controller.crossbar();
    if (digits > xbar.cell_count())
        throw InsufficientCells("automaton needs " + std::to_string(digits) +
                                " digit cells but the crossbar has " +
                                std::to_string(xbar.cell_count()));
    std::vector<CellRef> cells;
    cells.reserve(static_cast<std::size_t>(digits));
    for (int i = 0; i < digits; ++i)
        cells.push_back({i / xbar.cols(), i % xbar.cols()});
    return MappedFsa(std::move(spec), controller, std::move(cells), enc, policy);
}

MappedFsa::MappedFsa(FsaSpec spec, Controller& controller, std::vector<CellRef> cells,
                     StateEncoding enc, RewritePolicy policy)
    : spec_(std::move(spec)), controller_(controller), cells_(std::move(cells)),
      encoding_(enc), policy_(policy) {
    reset();
}

void MappedFsa::reset() {
    const std::vector<int> target = encode_state(spec_.initial_state, spec_.state_count,
                                                 encoding_);
    // Plan each write from the cell's device state so freshly formed cells
    // take the direct pulse.
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const CellRef& ref = cells_[i];
        const StateId present = controller_.crossbar().cell(ref.row, ref.col).state();
        controller_.execute_transition(ref.row, ref.col, present,
                                       digit_to_cell_state(target[i], encoding_));
    }
}

std::vector<int> MappedFsa::read_digits() {
    std::vector<int> digits(cells_.size());
    for (std::size_t i = 0; i < cells_.size(); ++i)
        digits[i] = cell_state_to_digit(controller_.read_state(cells_[i].row,
                                                               cells_[i].col),
                                        encoding_);
    return digits;
}

void MappedFsa::write_digits(const std::vector<int>& current,
                             const std::vector<int>& target, bool force_all) {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (!force_all && current[i] == target[i])
            continue;
        controller_.execute_transition(cells_[i].row, cells_[i].col,
                                       digit_to_cell_state(current[i], encoding_),
                                       digit_to_cell_state(target[i], encoding_));
    }
}

int MappedFsa::current_state() {
    return decode_state(read_digits(), encoding_);
}

int MappedFsa::step(int symbol) {
    const std::vector<int> digits = read_digits();
    const int state = decode_state(digits, encoding_);
    const int next = spec_.next(state, symbol);
    const std::vector<int> target = encode_state(next, spec_.state_count, encoding_);
    write_digits(digits, target, policy_ == RewritePolicy::AllDigits);
    return next;
}

} // namespace refsa
