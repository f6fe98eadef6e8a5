#include "refsa/crossbar.hpp"

#include <cmath>
#include <string>

namespace refsa {

namespace {
// Tags for deriving per-cell substreams from the crossbar master seed.
constexpr std::uint64_t kD2dStreamTag = 0x0d2d;
constexpr std::uint64_t kC2cStreamTag = 0x0c2c;
} // namespace

int adc_bits(int state_count) {
    if (state_count < 2)
        throw OutOfRange("converter needs at least two states");
    int bits = 0;
    while ((1 << bits) < state_count)
        ++bits;
    return bits;
}

std::vector<double> default_thresholds(const StateTable& table) {
    std::vector<double> thresholds;
    for (int j = StateId::kFirstResting; j < StateId::kCount - 1; ++j) {
        const double upper = table.current_ua(StateId::from_level(j));
        const double lower = table.current_ua(StateId::from_level(j + 1));
        if (lower >= upper)
            throw DegenerateTable("no current margin between S" + std::to_string(j) +
                                  " and S" + std::to_string(j + 1));
        thresholds.push_back(std::sqrt(upper * lower));
    }
    return thresholds;
}

AdcConfig AdcConfig::from_table(const StateTable& table) {
    AdcConfig adc;
    adc.state_count = StateId::kCount;
    adc.bits = adc_bits(StateId::kCount);
    adc.thresholds_ua = default_thresholds(table);
    return adc;
}

void AdcConfig::validate() const {
    if (bits != adc_bits(state_count))
        throw ConfigError("converter bit width does not match the state count");
    // Two of the ladder states share one band, hence observable - 1 thresholds.
    if (thresholds_ua.size() != static_cast<std::size_t>(state_count - 2))
        throw ConfigError("converter threshold count does not match the state count");
    for (std::size_t i = 1; i < thresholds_ua.size(); ++i) {
        if (thresholds_ua[i] >= thresholds_ua[i - 1])
            throw ConfigError("converter thresholds must be strictly decreasing");
    }
}

StateId adc_quantize(double current_ua, const AdcConfig& adc) {
    int level = StateId::kFirstResting;
    for (const double threshold : adc.thresholds_ua) {
        if (current_ua >= threshold)
            break;
        ++level;
    }
    return StateId::from_level(level);
}

Crossbar::Crossbar(CrossbarConfig config, StateTable table, VariationProfile profile,
                   std::uint64_t seed, PhysicalModelParams params)
    : config_(config), table_(std::move(table)), profile_(profile), params_(params) {
    config_.validate();
    table_.validate();
    profile_.validate();
    cells_.reserve(static_cast<std::size_t>(cell_count()));
    for (int i = 0; i < cell_count(); ++i) {
        CellDevice cell = CellDevice::formed(derive_seed(seed, kC2cStreamTag, i));
        if (profile_.d2d_enabled)
            cell.set_d2d_multipliers(
                sample_d2d(params_, profile_, derive_seed(seed, kD2dStreamTag, i)));
        cells_.push_back(cell);
    }
}

void Crossbar::check_bounds(int row, int col) const {
    if (row < 0 || row >= config_.rows || col < 0 || col >= config_.cols)
        throw OutOfRange("cell (" + std::to_string(row) + ", " + std::to_string(col) +
                         ") outside a " + std::to_string(config_.rows) + "x" +
                         std::to_string(config_.cols) + " crossbar");
}

CellDevice& Crossbar::cell(int row, int col) {
    check_bounds(row, col);
    return cells_[static_cast<std::size_t>(row) * config_.cols + col];
}

const CellDevice& Crossbar::cell(int row, int col) const {
    check_bounds(row, col);
    return cells_[static_cast<std::size_t>(row) * config_.cols + col];
}

Selection Crossbar::select(int row, int col) {
    check_bounds(row, col);
    if (active_token_)
        throw AlreadySelected("shared sense path busy: cell (" +
                              std::to_string(active_row_) + ", " +
                              std::to_string(active_col_) + ") is still selected");
    Selection sel{row, col, true, next_token_++};
    active_token_ = sel.token;
    active_row_ = row;
    active_col_ = col;
    return sel;
}

void Crossbar::release(const Selection& sel) {
    if (active_token_ && *active_token_ == sel.token) {
        active_token_.reset();
        active_row_ = -1;
        active_col_ = -1;
    }
}

CellDevice& Crossbar::checked_selection(const Selection& sel) {
    if (!active_token_ || *active_token_ != sel.token)
        throw NotSelected("selection is not active");
    if (!sel.gate_enabled)
        throw NotSelected("access transistor gate is not enabled");
    return cell(sel.row, sel.col);
}

double Crossbar::sense(const Selection& sel, const VariationProfile& profile) {
    // The sense amplifier is modeled as identity on the cell current; all
    // non-ideality lives in the variation profile and the thresholds.
    return checked_selection(sel).read_current(table_, table_.read_voltage_v(), profile);
}

void Crossbar::apply_pulse(const Selection& sel, const PulseSpec& pulse) {
    CellDevice& target = checked_selection(sel);
    validate_pulse(pulse, table_);
    if (pulse.amplitude_v == table_.set_voltage_v())
        target.apply_set(table_, pulse);
    else if (pulse.amplitude_v == table_.reset_voltage_v())
        target.apply_reset(table_, pulse);
    else
        throw WrongAmplitude("write pulses must use the SET or RESET voltage");
}

void Crossbar::resample_d2d(int row, int col, std::uint64_t seed) {
    cell(row, col).set_d2d_multipliers(sample_d2d(params_, profile_, seed));
}

} // namespace refsa
