#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "refsa/device.hpp"
#include "refsa/states.hpp"
#include "refsa/variation.hpp"

namespace refsa {

struct CrossbarConfig {
    int rows = 4;
    int cols = 4;

    void validate() const {
        if (rows < 1 || cols < 1)
            throw ConfigError("crossbar must have at least one row and one column");
    }
    bool operator==(const CrossbarConfig&) const = default;
};

/// A live selection of one cell: row chosen by the DeMUX, transistor gated on
/// by the bit-line encoder, column routed to the shared sense path. At most
/// one selection is active at a time.
struct Selection {
    int row = 0;
    int col = 0;
    bool gate_enabled = false;
    std::uint64_t token = 0; // matches the crossbar's active selection
};

/// Number of converter bits needed to distinguish `state_count` states.
int adc_bits(int state_count);

/// Geometric midpoints between adjacent resting-state currents, descending.
/// The intermediate state shares the top band with S1, so there are
/// observable-states - 1 = 5 thresholds for the seven-state ladder.
std::vector<double> default_thresholds(const StateTable& table);

/// Current-to-state converter configuration.
struct AdcConfig {
    int state_count = StateId::kCount; // states the converter is sized for
    int bits = 3;
    std::vector<double> thresholds_ua; // strictly decreasing

    static AdcConfig from_table(const StateTable& table);
    void validate() const;
    bool operator==(const AdcConfig&) const = default;
};

/// Quantizes a sensed current to the state whose band contains it. The
/// intermediate state aliases to S1 (their currents are not resolvable); a
/// current exactly on a threshold resolves to the higher-current state.
StateId adc_quantize(double current_ua, const AdcConfig& adc);

/// m x n array of cells behind one shared sense path. Construction forms
/// every cell into the intermediate state and, when the profile enables the
/// device-to-device mechanism, samples each cell's fixed multipliers from the
/// master seed.
class Crossbar {
public:
    Crossbar(CrossbarConfig config, StateTable table, VariationProfile profile,
             std::uint64_t seed,
             PhysicalModelParams params = PhysicalModelParams{});

    int rows() const { return config_.rows; }
    int cols() const { return config_.cols; }
    int cell_count() const { return config_.rows * config_.cols; }

    const StateTable& table() const { return table_; }
    const VariationProfile& profile() const { return profile_; }
    const PhysicalModelParams& physical_params() const { return params_; }

    CellDevice& cell(int row, int col);
    const CellDevice& cell(int row, int col) const;

    /// Claims the shared sense path for one cell. Throws OutOfRange for bad
    /// indices and AlreadySelected while another selection is live.
    Selection select(int row, int col);
    void release(const Selection& sel);
    bool has_active_selection() const { return active_token_.has_value(); }

    /// Read current of the selected cell, in uA, under the given profile.
    double sense(const Selection& sel, const VariationProfile& profile);
    double sense(const Selection& sel) { return sense(sel, profile_); }

    /// Routes a SET or RESET pulse to the selected cell.
    void apply_pulse(const Selection& sel, const PulseSpec& pulse);

    /// Redraws one cell's fixed multipliers (fresh-device view for
    /// variation studies).
    void resample_d2d(int row, int col, std::uint64_t seed);

private:
    void check_bounds(int row, int col) const;
    CellDevice& checked_selection(const Selection& sel);

    CrossbarConfig config_;
    StateTable table_;
    VariationProfile profile_;
    PhysicalModelParams params_;
    std::vector<CellDevice> cells_;
    std::optional<std::uint64_t> active_token_;
    int active_row_ = -1;
    int active_col_ = -1;
    std::uint64_t next_token_ = 1;
};

} // namespace refsa
