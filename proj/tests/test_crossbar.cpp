#include <doctest.h>

#include <cmath>

#include "refsa/crossbar.hpp"

using namespace refsa;

namespace {

const StateTable kTable = StateTable::defaults();

Crossbar quiet_crossbar(int rows = 4, int cols = 4) {
    return Crossbar({rows, cols}, kTable, VariationProfile::disabled(), 1);
}

void program(Crossbar& xbar, int row, int col, StateId target) {
    Selection sel = xbar.select(row, col);
    xbar.apply_pulse(sel, kTable.set_pulse());
    xbar.apply_pulse(sel, kTable.reset_pulse_for(target));
    xbar.release(sel);
}

} // namespace

TEST_CASE("selection is exclusive on the shared sense path") {
    Crossbar xbar = quiet_crossbar();

    SUBCASE("valid selection") {
        Selection sel = xbar.select(2, 3);
        CHECK(sel.row == 2);
        CHECK(sel.col == 3);
        CHECK(sel.gate_enabled);
        xbar.release(sel);
    }
    SUBCASE("row out of range") {
        CHECK_THROWS_AS(xbar.select(4, 0), OutOfRange);
    }
    SUBCASE("second selection without release") {
        Selection sel = xbar.select(0, 0);
        CHECK_THROWS_AS(xbar.select(1, 1), AlreadySelected);
        xbar.release(sel);
        CHECK_NOTHROW(xbar.select(1, 1));
    }
    SUBCASE("release clears the path") {
        Selection sel = xbar.select(0, 0);
        xbar.release(sel);
        CHECK_FALSE(xbar.has_active_selection());
    }
}

TEST_CASE("sense returns the selected cell's read current") {
    Crossbar xbar = quiet_crossbar();

    SUBCASE("programmed states") {
        program(xbar, 0, 0, S(1));
        Selection sel = xbar.select(0, 0);
        CHECK(xbar.sense(sel) == 12.6);
        xbar.release(sel);

        program(xbar, 1, 2, S(4));
        sel = xbar.select(1, 2);
        CHECK(xbar.sense(sel) == 0.3);
        xbar.release(sel);
    }
    SUBCASE("gate disabled") {
        Selection sel = xbar.select(0, 0);
        Selection disabled = sel;
        disabled.gate_enabled = false;
        CHECK_THROWS_AS(xbar.sense(disabled), NotSelected);
        xbar.release(sel);
    }
    SUBCASE("stale selection") {
        Selection sel = xbar.select(0, 0);
        xbar.release(sel);
        CHECK_THROWS_AS(xbar.sense(sel), NotSelected);
    }
}

TEST_CASE("converter bit sizing") {
    // Oracle: smallest p with 2^p >= s, by enumeration.
    auto oracle_bits = [](int s) {
        int p = 0;
        while ((1 << p) < s)
            ++p;
        return p;
    };
    CHECK(adc_bits(7) == 3);
    CHECK(adc_bits(2) == 1);
    CHECK(adc_bits(6) == oracle_bits(6));
    CHECK(adc_bits(6) == 3);
    for (int s = 2; s <= 64; ++s)
        CHECK(adc_bits(s) == oracle_bits(s));
    CHECK_THROWS_AS(adc_bits(1), OutOfRange);
}

TEST_CASE("default thresholds are geometric midpoints") {
    const std::vector<double> thresholds = default_thresholds(kTable);
    REQUIRE(thresholds.size() == 5);
    // Oracle: direct computation from the configured currents.
    CHECK(thresholds.front() == doctest::Approx(std::sqrt(12.6 * 1.6)));
    CHECK(thresholds.front() == doctest::Approx(4.49).epsilon(0.01));
    CHECK(thresholds.back() == doctest::Approx(std::sqrt(0.2 * 0.07)));
    CHECK(thresholds.back() == doctest::Approx(0.118).epsilon(0.01));

    SUBCASE("every threshold sits strictly between its neighbours") {
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            const StateId upper = S(static_cast<int>(i) + 1);
            const StateId lower = S(static_cast<int>(i) + 2);
            CHECK(thresholds[i] < kTable.current_ua(upper));
            CHECK(thresholds[i] > kTable.current_ua(lower));
        }
    }
    SUBCASE("identical adjacent currents are rejected") {
        StateTable degenerate = kTable;
        StateRow row = degenerate.row(S(3));
        row.current_ua = degenerate.current_ua(S(2));
        degenerate.set_row(S(3), row);
        CHECK_THROWS_AS(default_thresholds(degenerate), DegenerateTable);
    }
}

TEST_CASE("quantization maps currents to state bands") {
    const AdcConfig adc = AdcConfig::from_table(kTable);
    CHECK_NOTHROW(adc.validate());
    CHECK(adc.bits == 3);

    CHECK(adc_quantize(12.6, adc) == S(1));
    CHECK(adc_quantize(0.07, adc) == S(6));
    // The intermediate state aliases into the S1 band.
    CHECK(adc_quantize(12.8, adc) == S(1));
    // A current exactly on a threshold resolves to the higher-current state.
    const double midpoint = std::sqrt(12.6 * 1.6);
    CHECK(adc_quantize(midpoint, adc) == S(1));
    CHECK(adc_quantize(std::nextafter(midpoint, 0.0), adc) == S(2));

    SUBCASE("nominal currents land in their own bands") {
        for (int j = 1; j <= 6; ++j)
            CHECK(adc_quantize(kTable.current_ua(S(j)), adc) == S(j));
    }
    SUBCASE("mismatched bit width is rejected") {
        AdcConfig bad = adc;
        bad.bits = 2;
        CHECK_THROWS_AS(bad.validate(), ConfigError);
    }
    SUBCASE("non-decreasing thresholds are rejected") {
        AdcConfig bad = adc;
        bad.thresholds_ua[1] = bad.thresholds_ua[0];
        CHECK_THROWS_AS(bad.validate(), ConfigError);
    }
}

TEST_CASE("variation-free write/read round trip") {
    Crossbar xbar = quiet_crossbar(2, 3);
    const AdcConfig adc = AdcConfig::from_table(kTable);
    for (int j = 1; j <= 6; ++j) {
        const int row = (j - 1) / 3, col = (j - 1) % 3;
        program(xbar, row, col, S(j));
        Selection sel = xbar.select(row, col);
        CHECK(adc_quantize(xbar.sense(sel), adc) == S(j));
        xbar.release(sel);
    }
}

TEST_CASE("pulse validation at the array boundary") {
    Crossbar xbar = quiet_crossbar();
    Selection sel = xbar.select(0, 0);

    SUBCASE("width must be positive") {
        CHECK_THROWS_AS(xbar.apply_pulse(sel, PulseSpec{1.8, 0.0, 150.0}), ConfigError);
    }
    SUBCASE("width must fit the generator frame") {
        CHECK_THROWS_AS(xbar.apply_pulse(sel, PulseSpec{1.8, 151.0, 150.0}),
                        ConfigError);
    }
    SUBCASE("amplitude must be canonical") {
        CHECK_THROWS_AS(xbar.apply_pulse(sel, PulseSpec{0.9, 10.0, 150.0}),
                        WrongAmplitude);
    }
    SUBCASE("writes need the selection too") {
        Selection disabled = sel;
        disabled.gate_enabled = false;
        CHECK_THROWS_AS(xbar.apply_pulse(disabled, kTable.set_pulse()), NotSelected);
    }
    xbar.release(sel);
}

TEST_CASE("device multipliers are sampled per cell at construction") {
    VariationProfile profile; // d2d on by default
    Crossbar a({2, 2}, kTable, profile, 9);
    Crossbar b({2, 2}, kTable, profile, 9);
    Crossbar c({2, 2}, kTable, profile, 10);

    CHECK(a.cell(0, 0).d2d_multipliers() == b.cell(0, 0).d2d_multipliers());
    CHECK(a.cell(0, 0).d2d_multipliers() != a.cell(1, 1).d2d_multipliers());
    CHECK(a.cell(0, 0).d2d_multipliers() != c.cell(0, 0).d2d_multipliers());

    // Construction forms every cell into the intermediate state.
    for (int r = 0; r < 2; ++r)
        for (int col = 0; col < 2; ++col) {
            CHECK(a.cell(r, col).state() == S(0));
            CHECK(a.cell(r, col).is_formed());
        }
}
