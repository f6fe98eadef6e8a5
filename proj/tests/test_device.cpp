#include <doctest.h>

#include <vector>

#include "refsa/device.hpp"

using namespace refsa;

namespace {

// Independent oracle for the exposure -> state rule: scan the calibration
// widths and keep the largest level that fits.
StateId oracle_state_for_exposure(const StateTable& table, double exposure_ns) {
    int level = 0;
    for (int j = 1; j <= 6; ++j) {
        if (table.width_ns(S(j)) <= exposure_ns)
            level = j;
    }
    return S(level);
}

CellDevice fresh_cell(std::uint64_t stream = 7) { return CellDevice::formed(stream); }

const StateTable kTable = StateTable::defaults();
const VariationProfile kNoVariation = VariationProfile::disabled();

} // namespace

TEST_CASE("default calibration matches the configured nominals") {
    CHECK(kTable.width_ns(S(1)) == 5.0);
    CHECK(kTable.width_ns(S(2)) == 10.0);
    CHECK(kTable.width_ns(S(3)) == 15.0);
    CHECK(kTable.width_ns(S(4)) == 30.0);
    CHECK(kTable.width_ns(S(5)) == 60.0);
    CHECK(kTable.width_ns(S(6)) == 150.0);
    CHECK(kTable.current_ua(S(0)) == 12.8);
    CHECK(kTable.current_ua(S(6)) == 0.07);
    CHECK(kTable.resistance_kohm(S(0)) == 7.8);
    CHECK(kTable.resistance_kohm(S(6)) == 1492.5);
    CHECK_NOTHROW(kTable.validate());
}

TEST_CASE("apply_set lands in the intermediate state") {
    CellDevice cell = fresh_cell();
    cell.apply_reset(kTable, kTable.reset_pulse(15.0));
    REQUIRE(cell.state() == S(3));

    SUBCASE("from a programmed state") {
        cell.apply_set(kTable, kTable.set_pulse());
        CHECK(cell.state() == S(0));
        CHECK(cell.reset_exposure_ns() == 0.0);
    }
    SUBCASE("idempotent on the intermediate state") {
        cell.apply_set(kTable, kTable.set_pulse());
        cell.apply_set(kTable, kTable.set_pulse());
        CHECK(cell.state() == S(0));
        CHECK(cell.reset_exposure_ns() == 0.0);
    }
    SUBCASE("a longer pulse still lands in S0") {
        cell.apply_set(kTable, PulseSpec{kTable.set_voltage_v(), 40.0, 150.0});
        CHECK(cell.state() == S(0));
    }
    SUBCASE("too short") {
        cell.apply_reset(kTable, kTable.reset_pulse(150.0));
        REQUIRE(cell.state() == S(6));
        CHECK_THROWS_AS(
            cell.apply_set(kTable, PulseSpec{kTable.set_voltage_v(), 9.0, 150.0}),
            PulseTooShort);
    }
    SUBCASE("wrong amplitude") {
        CHECK_THROWS_AS(cell.apply_set(kTable, PulseSpec{1.8, 10.0, 150.0}),
                        WrongAmplitude);
    }
}

TEST_CASE("apply_reset follows cumulative exposure") {
    CellDevice cell = fresh_cell();

    SUBCASE("single pulse from S0") {
        cell.apply_reset(kTable, kTable.reset_pulse(15.0));
        CHECK(cell.state() == S(3));
    }
    SUBCASE("two 5 ns pulses land where one 10 ns pulse does") {
        // Oracle: the single-pulse landing state for the summed width.
        const StateId expected = oracle_state_for_exposure(kTable, 10.0);
        REQUIRE(expected == S(2));
        cell.apply_reset(kTable, kTable.reset_pulse(5.0));
        cell.apply_reset(kTable, kTable.reset_pulse(5.0));
        CHECK(cell.state() == expected);
    }
    SUBCASE("saturates at the top state") {
        cell.apply_reset(kTable, kTable.reset_pulse(150.0));
        REQUIRE(cell.state() == S(6));
        cell.apply_reset(kTable, kTable.reset_pulse(150.0));
        CHECK(cell.state() == S(6));
    }
    SUBCASE("wrong amplitude") {
        CHECK_THROWS_AS(cell.apply_reset(kTable, PulseSpec{-2.0, 10.0, 150.0}),
                        WrongAmplitude);
    }
    SUBCASE("virgin device rejects RESET") {
        CellDevice virgin;
        CHECK_FALSE(virgin.is_formed());
        CHECK_THROWS_AS(virgin.apply_reset(kTable, kTable.reset_pulse(5.0)),
                        NeverFormed);
    }
}

TEST_CASE("exposure to state mapping") {
    CHECK(kTable.state_for_exposure(0.0) == S(0));
    CHECK(kTable.state_for_exposure(30.0) == S(4));
    // Oracle: largest width not exceeding 100 ns is the S5 width.
    CHECK(oracle_state_for_exposure(kTable, 100.0) == S(5));
    CHECK(kTable.state_for_exposure(100.0) == S(5));

    // Property: agrees with the brute-force scan everywhere.
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double exposure = rng.next_double() * 400.0;
        CHECK(kTable.state_for_exposure(exposure) ==
              oracle_state_for_exposure(kTable, exposure));
    }
}

TEST_CASE("read_current returns the nominal scaled by variation") {
    CellDevice cell = fresh_cell();

    SUBCASE("nominals with variation off") {
        CHECK(cell.read_current(kTable, 0.1, kNoVariation) == 12.8);
        cell.apply_reset(kTable, kTable.reset_pulse(150.0));
        CHECK(cell.read_current(kTable, 0.1, kNoVariation) == 0.07);
    }
    SUBCASE("fixed device multiplier scales the current") {
        cell.apply_reset(kTable, kTable.reset_pulse(10.0));
        REQUIRE(cell.state() == S(2));
        StateMultipliers m = unit_multipliers();
        m[2] = 1.5;
        cell.set_d2d_multipliers(m);
        VariationProfile d2d_only;
        d2d_only.d2d_enabled = true;
        d2d_only.c2c_enabled = false;
        // Oracle: direct multiplication of the nominal.
        CHECK(cell.read_current(kTable, 0.1, d2d_only) == doctest::Approx(1.6 * 1.5));
    }
    SUBCASE("wrong read voltage") {
        CHECK_THROWS_AS(cell.read_current(kTable, 0.2, kNoVariation), WrongAmplitude);
    }
    SUBCASE("reads are non-destructive") {
        cell.apply_reset(kTable, kTable.reset_pulse(60.0));
        const StateId before = cell.state();
        const double exposure = cell.reset_exposure_ns();
        VariationProfile noisy;
        noisy.c2c_enabled = true;
        for (int i = 0; i < 100; ++i)
            cell.read_current(kTable, 0.1, noisy);
        CHECK(cell.state() == before);
        CHECK(cell.reset_exposure_ns() == exposure);
    }
}

TEST_CASE("device multiplier sampling") {
    const PhysicalModelParams params;

    SUBCASE("zero bounds give unit multipliers") {
        VariationProfile p;
        p.low_state_bound = 0.0;
        p.high_state_bound = 0.0;
        const StateMultipliers m = sample_d2d(params, p, 123);
        for (double v : m)
            CHECK(v == 1.0);
    }
    SUBCASE("draws stay inside the truncation bounds") {
        VariationProfile p; // defaults: 0.5 low, 0.2 high
        for (int draw = 0; draw < 2000; ++draw) {
            const StateMultipliers m = sample_d2d(params, p, 1000 + draw);
            for (int level = 0; level <= 3; ++level) {
                CHECK(m[level] >= 0.5);
                CHECK(m[level] <= 1.5);
            }
            for (int level = 4; level <= 6; ++level) {
                CHECK(m[level] >= 0.8);
                CHECK(m[level] <= 1.2);
            }
        }
    }
    SUBCASE("deterministic given the seed") {
        VariationProfile p;
        CHECK(sample_d2d(params, p, 42) == sample_d2d(params, p, 42));
        CHECK(sample_d2d(params, p, 42) != sample_d2d(params, p, 43));
    }
    SUBCASE("adversarial draws sit at the envelope edges") {
        VariationProfile p;
        p.uniform_at_bound = true;
        for (int draw = 0; draw < 50; ++draw) {
            const StateMultipliers m = sample_d2d(params, p, draw);
            for (int level = 0; level <= 3; ++level)
                CHECK((m[level] == 0.5 || m[level] == 1.5));
            for (int level = 4; level <= 6; ++level)
                CHECK((m[level] == 0.8 || m[level] == 1.2));
        }
    }
}

TEST_CASE("resistance staircase is monotone under RESET sequences") {
    Rng rng(5);
    for (int run = 0; run < 50; ++run) {
        CellDevice cell = fresh_cell(run);
        double last_resistance = kTable.resistance_kohm(cell.state());
        for (int pulse = 0; pulse < 12; ++pulse) {
            const double width = 1.0 + rng.next_double() * 149.0;
            cell.apply_reset(kTable, kTable.reset_pulse(width));
            const double resistance = kTable.resistance_kohm(cell.state());
            CHECK(resistance >= last_resistance);
            last_resistance = resistance;
        }
    }
}

TEST_CASE("calibration: each programming width lands exactly on its state") {
    for (int j = 1; j <= 6; ++j) {
        CellDevice cell = fresh_cell(static_cast<std::uint64_t>(j));
        cell.apply_set(kTable, kTable.set_pulse());
        cell.apply_reset(kTable, kTable.reset_pulse_for(S(j)));
        CHECK(cell.state() == S(j));
        CHECK(cell.read_current(kTable, 0.1, kNoVariation) == kTable.current_ua(S(j)));
    }
}

TEST_CASE("the state always tracks the exposure bookkeeping") {
    Rng rng(17);
    CellDevice cell = fresh_cell();
    for (int i = 0; i < 200; ++i) {
        if (rng.next_double() < 0.6) {
            cell.apply_reset(kTable,
                             kTable.reset_pulse(1.0 + rng.next_double() * 149.0));
        } else {
            cell.apply_set(kTable, kTable.set_pulse());
            CHECK(cell.reset_exposure_ns() == 0.0);
        }
        CHECK(cell.state() == oracle_state_for_exposure(kTable, cell.reset_exposure_ns()));
    }
}
