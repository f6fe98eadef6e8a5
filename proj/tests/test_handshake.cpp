#include <doctest.h>

#include <algorithm>

#include "refsa/handshake.hpp"

using namespace refsa;

namespace {

bool violation_mentions(const std::optional<std::string>& v, const char* needle) {
    return v && v->find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("canonical traces are well formed") {
    CHECK(validate_trace(canonical_read_trace()) == std::nullopt);
    CHECK(validate_trace(canonical_write_trace(1)) == std::nullopt);
    CHECK(validate_trace(canonical_write_trace(2)) == std::nullopt);
}

TEST_CASE("canonical read cycle order") {
    const CycleTrace trace = canonical_read_trace();
    REQUIRE(trace.events.size() == 10);
    const char* expected[] = {"DR+",  "MEN+",  "MACK+", "DN+", "DN-",
                              "MEN-", "MACK-", "ACK+",  "DR-", "ACK-"};
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const std::string got = std::string(signal_name(trace.events[i].signal)) +
                                polarity_char(trace.events[i].polarity);
        CHECK(got == expected[i]);
        CHECK(trace.events[i].timestamp == static_cast<int>(i));
    }
}

TEST_CASE("write cycle phases bracket each pulse") {
    const CycleTrace via = canonical_write_trace(2);
    CHECK(via.events.size() == 4 + 2 * 6);
    CHECK(via.events.front().signal == Signal::DW);
    CHECK(via.events.back().signal == Signal::ACK);
    CHECK(via.events.back().polarity == Polarity::Minus);

    const CycleTrace direct = canonical_write_trace(1);
    CHECK(direct.events.size() == 4 + 6);
    CHECK(validate_trace(direct) == std::nullopt);
}

TEST_CASE("acknowledge before request is rejected") {
    CycleTrace trace = canonical_read_trace();
    // Swap MEN+ and MACK+.
    std::swap(trace.events[1], trace.events[2]);
    CHECK(violation_mentions(validate_trace(trace), "acknowledge before request"));
}

TEST_CASE("a write trace missing the intermediate phase is rejected") {
    CycleTrace trace = canonical_write_trace(2);
    // Drop the first selection phase (events 1..6).
    trace.events.erase(trace.events.begin() + 1, trace.events.begin() + 7);
    CHECK(violation_mentions(validate_trace(trace), "missing intermediate phase"));
}

TEST_CASE("polarity must alternate per signal") {
    CycleTrace trace = canonical_read_trace();
    trace.events[4] = trace.events[3]; // duplicate DN+
    CHECK(violation_mentions(validate_trace(trace), "polarity does not alternate"));
}

TEST_CASE("premature final acknowledge is rejected") {
    CycleTrace trace = canonical_read_trace();
    // Move ACK+ before the teardown events.
    std::rotate(trace.events.begin() + 4, trace.events.begin() + 7,
                trace.events.begin() + 8);
    CHECK(violation_mentions(validate_trace(trace), "premature acknowledge"));
}

TEST_CASE("wrong strobe kind is rejected") {
    CycleTrace trace = canonical_read_trace();
    trace.kind = CycleKind::Write;
    CHECK(violation_mentions(validate_trace(trace), "wrong strobe"));
}

TEST_CASE("any single mutation of a canonical trace is rejected") {
    const CycleTrace traces[] = {canonical_read_trace(), canonical_write_trace(1),
                                 canonical_write_trace(2)};
    for (const CycleTrace& canonical : traces) {
        // Drop each event in turn.
        for (std::size_t i = 0; i < canonical.events.size(); ++i) {
            CycleTrace mutated = canonical;
            mutated.events.erase(mutated.events.begin() + static_cast<long>(i));
            CHECK(validate_trace(mutated) != std::nullopt);
        }
        // Swap each adjacent pair in turn.
        for (std::size_t i = 0; i + 1 < canonical.events.size(); ++i) {
            CycleTrace mutated = canonical;
            std::swap(mutated.events[i], mutated.events[i + 1]);
            CHECK(validate_trace(mutated) != std::nullopt);
        }
    }
}

TEST_CASE("empty trace is rejected") {
    CycleTrace trace;
    trace.events.clear();
    CHECK(validate_trace(trace) != std::nullopt);
}
