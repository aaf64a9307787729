#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "ampmux/designer.hpp"
#include "ampmux/verifier.hpp"
#include "doctest.h"

using namespace ampmux;

namespace {

ArraySpec ideal_array(const std::vector<double>& shunts) {
    std::vector<DetectorElement> elems;
    for (double r : shunts) elems.emplace_back(r);
    return ArraySpec(std::move(elems));
}

DesignRequest request(ApplicationMode mode, int n, double y, double delta_r, double r_n) {
    DesignRequest req;
    req.mode = mode;
    req.detector_count = n;
    req.delta_r = delta_r;
    req.y = y;
    req.normal_resistance = r_n;
    return req;
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("ideal pixel design verifies with exactly one resolution step") {
    const auto outcome = design_pixel(request(ApplicationMode::pixel_array(), 6, 0.0, 2.0, kInfinite));
    REQUIRE(is_feasible(outcome));
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, 2.0);
    const VerificationReport report =
        verify(result_of(outcome).to_array(), params, ApplicationMode::pixel_array());
    CHECK(report.pass);
    CHECK(report.bands.size() == 7);
    CHECK(report.states_enumerated == 7);
    CHECK(report.min_inter_class_gap == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(report.max_intra_class_spread == 0.0);
}

TEST_CASE("two-coincidence ladder against an independent brute force") {
    const std::vector<double> shunts = {2, 4, 8, 14, 24, 40};  // {1,2,4,7,12,20} * 2 Ohm
    const ArraySpec array = ideal_array(shunts);
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, 2.0);
    const ApplicationMode mode = ApplicationMode::coincidence(2);

    // Oracle: enumerate the in-scope sums directly and take the smallest
    // pairwise difference of the sorted distinct voltages.
    std::vector<double> voltages;
    for (int mask = 0; mask < 64; ++mask) {
        if (std::popcount(static_cast<unsigned>(mask)) > 2) continue;
        double sum = 0.0;
        for (int k = 0; k < 6; ++k)
            if (mask & (1 << k)) sum += shunts[static_cast<std::size_t>(k)];
        voltages.push_back(sum);  // I_b = 1 A, no loading: volts == ohms
    }
    std::sort(voltages.begin(), voltages.end());
    double oracle_gap = kInfinite;
    for (std::size_t i = 1; i < voltages.size(); ++i)
        oracle_gap = std::min(oracle_gap, voltages[i] - voltages[i - 1]);

    const VerificationReport report = verify(array, params, mode);
    CHECK(report.bands.size() == 22);
    CHECK(report.states_enumerated == 22);
    CHECK(report.min_inter_class_gap == doctest::Approx(oracle_gap).epsilon(1e-12));
    CHECK(oracle_gap == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(report.pass);
}

TEST_CASE("loaded counting ladder fails the full-gap check") {
    const auto outcome = design_pnr(request(ApplicationMode::photon_number(), 2, 0.1, 1.0, kInfinite));
    REQUIRE(is_feasible(outcome));
    CHECK(result_of(outcome).shunts.front() == doctest::Approx(1.25).epsilon(1e-12));
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.1, 1.0);
    const VerificationReport report =
        verify(result_of(outcome).to_array(), params, ApplicationMode::photon_number());
    CHECK_FALSE(report.pass);
    CHECK(report.min_inter_class_gap == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(std::abs(report.min_inter_class_gap - 0.8889) < 1e-4);
    CHECK(report.worst_pair.first == ClassLabel::from_count(1));
    CHECK(report.worst_pair.second == ClassLabel::from_count(2));
    CHECK(report.states_enumerated == 4);
    CHECK(report.bands.size() == 3);
}

TEST_CASE("loaded coincidence ladders under-separate overlapping pairs") {
    // The construction clears each new single switching against the worst
    // previous pair, but loading compresses pairs that share the largest
    // element: with Y = 1/50 S and 2 Ohm steps, {2} vs {1,2} sits at
    // f(25/12 + 100/23) - 4 = 1775/311.5 - 4, below the 2 V resolution.
    // The report states it; nothing is patched.
    const auto outcome =
        design_coincidence(request(ApplicationMode::coincidence(2), 2, 1.0 / 50.0, 2.0, kInfinite));
    REQUIRE(is_feasible(outcome));
    const CircuitParams params = CircuitParams::from_design_values(1.0, 1.0 / 50.0, 2.0);
    const VerificationReport report =
        verify(result_of(outcome).to_array(), params, ApplicationMode::coincidence(2));
    CHECK_FALSE(report.pass);
    CHECK(report.min_inter_class_gap ==
          doctest::Approx(1775.0 / 311.5 - 4.0).epsilon(1e-9));
    CHECK(report.worst_pair.first == ClassLabel::from_members({2}));
    CHECK(report.worst_pair.second == ClassLabel::from_members({1, 2}));
}

TEST_CASE("binary ladder produces every resolution multiple once") {
    const auto outcome = design_full(request(ApplicationMode::full(), 4, 0.0, 2.0, kInfinite));
    REQUIRE(is_feasible(outcome));
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, 2.0);
    const VerificationReport report =
        verify(result_of(outcome).to_array(), params, ApplicationMode::full());
    CHECK(report.pass);
    REQUIRE(report.bands.size() == 16);
    for (std::size_t j = 0; j < 16; ++j) {
        CHECK(report.bands[j].v_min == 2.0 * static_cast<double>(j));
        CHECK(report.bands[j].v_max == report.bands[j].v_min);
        CHECK(report.bands[j].state_count == 1);
    }
}

TEST_CASE("every ideal design certifies with the exact resolution gap") {
    const double dr = 2.0;
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, dr);
    for (int n = 1; n <= 12; ++n) {
        std::vector<ApplicationMode> modes = {ApplicationMode::photon_number(),
                                              ApplicationMode::pixel_array(),
                                              ApplicationMode::full()};
        if (n >= 2) modes.push_back(ApplicationMode::coincidence(2));
        if (n >= 3) modes.push_back(ApplicationMode::coincidence(3));
        for (const auto& mode : modes) {
            DesignRequest req = request(mode, n, 0.0, dr, kInfinite);
            const auto outcome = design(req);
            REQUIRE(is_feasible(outcome));
            const VerificationReport report =
                verify(result_of(outcome).to_array(), params, mode);
            CHECK(report.pass);
            CHECK(report.min_inter_class_gap ==
                  doctest::Approx(params.voltage_resolution()).epsilon(1e-9));
        }
    }
}

TEST_CASE("loaded pixel ladders verify at every feasible size") {
    // Condition C supports n = 23; its last element exceeds the normal
    // resistance, which is fine because only the parallel value matters.
    const auto outcome =
        design_pixel(request(ApplicationMode::pixel_array(), 23, 1.0 / 50.0, 2.0, 1000.0));
    REQUIRE(is_feasible(outcome));
    CHECK(result_of(outcome).shunts.back() > 1000.0);
    const CircuitParams params = CircuitParams::from_design_values(1e-3, 1.0 / 50.0, 2.0);
    const VerificationReport report =
        verify(result_of(outcome).to_array(), params, ApplicationMode::pixel_array());
    CHECK(report.pass);
    CHECK(report.min_inter_class_gap ==
          doctest::Approx(params.voltage_resolution()).epsilon(1e-9));
    CHECK(report.bands.size() == 24);
}

TEST_CASE("counting bands collapse to points for equal shunts") {
    std::vector<DetectorElement> elems(5, DetectorElement(70.0, 1600.0));
    const ArraySpec array{std::move(elems)};
    const CircuitParams params(1e-3, 0.0, 0.0, kInfinite, 1e-5);
    const VerificationReport report = verify(array, params, ApplicationMode::photon_number());
    CHECK(report.max_intra_class_spread == 0.0);
    CHECK(report.bands.size() == 6);
    CHECK(report.states_enumerated == 32);
}

TEST_CASE("report is deterministic") {
    const auto outcome =
        design_coincidence(request(ApplicationMode::coincidence(2), 8, 1.0 / 50.0, 2.0, kInfinite));
    REQUIRE(is_feasible(outcome));
    const CircuitParams params = CircuitParams::from_design_values(1e-3, 1.0 / 50.0, 2.0);
    const ArraySpec array = result_of(outcome).to_array();
    const VerificationReport a = verify(array, params, ApplicationMode::coincidence(2));
    const VerificationReport b = verify(array, params, ApplicationMode::coincidence(2));
    CHECK(a.min_inter_class_gap == b.min_inter_class_gap);
    CHECK(a.max_intra_class_spread == b.max_intra_class_spread);
    REQUIRE(a.bands.size() == b.bands.size());
    for (std::size_t i = 0; i < a.bands.size(); ++i) {
        CHECK(a.bands[i].label == b.bands[i].label);
        CHECK(a.bands[i].v_min == b.bands[i].v_min);
        CHECK(a.bands[i].v_max == b.bands[i].v_max);
    }
}

TEST_CASE("switching one more detector never lowers the output") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> shunt_dist(1.0, 400.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 7);
        std::vector<DetectorElement> elems;
        for (int k = 0; k < n; ++k)
            elems.emplace_back(shunt_dist(rng), (trial % 2) ? 1600.0 : kInfinite);
        const ArraySpec array{std::move(elems)};
        const CircuitParams params(1e-3, (trial % 3) * 0.01, 10.0, 50.0, 1e-6);
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
            const SwitchingState state(n, j);
            const double base = output_voltage(params, array, state);
            for (int k = 1; k <= n; ++k) {
                if (state.is_switched(k)) continue;
                const SwitchingState more(n, j | (std::uint64_t{1} << (k - 1)));
                CHECK(output_voltage(params, array, more) >= base);
            }
        }
    }
}

TEST_CASE("enumeration bounds are enforced") {
    std::vector<DetectorElement> elems(31, DetectorElement(2.0));
    const ArraySpec array{std::move(elems)};
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, 2.0);
    CHECK_THROWS_AS(verify(array, params, ApplicationMode::full()), std::invalid_argument);
    CHECK_THROWS_AS(verify(array, params, ApplicationMode::photon_number()),
                    std::invalid_argument);
    // Pixel stays linear in n and is fine at the same size (all-equal shunts
    // make the single-switch classes collide, so it cannot pass).
    const VerificationReport pixel = verify(array, params, ApplicationMode::pixel_array());
    CHECK(pixel.states_enumerated == 32);
    CHECK_FALSE(pixel.pass);
}

TEST_CASE("decode attributes voltages to the nearest band") {
    const ArraySpec array = ideal_array({2.0, 4.0, 6.0});
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, 2.0);
    const ApplicationMode mode = ApplicationMode::pixel_array();

    const DecodeOutcome centre = decode(array, params, mode, 4.0);
    REQUIRE(decoded(centre));
    CHECK(std::get<DecodeResult>(centre).label == ClassLabel::from_members({2}));
    CHECK(std::get<DecodeResult>(centre).margin == doctest::Approx(2.0).epsilon(1e-12));

    const DecodeOutcome offset = decode(array, params, mode, 4.9);
    REQUIRE(decoded(offset));
    CHECK(std::get<DecodeResult>(offset).label == ClassLabel::from_members({2}));
    CHECK(std::get<DecodeResult>(offset).margin == doctest::Approx(1.1).epsilon(1e-12));

    const DecodeOutcome beyond = decode(array, params, mode, 100.0);
    REQUIRE_FALSE(decoded(beyond));
    CHECK(std::get<DecodeFailure>(beyond).kind == DecodeErrorKind::OutOfRange);

    // Just past the top band is still attributable.
    const DecodeOutcome near_top = decode(array, params, mode, 7.5);
    REQUIRE(decoded(near_top));
    CHECK(std::get<DecodeResult>(near_top).label == ClassLabel::from_members({3}));
}

TEST_CASE("decode refuses designs that do not verify") {
    // 3 and 3.5 Ohm are closer than the 2 Ohm resolution.
    const ArraySpec array = ideal_array({3.0, 3.5});
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, 2.0);
    const DecodeOutcome outcome = decode(array, params, ApplicationMode::pixel_array(), 3.0);
    REQUIRE_FALSE(decoded(outcome));
    CHECK(std::get<DecodeFailure>(outcome).kind == DecodeErrorKind::AmbiguousDesign);
}

TEST_CASE("decode round-trips every in-scope state under half-step noise") {
    const auto outcome =
        design_coincidence(request(ApplicationMode::coincidence(2), 5, 0.0, 2.0, kInfinite));
    REQUIRE(is_feasible(outcome));
    const ArraySpec array = result_of(outcome).to_array();
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, 2.0);
    const ApplicationMode mode = ApplicationMode::coincidence(2);
    const double dv = params.voltage_resolution();
    for (const auto& state : in_scope_states(mode, 5)) {
        for (double eps : {-0.49 * dv, 0.0, 0.49 * dv}) {
            const double v = simulate(array, params, state, eps);
            const DecodeOutcome out = decode(array, params, mode, v);
            REQUIRE(decoded(out));
            CHECK(std::get<DecodeResult>(out).label == *classify(mode, state));
        }
    }
}

TEST_CASE("simulate composes the readout model") {
    const ArraySpec array = ideal_array({2.0, 4.0, 8.0});
    const CircuitParams params = CircuitParams::from_design_values(1.0, 0.0, 2.0);
    CHECK(simulate(array, params, SwitchingState(3, 0), 0.0) == 0.0);
    // Detectors 1 and 2 switched.
    CHECK(simulate(array, params, SwitchingState(3, 0b011), 0.0) == 6.0);
    const SwitchingState state(3, 0b101);
    CHECK(simulate(array, params, state, 0.0) == output_voltage(params, array, state));
    CHECK(simulate(array, params, state, 0.25) ==
          output_voltage(params, array, state) + 0.25);
}

}  // TEST_SUITE
