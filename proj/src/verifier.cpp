#include "ampmux/verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ampmux {

namespace {

constexpr std::uint64_t kEnumerationBound = std::uint64_t{1} << 30;

struct Band {
    double v_min = kInfinite;
    double v_max = -kInfinite;
    std::uint64_t states = 0;
};

// Depth-first subset walk with a running resistance sum. Bits are added in
// ascending detector order, so each state's sum is built by the same additions
// series_resistance performs and the two agree bit for bit.
template <typename Fn>
void walk(const std::vector<double>& parallel, int budget, int next,
          std::uint64_t mask, double r_sum, Fn&& fn) {
    fn(mask, r_sum);
    if (budget == 0) return;
    const int n = static_cast<int>(parallel.size());
    for (int k = next; k <= n; ++k) {
        walk(parallel, budget - 1, k + 1, mask | (std::uint64_t{1} << (k - 1)),
             r_sum + parallel[static_cast<std::size_t>(k - 1)], fn);
    }
}

// Key is the switched count for the counting task, the state mask otherwise.
ClassLabel label_for_key(const ApplicationMode& mode, int n, std::uint64_t key) {
    if (mode.task() == DetectionTask::PhotonNumber)
        return ClassLabel::from_count(static_cast<int>(key));
    std::vector<int> members;
    for (int k = 1; k <= n; ++k) {
        if ((key >> (k - 1)) & 1u) members.push_back(k);
    }
    return ClassLabel::from_members(std::move(members));
}

void check_enumeration_bounds(const ApplicationMode& mode, int n) {
    switch (mode.task()) {
        case DetectionTask::PhotonNumber:
        case DetectionTask::Full:
            if (n > 30)
                throw std::invalid_argument("exhaustive verification is bounded at n <= 30 "
                                            "for counting and full-state tasks");
            break;
        case DetectionTask::Coincidence:
            if (class_count(mode, n) > kEnumerationBound)
                throw std::invalid_argument("coincidence verification is bounded at 2^30 "
                                            "in-scope states");
            break;
        case DetectionTask::PixelArray:
            break;
    }
}

}  // namespace

VerificationReport verify(const ArraySpec& array, const CircuitParams& params,
                          const ApplicationMode& mode) {
    const int n = array.size();
    mode.validate_for(n);
    check_enumeration_bounds(mode, n);

    std::vector<double> parallel;
    parallel.reserve(static_cast<std::size_t>(n));
    for (const auto& elem : array.elements())
        parallel.push_back(detector_resistance(elem, true));

    // Accumulate one voltage band per class. Keys are the switched count for
    // the counting task and the state mask otherwise; min/max accumulation is
    // order-independent, so the walk order cannot leak into the report.
    std::map<std::uint64_t, Band> by_class;
    std::uint64_t visited = 0;
    const int budget = mode.switch_budget(n);
    const bool counting = mode.task() == DetectionTask::PhotonNumber;

    walk(parallel, budget, 1, 0, 0.0, [&](std::uint64_t mask, double r_sum) {
        const double v = measured_output(params, total_voltage(params, r_sum));
        const std::uint64_t key = counting ? std::uint64_t(std::popcount(mask)) : mask;
        Band& band = by_class[key];
        band.v_min = std::min(band.v_min, v);
        band.v_max = std::max(band.v_max, v);
        ++band.states;
        ++visited;
    });

    VerificationReport report;
    report.mode = mode;
    report.detector_count = n;
    report.delta_v = params.voltage_resolution();
    report.states_enumerated = visited;
    report.bands.reserve(by_class.size());
    for (const auto& [key, band] : by_class) {
        report.bands.push_back({label_for_key(mode, n, key), band.v_min, band.v_max, band.states});
    }
    std::stable_sort(report.bands.begin(), report.bands.end(),
                     [](const ClassBand& a, const ClassBand& b) { return a.v_min < b.v_min; });

    report.max_intra_class_spread = 0.0;
    for (const auto& band : report.bands)
        report.max_intra_class_spread =
            std::max(report.max_intra_class_spread, band.v_max - band.v_min);

    if (report.bands.size() < 2) {
        report.min_inter_class_gap = kInfinite;
        report.pass = true;
        if (!report.bands.empty())
            report.worst_pair = {report.bands.front().label, report.bands.front().label};
        return report;
    }

    // Minimum edge-to-edge distance over all class pairs: with bands sorted by
    // v_min, it is realized against the largest v_max seen so far.
    double min_gap = kInfinite;
    std::size_t worst_lo = 0, worst_hi = 1;
    std::size_t max_hi_idx = 0;
    for (std::size_t j = 1; j < report.bands.size(); ++j) {
        const double gap = report.bands[j].v_min - report.bands[max_hi_idx].v_max;
        if (gap < min_gap) {
            min_gap = gap;
            worst_lo = max_hi_idx;
            worst_hi = j;
        }
        if (report.bands[j].v_max > report.bands[max_hi_idx].v_max) max_hi_idx = j;
    }
    report.min_inter_class_gap = min_gap;
    report.worst_pair = {report.bands[worst_lo].label, report.bands[worst_hi].label};
    // Slack admits designs whose gaps equal delta_v exactly up to rounding.
    report.pass = min_gap >= report.delta_v * (1.0 - 1e-9);
    return report;
}

DecodeOutcome decode(const ArraySpec& array, const CircuitParams& params,
                     const ApplicationMode& mode, double v_measured) {
    const VerificationReport report = verify(array, params, mode);
    if (!report.pass) {
        return DecodeFailure{DecodeErrorKind::AmbiguousDesign,
                             "design does not verify: class bands are closer than the "
                             "voltage resolution, so measurements cannot be attributed"};
    }

    const auto& bands = report.bands;
    const double top = bands.back().v_max;
    if (v_measured > top + report.delta_v) {
        return DecodeFailure{DecodeErrorKind::OutOfRange,
                             "measurement exceeds the top class band by more than the "
                             "voltage resolution"};
    }

    auto distance = [&](const ClassBand& band) {
        if (v_measured < band.v_min) return band.v_min - v_measured;
        if (v_measured > band.v_max) return v_measured - band.v_max;
        return 0.0;
    };

    std::size_t best = 0;
    double best_d = distance(bands[0]);
    for (std::size_t i = 1; i < bands.size(); ++i) {
        const double d = distance(bands[i]);
        if (d < best_d) {
            best = i;
            best_d = d;
        }
    }
    double margin = kInfinite;
    for (std::size_t i = 0; i < bands.size(); ++i) {
        if (i != best) margin = std::min(margin, distance(bands[i]));
    }
    return DecodeResult{bands[best].label, margin};
}

double simulate(const ArraySpec& array, const CircuitParams& params,
                const SwitchingState& state, double perturbation) {
    return output_voltage(params, array, state) + perturbation;
}

}  // namespace ampmux
