#pragma once

// Exhaustive certification: enumerate every in-scope switching state, compute
// its output voltage, and check that every pair of equivalence classes stays
// at least one voltage resolution apart. Nothing here reuses the designer's
// algebra; it only sums resistances and applies the readout model.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ampmux/circuit.hpp"
#include "ampmux/classes.hpp"

namespace ampmux {

/// Interval of output voltages produced by the states of one class.
struct ClassBand {
    ClassLabel label = ClassLabel::from_count(0);
    double v_min = 0.0;
    double v_max = 0.0;
    std::uint64_t state_count = 0;
};

struct VerificationReport {
    ApplicationMode mode = ApplicationMode::pixel_array();
    int detector_count = 0;
    double delta_v = 0.0;
    /// Bands sorted by ascending v_min.
    std::vector<ClassBand> bands;
    /// Smallest edge-to-edge distance between any two class bands; negative
    /// when bands overlap, infinite when there is a single class.
    double min_inter_class_gap = 0.0;
    /// The two classes realizing the minimum gap.
    std::pair<ClassLabel, ClassLabel> worst_pair =
        {ClassLabel::from_count(0), ClassLabel::from_count(0)};
    double max_intra_class_spread = 0.0;
    /// All bands disjoint and separated by at least delta_v
    /// (up to a 1e-9 relative slack for exact-equality designs).
    bool pass = false;
    std::uint64_t states_enumerated = 0;
};

/// Enumerates every in-scope state (never samples) and reports class bands,
/// the worst pairwise band gap, and the pass verdict against delta_v.
///
/// Enumeration guards: n <= 30 for PhotonNumber/Full; for Coincidence the
/// in-scope state count must stay within 2^30. Throws std::invalid_argument
/// when the bound is exceeded or the state length mismatches.
[[nodiscard]] VerificationReport verify(const ArraySpec& array,
                                        const CircuitParams& params,
                                        const ApplicationMode& mode);

struct DecodeResult {
    ClassLabel label = ClassLabel::from_count(0);
    /// Distance from the measured voltage to the nearest competing band.
    double margin = 0.0;
};

enum class DecodeErrorKind {
    AmbiguousDesign,  ///< verification did not pass; no decode promise exists
    OutOfRange,       ///< measurement beyond the top band by more than delta_v
};

struct DecodeFailure {
    DecodeErrorKind kind = DecodeErrorKind::AmbiguousDesign;
    std::string message;
};

using DecodeOutcome = std::variant<DecodeResult, DecodeFailure>;

[[nodiscard]] inline bool decoded(const DecodeOutcome& o) {
    return std::holds_alternative<DecodeResult>(o);
}

/// Maps a measured output voltage back to the class whose band is nearest.
/// Runs verify first and refuses (AmbiguousDesign) unless it passes, so a
/// successful decode carries the exhaustive guarantee: any in-scope state
/// measured within delta_v/2 of its true voltage decodes to its own class.
[[nodiscard]] DecodeOutcome decode(const ArraySpec& array,
                                   const CircuitParams& params,
                                   const ApplicationMode& mode,
                                   double v_measured);

/// Output voltage of one state plus a caller-chosen perturbation.
[[nodiscard]] double simulate(const ArraySpec& array,
                              const CircuitParams& params,
                              const SwitchingState& state,
                              double perturbation);

}  // namespace ampmux
