#pragma once

// Shunt-ladder synthesis: the smallest resistance set that keeps every
// required equivalence class one resolution step away from its neighbours,
// for ideal and loaded bias/readout and for finite normal resistances.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ampmux/circuit.hpp"
#include "ampmux/classes.hpp"

namespace ampmux {

/// Inputs to a ladder design. delta_r is the resistance resolution the
/// readout can distinguish, y the effective admittance loading the series,
/// and normal_resistance the (common) switched-wire resistance.
struct DesignRequest {
    ApplicationMode mode = ApplicationMode::pixel_array();
    int detector_count = 1;
    double delta_r = 0.0;
    double y = 0.0;
    double normal_resistance = kInfinite;

    /// Throws std::invalid_argument on n < 1, delta_r <= 0, y < 0 or
    /// normal_resistance <= 0.
    void validate() const;
};

struct DesignResult {
    ApplicationMode mode = ApplicationMode::pixel_array();
    double delta_r = 0.0;
    double y = 0.0;
    double normal_resistance = kInfinite;
    /// Shunt resistances r_k, k = 1..n, nondecreasing.
    std::vector<double> shunts;
    /// Parallel shunt||normal values the design actually places in the series.
    std::vector<double> parallels;
    /// Construction anchors, one per k = 0..n: the largest in-scope class
    /// resistance the k-th element must clear (photon-number: k times the
    /// common parallel value).
    std::vector<double> levels;
    /// Upper bound on discriminable class count, 1/(y*delta_r); infinite
    /// when y = 0.
    double feasible_limit = kInfinite;

    /// Builds the designed series as an array of elements sharing the
    /// request's normal resistance. Inductance metadata defaults to zero.
    [[nodiscard]] ArraySpec to_array(double inductance = 0.0) const;
};

enum class InfeasibleCause {
    ClassLimit,        ///< class count reaches the 1/(y*delta_r) bound
    NormalResistance,  ///< a required parallel value reaches the normal resistance
    DenominatorSign,   ///< a synthesis denominator loses positivity
    Unsupported,       ///< no construction exists for the requested regime
};

/// Why a request cannot be met, and the largest detector count that can.
struct Infeasibility {
    InfeasibleCause cause = InfeasibleCause::DenominatorSign;
    int max_supported_n = 0;
    std::string message;
};

using DesignOutcome = std::variant<DesignResult, Infeasibility>;

[[nodiscard]] inline bool is_feasible(const DesignOutcome& o) {
    return std::holds_alternative<DesignResult>(o);
}
[[nodiscard]] inline const DesignResult& result_of(const DesignOutcome& o) {
    return std::get<DesignResult>(o);
}
[[nodiscard]] inline const Infeasibility& infeasibility_of(const DesignOutcome& o) {
    return std::get<Infeasibility>(o);
}

/// Thrown by level_sequence when the requested level index is not reachable
/// under the given loading.
class InfeasibleLevel : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Largest number of classes that stays discriminable under loading:
/// 1/(y*delta_r), infinite when y = 0. Class counts must stay strictly
/// below this value.
[[nodiscard]] double feasibility_limit(double y, double delta_r);

/// The class-resistance ladder with exactly one resolution step between
/// consecutive voltage levels: R_beta = beta*delta_r / (1 - beta*y*delta_r).
/// R_0 = 0; strictly increasing; throws InfeasibleLevel for
/// beta >= feasibility_limit.
[[nodiscard]] double level_sequence(int beta, double y, double delta_r);

/// Photon-number counting: one common shunt
/// r = delta_r / (1 - n*y*delta_r - delta_r/R_N), placing class n exactly on
/// the level ladder. Reduces to r = delta_r in the ideal limit.
[[nodiscard]] DesignOutcome design_pnr(const DesignRequest& req);

/// Single-switch identification: r_k = k*delta_r / (1 - k*y*delta_r -
/// k*delta_r/R_N); the parallel values land exactly on level_sequence(k).
/// Reduces to r_k = k*delta_r in the ideal limit.
[[nodiscard]] DesignOutcome design_pixel(const DesignRequest& req);

/// Up-to-n_c coincidence identification. Each new parallel value must clear
/// the worst already-representable case (the sum of the previous n_c
/// parallels) by one resolution step under loading; solved as a recurrence.
/// With n_c = 1 this equals the pixel design; with n_c = n and ideal
/// conditions it becomes the doubling ladder.
[[nodiscard]] DesignOutcome design_coincidence(const DesignRequest& req);

/// Full-state identification under ideal conditions: r_k = delta_r * 2^(k-1),
/// a binary weighting whose 2^n series sums are consecutive multiples of
/// delta_r. Loaded or finite-normal-resistance requests are Unsupported —
/// no construction is offered for that regime.
[[nodiscard]] DesignOutcome design_full(const DesignRequest& req);

/// Dispatch on req.mode.
[[nodiscard]] DesignOutcome design(const DesignRequest& req);

/// Two-coincidence ladder element in exact integer units of delta_r
/// (2*F_k + F_{k-1} - 1 with F the Fibonacci numbers). Equals the
/// coincidence recurrence in the ideal limit. k must be in 1..80 so the
/// value fits 64 bits exactly.
[[nodiscard]] std::uint64_t two_photon_ladder_units(int k);

/// two_photon_ladder_units(k) scaled by delta_r.
[[nodiscard]] double two_photon_closed_form(int k, double delta_r);

}  // namespace ampmux
