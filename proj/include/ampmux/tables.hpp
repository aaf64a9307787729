#pragma once

// Reference-table and growth-curve emitters. The numbered tables cover the
// standard worked example (delta_r = 2 Ohm) under three conditions:
//   A: ideal            (Y = 0,      R_N = inf)
//   B: loaded readout   (Y = 1/50 S, R_N = inf)
//   C: loaded + finite  (Y = 1/50 S, R_N = 1 kOhm)
// Table 1 is the pixel ladder (k = 0..24), table 2 the two-coincidence
// ladder (rows 0..10, row k holding element k+1), table 3 the closed-form
// summary per task. Infeasible cells render as "-".

#include <optional>
#include <string>
#include <vector>

#include "ampmux/io.hpp"

namespace ampmux {

/// Renders table 1, 2 or 3. scenario restricts tables 1-2 to one condition
/// column ("A"|"B"|"C"); all three print by default. Text output is fixed
/// 2-decimal; csv/json carry full precision.
[[nodiscard]] std::string render_reference_table(int which,
                                                 const std::optional<std::string>& scenario,
                                                 EmitFormat format);

struct SweepOptions {
    /// Any of "pixel", "coincidence", "full", "pnr".
    std::vector<std::string> modes = {"pixel", "coincidence", "full"};
    int n_c = 2;
    int k_min = 1;
    int k_max = 24;
    double delta_r = 2.0;
    /// Non-ideal condition; the ideal columns always use y = 0, R_N = inf.
    double y = 0.02;
    double r_n = 1000.0;
};

/// CSV of ladder element values against k, one ideal and one non-ideal
/// column per mode (full identification has no non-ideal construction and
/// gets only the ideal column). Infeasible cells are empty.
[[nodiscard]] std::string render_growth_sweep(const SweepOptions& options);

}  // namespace ampmux
