#pragma once

// Stationary lumped-element model of a current-biased series array of
// switching detectors. Everything here is a pure function of its inputs;
// values are immutable after construction and safe to share across threads.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ampmux {

/// Open-circuit impedances and ideal normal resistances are represented by
/// IEEE infinity. Formulas branch on it explicitly, so the limits are exact
/// rather than approximated by a large finite number.
inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

[[nodiscard]] inline bool is_infinite(double x) noexcept { return std::isinf(x); }

/// Bias and readout network around the detector series.
///
/// The bias source drives a constant current into the series; readout taps
/// the series voltage through a two-impedance divider. The second output
/// impedance may be infinite (open-circuit voltage measurement).
class CircuitParams {
public:
    /// Throws std::invalid_argument when any invariant fails:
    /// bias_current > 0, voltage_resolution > 0, bias_admittance >= 0,
    /// output_impedance1 >= 0 (finite), output_impedance2 > 0 (may be inf).
    CircuitParams(double bias_current,
                  double bias_admittance,
                  double output_impedance1,
                  double output_impedance2,
                  double voltage_resolution);

    /// Canonical realization of design-level inputs: an effective admittance
    /// y seen by the series and a resistance resolution delta_r. Maps to
    /// (i_b, y_b = y, z_o1 = 0, z_o2 = inf, delta_v = delta_r * i_b).
    [[nodiscard]] static CircuitParams from_design_values(double bias_current,
                                                          double effective_admittance,
                                                          double delta_r);

    [[nodiscard]] double bias_current() const noexcept { return bias_current_; }
    [[nodiscard]] double bias_admittance() const noexcept { return bias_admittance_; }
    [[nodiscard]] double output_impedance1() const noexcept { return output_impedance1_; }
    [[nodiscard]] double output_impedance2() const noexcept { return output_impedance2_; }
    [[nodiscard]] double voltage_resolution() const noexcept { return voltage_resolution_; }

    /// Total loading seen by the series: y_b + 1/(z_o1 + z_o2).
    /// Equals y_b when z_o2 is infinite.
    [[nodiscard]] double effective_admittance() const noexcept;

    /// Minimum resistance increment resolvable at the output:
    /// delta_v * (z_o1 + z_o2) / (i_b * z_o2). Equals delta_v / i_b when
    /// z_o1 = 0 or z_o2 = inf.
    [[nodiscard]] double resistance_resolution() const noexcept;

    /// Output divider ratio z_o2 / (z_o1 + z_o2); 1 when z_o2 is infinite.
    [[nodiscard]] double divider_ratio() const noexcept;

private:
    double bias_current_;
    double bias_admittance_;
    double output_impedance1_;
    double output_impedance2_;
    double voltage_resolution_;
};

/// One detector in the series: a shunt resistor in parallel with the wire's
/// normal resistance when switched. Inductance is carried only so array
/// descriptions round-trip through files; no stationary computation reads it.
class DetectorElement {
public:
    explicit DetectorElement(double shunt,
                             double normal_resistance = kInfinite,
                             double inductance = 0.0);

    [[nodiscard]] double shunt() const noexcept { return shunt_; }
    [[nodiscard]] double normal_resistance() const noexcept { return normal_resistance_; }
    [[nodiscard]] double inductance() const noexcept { return inductance_; }

private:
    double shunt_;
    double normal_resistance_;
    double inductance_;
};

/// Ordered series of detector elements, indexed k = 1..n on the public
/// surface. n is capped at 62 so switching states pack into one word.
class ArraySpec {
public:
    explicit ArraySpec(std::vector<DetectorElement> elements);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(elements_.size()); }
    [[nodiscard]] const std::vector<DetectorElement>& elements() const noexcept { return elements_; }
    /// 1-based access.
    [[nodiscard]] const DetectorElement& element(int k) const;

private:
    std::vector<DetectorElement> elements_;
};

/// Switch flags for every detector, packed into an index. Bit k-1 of the
/// index is the flag of detector k, so the index equals the case number
/// j = sum over switched k of 2^(k-1). Strings list detector 1 first.
class SwitchingState {
public:
    SwitchingState(int detector_count, std::uint64_t index);

    /// Parses e.g. "0110": character i is the flag of detector i+1.
    [[nodiscard]] static SwitchingState from_string(const std::string& bits);

    [[nodiscard]] int size() const noexcept { return detector_count_; }
    [[nodiscard]] std::uint64_t index() const noexcept { return index_; }
    /// 1-based detector flag.
    [[nodiscard]] bool is_switched(int k) const;
    [[nodiscard]] int switched_count() const noexcept;
    /// Ascending 1-based indices of switched detectors.
    [[nodiscard]] std::vector<int> switched_indices() const;
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] bool operator==(const SwitchingState&) const = default;

private:
    int detector_count_;
    std::uint64_t index_;
};

/// Resistance contributed by one element: 0 when not switched, the parallel
/// shunt || normal_resistance when switched (exactly the shunt when the
/// normal resistance is infinite).
[[nodiscard]] double detector_resistance(const DetectorElement& elem, bool switched);

/// Sum of detector_resistance over the series, accumulated in ascending k.
/// Throws std::invalid_argument when state length differs from the array's.
[[nodiscard]] double series_resistance(const ArraySpec& array, const SwitchingState& state);

/// Series voltage under loading: i_b * R / (1 + Y R). Strictly increasing
/// and concave in R; the Y = 0 limit is plain Ohm's law. R must be >= 0.
[[nodiscard]] double total_voltage(const CircuitParams& params, double series_r);

/// Voltage seen at the output tap: the divider ratio applied to the series
/// voltage. Identity when z_o1 = 0.
[[nodiscard]] double measured_output(const CircuitParams& params, double series_v);

/// measured_output(total_voltage(series_resistance(state))) — the one output
/// voltage used everywhere downstream.
[[nodiscard]] double output_voltage(const CircuitParams& params,
                                    const ArraySpec& array,
                                    const SwitchingState& state);

}  // namespace ampmux
