#include "ampmux/circuit.hpp"

#include <bit>
#include <stdexcept>

namespace ampmux {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

CircuitParams::CircuitParams(double bias_current,
                             double bias_admittance,
                             double output_impedance1,
                             double output_impedance2,
                             double voltage_resolution)
    : bias_current_(bias_current),
      bias_admittance_(bias_admittance),
      output_impedance1_(output_impedance1),
      output_impedance2_(output_impedance2),
      voltage_resolution_(voltage_resolution) {
    require(finite_positive(bias_current), "bias current must be finite and > 0");
    require(std::isfinite(bias_admittance) && bias_admittance >= 0.0,
            "bias admittance must be finite and >= 0");
    require(std::isfinite(output_impedance1) && output_impedance1 >= 0.0,
            "output impedance 1 must be finite and >= 0");
    require(output_impedance2 > 0.0 && !std::isnan(output_impedance2),
            "output impedance 2 must be > 0 (may be inf)");
    require(finite_positive(voltage_resolution), "voltage resolution must be finite and > 0");
}

CircuitParams CircuitParams::from_design_values(double bias_current,
                                                double effective_admittance,
                                                double delta_r) {
    require(finite_positive(bias_current), "bias current must be finite and > 0");
    require(finite_positive(delta_r), "resistance resolution must be finite and > 0");
    return CircuitParams(bias_current, effective_admittance, 0.0, kInfinite,
                         delta_r * bias_current);
}

double CircuitParams::effective_admittance() const noexcept {
    if (is_infinite(output_impedance2_)) return bias_admittance_;
    return bias_admittance_ + 1.0 / (output_impedance1_ + output_impedance2_);
}

double CircuitParams::resistance_resolution() const noexcept {
    if (is_infinite(output_impedance2_)) return voltage_resolution_ / bias_current_;
    return voltage_resolution_ * (output_impedance1_ + output_impedance2_) /
           (bias_current_ * output_impedance2_);
}

double CircuitParams::divider_ratio() const noexcept {
    if (is_infinite(output_impedance2_)) return 1.0;
    return output_impedance2_ / (output_impedance1_ + output_impedance2_);
}

DetectorElement::DetectorElement(double shunt, double normal_resistance, double inductance)
    : shunt_(shunt), normal_resistance_(normal_resistance), inductance_(inductance) {
    require(finite_positive(shunt), "shunt resistance must be finite and > 0");
    require(normal_resistance > 0.0 && !std::isnan(normal_resistance),
            "normal resistance must be > 0 (may be inf)");
    require(std::isfinite(inductance) && inductance >= 0.0,
            "inductance must be finite and >= 0");
}

ArraySpec::ArraySpec(std::vector<DetectorElement> elements) : elements_(std::move(elements)) {
    require(!elements_.empty(), "array needs at least one detector");
    require(elements_.size() <= 62, "array supports at most 62 detectors");
}

const DetectorElement& ArraySpec::element(int k) const {
    if (k < 1 || k > size()) throw std::invalid_argument("detector index out of range");
    return elements_[static_cast<std::size_t>(k - 1)];
}

SwitchingState::SwitchingState(int detector_count, std::uint64_t index)
    : detector_count_(detector_count), index_(index) {
    require(detector_count >= 1 && detector_count <= 62,
            "switching state supports 1..62 detectors");
    require(index < (std::uint64_t{1} << detector_count),
            "state index exceeds detector count");
}

SwitchingState SwitchingState::from_string(const std::string& bits) {
    require(!bits.empty() && bits.size() <= 62, "expected 1..62 bits");
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            index |= std::uint64_t{1} << i;
        } else if (bits[i] != '0') {
            throw std::invalid_argument("switching state string must be 0s and 1s");
        }
    }
    return SwitchingState(static_cast<int>(bits.size()), index);
}

bool SwitchingState::is_switched(int k) const {
    if (k < 1 || k > detector_count_) throw std::invalid_argument("detector index out of range");
    return (index_ >> (k - 1)) & 1u;
}

int SwitchingState::switched_count() const noexcept { return std::popcount(index_); }

std::vector<int> SwitchingState::switched_indices() const {
    std::vector<int> out;
    for (int k = 1; k <= detector_count_; ++k) {
        if ((index_ >> (k - 1)) & 1u) out.push_back(k);
    }
    return out;
}

std::string SwitchingState::to_string() const {
    std::string s(static_cast<std::size_t>(detector_count_), '0');
    for (int k = 1; k <= detector_count_; ++k) {
        if ((index_ >> (k - 1)) & 1u) s[static_cast<std::size_t>(k - 1)] = '1';
    }
    return s;
}

double detector_resistance(const DetectorElement& elem, bool switched) {
    if (!switched) return 0.0;
    if (is_infinite(elem.normal_resistance())) return elem.shunt();
    return elem.shunt() * elem.normal_resistance() /
           (elem.shunt() + elem.normal_resistance());
}

double series_resistance(const ArraySpec& array, const SwitchingState& state) {
    if (state.size() != array.size())
        throw std::invalid_argument("switching state length does not match array");
    double sum = 0.0;
    for (int k = 1; k <= array.size(); ++k) {
        sum += detector_resistance(array.element(k), state.is_switched(k));
    }
    return sum;
}

double total_voltage(const CircuitParams& params, double series_r) {
    if (!(series_r >= 0.0)) throw std::invalid_argument("series resistance must be >= 0");
    const double y = params.effective_admittance();
    return params.bias_current() * series_r / (1.0 + y * series_r);
}

double measured_output(const CircuitParams& params, double series_v) {
    return series_v * params.divider_ratio();
}

double output_voltage(const CircuitParams& params,
                      const ArraySpec& array,
                      const SwitchingState& state) {
    return measured_output(params, total_voltage(params, series_resistance(array, state)));
}

}  // namespace ampmux
