#pragma once

// Design-file schema and report/result rendering for the CLI.
//
// A design file is a JSON document with a fixed key set. Circuit inputs come
// in exactly one of two profiles:
//   design profile:    delta_r_ohm + y_siemens
//   physical profile:  delta_v_volt + i_b_ampere + z_o1_ohm + z_o2_ohm +
//                      y_b_siemens
// plus mode, n, n_c (coincidence only), r_n_ohm (number or "inf") and the
// designed shunts_ohm. Unknown keys are rejected; parse(render(x)) == x.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ampmux/circuit.hpp"
#include "ampmux/designer.hpp"
#include "ampmux/verifier.hpp"

namespace ampmux {

class DesignFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DesignFile {
    std::string mode;  // "pnr" | "pixel" | "coincidence" | "full"
    int n = 0;
    std::optional<int> n_c;
    std::optional<double> delta_r_ohm;
    std::optional<double> delta_v_volt;
    std::optional<double> i_b_ampere;
    std::optional<double> z_o1_ohm;
    std::optional<double> z_o2_ohm;  // may be infinite
    std::optional<double> y_siemens;
    std::optional<double> y_b_siemens;
    double r_n_ohm = kInfinite;  // may be infinite
    std::optional<std::vector<double>> shunts_ohm;

    [[nodiscard]] bool operator==(const DesignFile&) const = default;
};

/// Parses and validates a design-file document. Throws DesignFileError on
/// malformed JSON, unknown keys, missing keys, or an inconsistent profile.
[[nodiscard]] DesignFile parse_design_file(const std::string& text);

/// Serializes a design file; infinite values render as the "inf" token and
/// numbers round-trip exactly.
[[nodiscard]] std::string render_design_file(const DesignFile& file);

[[nodiscard]] ApplicationMode mode_from_name(const std::string& name, std::optional<int> n_c);

/// The design request a file describes (deriving delta_r and y from the
/// physical profile when that is the one present).
[[nodiscard]] DesignRequest to_design_request(const DesignFile& file);

/// Circuit parameters for verification/decoding. Files with the physical
/// profile carry everything; design-profile files additionally need the bias
/// current. Throws DesignFileError when underdetermined.
[[nodiscard]] CircuitParams to_circuit_params(const DesignFile& file,
                                              std::optional<double> bias_current);

/// The shunt list as an array (requires shunts_ohm).
[[nodiscard]] ArraySpec to_array(const DesignFile& file);

enum class EmitFormat { Text, Csv, Json };

[[nodiscard]] EmitFormat emit_from_name(const std::string& name);

[[nodiscard]] std::string render_design_result(const DesignResult& result, EmitFormat format);
[[nodiscard]] std::string render_report(const VerificationReport& report, EmitFormat format);

}  // namespace ampmux
