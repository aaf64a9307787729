#pragma once

// Parsing of dimensioned CLI/file values. Accepted suffixes: Ohm/kOhm (also
// the ohm sign and its k-prefixed form), V/mV/uV (also the micro sign),
// A/mA/uA, S. Bare numbers are base SI units; "inf" denotes an infinite
// resistance or impedance where the model allows one.

#include <string>

namespace ampmux {

enum class UnitKind { Resistance, Voltage, Current, Admittance };

/// Parses a number with an optional unit suffix, normalizing to base SI
/// units. Throws std::invalid_argument on malformed input or on a suffix of
/// the wrong kind. "inf" is accepted for Resistance only.
[[nodiscard]] double parse_quantity(const std::string& text, UnitKind kind);

/// Fixed two-decimal rendering used by table output.
[[nodiscard]] std::string format_fixed2(double value);

/// Shortest-faithful rendering for CSV payloads (17 significant digits,
/// round-trips exactly).
[[nodiscard]] std::string format_full(double value);

}  // namespace ampmux
