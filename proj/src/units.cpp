#include "ampmux/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ampmux {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t");
    auto end = s.find_last_not_of(" \t");
    if (begin == std::string::npos) return {};
    return s.substr(begin, end - begin + 1);
}

bool iequals(const std::string& a, const char* b) {
    std::string lb = b;
    if (a.size() != lb.size()) return false;
    return std::equal(a.begin(), a.end(), lb.begin(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == y;
    });
}

struct Suffix {
    const char* text;
    UnitKind kind;
    double scale;
};

// Longest-match table; the two-byte sequences are the UTF-8 ohm and micro
// signs.
constexpr Suffix kSuffixes[] = {
    {"kOhm", UnitKind::Resistance, 1e3},
    {"kohm", UnitKind::Resistance, 1e3},
    {"Ohm", UnitKind::Resistance, 1.0},
    {"ohm", UnitKind::Resistance, 1.0},
    {"k\xce\xa9", UnitKind::Resistance, 1e3},
    {"k\xe2\x84\xa6", UnitKind::Resistance, 1e3},
    {"\xce\xa9", UnitKind::Resistance, 1.0},
    {"\xe2\x84\xa6", UnitKind::Resistance, 1.0},
    {"mV", UnitKind::Voltage, 1e-3},
    {"uV", UnitKind::Voltage, 1e-6},
    {"\xc2\xb5V", UnitKind::Voltage, 1e-6},
    {"\xce\xbcV", UnitKind::Voltage, 1e-6},
    {"V", UnitKind::Voltage, 1.0},
    {"mA", UnitKind::Current, 1e-3},
    {"uA", UnitKind::Current, 1e-6},
    {"\xc2\xb5""A", UnitKind::Current, 1e-6},
    {"\xce\xbc""A", UnitKind::Current, 1e-6},
    {"A", UnitKind::Current, 1.0},
    {"S", UnitKind::Admittance, 1.0},
};

}  // namespace

double parse_quantity(const std::string& text, UnitKind kind) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty quantity");

    if (iequals(s, "inf") || iequals(s, "infinity")) {
        if (kind != UnitKind::Resistance)
            throw std::invalid_argument("'inf' is only valid for resistances");
        return std::numeric_limits<double>::infinity();
    }

    std::size_t consumed = 0;
    double value;
    try {
        value = std::stod(s, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse quantity '" + text + "'");
    }

    std::string suffix = trim(s.substr(consumed));
    if (suffix.empty()) return value;
    for (const auto& entry : kSuffixes) {
        if (suffix == entry.text) {
            if (entry.kind != kind)
                throw std::invalid_argument("unit suffix '" + suffix +
                                            "' does not match the expected quantity kind");
            return value * entry.scale;
        }
    }
    throw std::invalid_argument("unknown unit suffix '" + suffix + "'");
}

std::string format_fixed2(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

std::string format_full(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace ampmux
