#include "ampmux/io.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "ampmux/units.hpp"
#include "json.hpp"

namespace ampmux {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string> kKnownKeys = {
    "mode",      "n",          "n_c",       "delta_r_ohm", "delta_v_volt", "i_b_ampere",
    "z_o1_ohm",  "z_o2_ohm",   "y_siemens", "y_b_siemens", "r_n_ohm",      "shunts_ohm",
};

[[noreturn]] void fail(const std::string& what) { throw DesignFileError(what); }

double number_or_inf(const ordered_json& v, const std::string& key, bool inf_allowed) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (inf_allowed && (s == "inf" || s == "Inf" || s == "INF"))
            return kInfinite;
        fail("key '" + key + "' must be a number" + (inf_allowed ? " or \"inf\"" : ""));
    }
    if (!v.is_number()) fail("key '" + key + "' must be a number");
    return v.get<double>();
}

ordered_json render_number(double x) {
    if (is_infinite(x)) return "inf";
    return x;
}

std::string gaps6f(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string volts(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

DesignFile parse_design_file(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        fail(std::string("design file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("design file must be a JSON object");

    for (const auto& item : doc.items()) {
        if (!kKnownKeys.count(item.key())) fail("unknown key '" + item.key() + "'");
    }

    DesignFile file;
    if (!doc.contains("mode") || !doc["mode"].is_string()) fail("key 'mode' (string) is required");
    file.mode = doc["mode"].get<std::string>();
    if (file.mode != "pnr" && file.mode != "pixel" && file.mode != "coincidence" &&
        file.mode != "full")
        fail("mode must be one of pnr|pixel|coincidence|full");

    if (!doc.contains("n") || !doc["n"].is_number_integer())
        fail("key 'n' (integer) is required");
    file.n = doc["n"].get<int>();
    if (file.n < 1) fail("n must be >= 1");

    if (doc.contains("n_c")) {
        if (!doc["n_c"].is_number_integer()) fail("key 'n_c' must be an integer");
        file.n_c = doc["n_c"].get<int>();
    }
    if (file.mode == "coincidence") {
        if (!file.n_c) fail("coincidence mode requires 'n_c'");
        if (*file.n_c < 1 || *file.n_c > file.n) fail("n_c must satisfy 1 <= n_c <= n");
    } else if (file.n_c) {
        fail("'n_c' is only valid for coincidence mode");
    }

    auto read_opt = [&](const char* key, bool inf_allowed) -> std::optional<double> {
        if (!doc.contains(key)) return std::nullopt;
        return number_or_inf(doc[key], key, inf_allowed);
    };
    file.delta_r_ohm = read_opt("delta_r_ohm", false);
    file.delta_v_volt = read_opt("delta_v_volt", false);
    file.i_b_ampere = read_opt("i_b_ampere", false);
    file.z_o1_ohm = read_opt("z_o1_ohm", false);
    file.z_o2_ohm = read_opt("z_o2_ohm", true);
    file.y_siemens = read_opt("y_siemens", false);
    file.y_b_siemens = read_opt("y_b_siemens", false);

    if (!doc.contains("r_n_ohm")) fail("key 'r_n_ohm' (number or \"inf\") is required");
    file.r_n_ohm = number_or_inf(doc["r_n_ohm"], "r_n_ohm", true);
    if (!(file.r_n_ohm > 0.0)) fail("r_n_ohm must be > 0");

    const bool has_design = file.delta_r_ohm || file.y_siemens;
    const bool has_physical = file.delta_v_volt || file.i_b_ampere || file.z_o1_ohm ||
                              file.z_o2_ohm || file.y_b_siemens;
    if (has_design && has_physical)
        fail("give either the design profile (delta_r_ohm, y_siemens) or the physical "
             "profile (delta_v_volt, i_b_ampere, z_o1_ohm, z_o2_ohm, y_b_siemens), not both");
    if (has_design && !(file.delta_r_ohm && file.y_siemens))
        fail("design profile requires both delta_r_ohm and y_siemens");
    if (has_physical && !(file.delta_v_volt && file.i_b_ampere && file.z_o1_ohm &&
                          file.z_o2_ohm && file.y_b_siemens))
        fail("physical profile requires delta_v_volt, i_b_ampere, z_o1_ohm, z_o2_ohm "
             "and y_b_siemens");
    if (!has_design && !has_physical)
        fail("circuit inputs are missing: supply the design or the physical profile");

    if (doc.contains("shunts_ohm")) {
        if (!doc["shunts_ohm"].is_array()) fail("key 'shunts_ohm' must be an array");
        std::vector<double> shunts;
        for (const auto& v : doc["shunts_ohm"]) {
            if (!v.is_number()) fail("shunts_ohm entries must be numbers");
            shunts.push_back(v.get<double>());
            if (!(shunts.back() > 0.0) || is_infinite(shunts.back()))
                fail("shunts_ohm entries must be finite and > 0");
        }
        if (static_cast<int>(shunts.size()) != file.n)
            fail("shunts_ohm length must equal n");
        file.shunts_ohm = std::move(shunts);
    }
    return file;
}

std::string render_design_file(const DesignFile& file) {
    ordered_json doc;
    doc["mode"] = file.mode;
    doc["n"] = file.n;
    if (file.n_c) doc["n_c"] = *file.n_c;
    if (file.delta_r_ohm) doc["delta_r_ohm"] = render_number(*file.delta_r_ohm);
    if (file.delta_v_volt) doc["delta_v_volt"] = render_number(*file.delta_v_volt);
    if (file.i_b_ampere) doc["i_b_ampere"] = render_number(*file.i_b_ampere);
    if (file.z_o1_ohm) doc["z_o1_ohm"] = render_number(*file.z_o1_ohm);
    if (file.z_o2_ohm) doc["z_o2_ohm"] = render_number(*file.z_o2_ohm);
    if (file.y_siemens) doc["y_siemens"] = render_number(*file.y_siemens);
    if (file.y_b_siemens) doc["y_b_siemens"] = render_number(*file.y_b_siemens);
    doc["r_n_ohm"] = render_number(file.r_n_ohm);
    if (file.shunts_ohm) doc["shunts_ohm"] = *file.shunts_ohm;
    return doc.dump(2) + "\n";
}

ApplicationMode mode_from_name(const std::string& name, std::optional<int> n_c) {
    if (name == "pnr") return ApplicationMode::photon_number();
    if (name == "pixel") return ApplicationMode::pixel_array();
    if (name == "full") return ApplicationMode::full();
    if (name == "coincidence") {
        if (!n_c) throw DesignFileError("coincidence mode requires n_c");
        return ApplicationMode::coincidence(*n_c);
    }
    throw DesignFileError("unknown mode '" + name + "' (expected pnr|pixel|coincidence|full)");
}

DesignRequest to_design_request(const DesignFile& file) {
    DesignRequest req;
    req.mode = mode_from_name(file.mode, file.n_c);
    req.detector_count = file.n;
    req.normal_resistance = file.r_n_ohm;
    if (file.delta_r_ohm) {
        req.delta_r = *file.delta_r_ohm;
        req.y = *file.y_siemens;
    } else {
        const CircuitParams params = to_circuit_params(file, std::nullopt);
        req.delta_r = params.resistance_resolution();
        req.y = params.effective_admittance();
    }
    return req;
}

CircuitParams to_circuit_params(const DesignFile& file, std::optional<double> bias_current) {
    if (file.delta_v_volt) {
        return CircuitParams(bias_current.value_or(*file.i_b_ampere), *file.y_b_siemens,
                             *file.z_o1_ohm, *file.z_o2_ohm, *file.delta_v_volt);
    }
    if (!bias_current)
        throw DesignFileError("file carries design-level inputs only; a bias current is "
                              "needed to work in volts (pass --ib)");
    return CircuitParams::from_design_values(*bias_current, *file.y_siemens,
                                             *file.delta_r_ohm);
}

ArraySpec to_array(const DesignFile& file) {
    if (!file.shunts_ohm) throw DesignFileError("design file carries no shunts_ohm list");
    std::vector<DetectorElement> elems;
    elems.reserve(file.shunts_ohm->size());
    for (double r : *file.shunts_ohm) elems.emplace_back(r, file.r_n_ohm);
    return ArraySpec(std::move(elems));
}

EmitFormat emit_from_name(const std::string& name) {
    if (name == "text") return EmitFormat::Text;
    if (name == "csv") return EmitFormat::Csv;
    if (name == "json") return EmitFormat::Json;
    throw DesignFileError("unknown emit format '" + name + "' (expected text|csv|json)");
}

std::string render_design_result(const DesignResult& result, EmitFormat format) {
    switch (format) {
        case EmitFormat::Csv: {
            std::ostringstream out;
            out << "k,shunt_ohm,parallel_ohm,level_ohm\n";
            for (std::size_t i = 0; i < result.shunts.size(); ++i) {
                out << (i + 1) << ',' << format_full(result.shunts[i]) << ','
                    << format_full(result.parallels[i]) << ','
                    << format_full(result.levels[i + 1]) << '\n';
            }
            return out.str();
        }
        case EmitFormat::Json: {
            ordered_json doc;
            doc["mode"] = result.mode.name();
            doc["n"] = result.shunts.size();
            doc["delta_r_ohm"] = result.delta_r;
            doc["y_siemens"] = result.y;
            doc["r_n_ohm"] = render_number(result.normal_resistance);
            doc["feasible_limit"] = render_number(result.feasible_limit);
            doc["shunts_ohm"] = result.shunts;
            doc["parallels_ohm"] = result.parallels;
            doc["levels_ohm"] = result.levels;
            return doc.dump(2) + "\n";
        }
        case EmitFormat::Text:
            break;
    }
    std::ostringstream out;
    out << "mode: " << result.mode.name() << "\n";
    out << "detectors: " << result.shunts.size() << "\n";
    out << "delta_r: " << format_full(result.delta_r) << " Ohm\n";
    out << "y: " << format_full(result.y) << " S\n";
    out << "r_n: " << format_full(result.normal_resistance) << " Ohm\n";
    out << "class limit m_L: " << format_full(result.feasible_limit) << "\n";
    out << "  k   shunt (Ohm)   parallel (Ohm)\n";
    for (std::size_t i = 0; i < result.shunts.size(); ++i) {
        char line[96];
        std::snprintf(line, sizeof(line), "%3zu  %12.2f  %14.2f\n", i + 1,
                      result.shunts[i], result.parallels[i]);
        out << line;
    }
    return out.str();
}

std::string render_report(const VerificationReport& report, EmitFormat format) {
    switch (format) {
        case EmitFormat::Csv: {
            std::ostringstream out;
            out << "label,v_min,v_max,states\n";
            for (const auto& band : report.bands) {
                out << band.label.to_string() << ',' << format_full(band.v_min) << ','
                    << format_full(band.v_max) << ',' << band.state_count << '\n';
            }
            return out.str();
        }
        case EmitFormat::Json: {
            ordered_json doc;
            doc["mode"] = report.mode.name();
            doc["n"] = report.detector_count;
            doc["delta_v_volt"] = report.delta_v;
            doc["states_enumerated"] = report.states_enumerated;
            doc["classes"] = report.bands.size();
            doc["min_inter_class_gap_volt"] = render_number(report.min_inter_class_gap);
            doc["worst_pair"] = {report.worst_pair.first.to_string(),
                                 report.worst_pair.second.to_string()};
            doc["max_intra_class_spread_volt"] = report.max_intra_class_spread;
            doc["pass"] = report.pass;
            doc["bands"] = ordered_json::array();
            for (const auto& band : report.bands) {
                ordered_json b;
                b["label"] = band.label.to_string();
                b["v_min"] = band.v_min;
                b["v_max"] = band.v_max;
                b["states"] = band.state_count;
                doc["bands"].push_back(b);
            }
            return doc.dump(2) + "\n";
        }
        case EmitFormat::Text:
            break;
    }
    std::ostringstream out;
    out << "mode: " << report.mode.name() << "\n";
    out << "detectors: " << report.detector_count << "\n";
    out << "classes: " << report.bands.size() << "\n";
    out << "states enumerated: " << report.states_enumerated << "\n";
    out << "delta_v: " << volts(report.delta_v) << " V\n";
    out << "min inter-class gap: " << gaps6f(report.min_inter_class_gap) << " V  (worst pair: "
        << report.worst_pair.first.to_string() << " vs "
        << report.worst_pair.second.to_string() << ")\n";
    out << "max intra-class spread: " << gaps6f(report.max_intra_class_spread) << " V\n";
    out << "result: " << (report.pass ? "PASS" : "FAIL") << "\n";
    if (report.bands.size() <= 64) {
        out << "bands:\n";
        for (const auto& band : report.bands) {
            out << "  " << band.label.to_string() << "  " << volts(band.v_min) << " .. "
                << volts(band.v_max) << " V  (" << band.state_count
                << (band.state_count == 1 ? " state)" : " states)") << "\n";
        }
    } else {
        out << "bands: " << report.bands.size() << " (omitted)\n";
    }
    return out.str();
}

}  // namespace ampmux
