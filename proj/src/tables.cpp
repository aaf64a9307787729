#include "ampmux/tables.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ampmux/units.hpp"
#include "json.hpp"

namespace ampmux {

namespace {

struct Condition {
    const char* name;
    double y;
    double r_n;
};

constexpr Condition kConditions[] = {
    {"A", 0.0, kInfinite},
    {"B", 1.0 / 50.0, kInfinite},
    {"C", 1.0 / 50.0, 1000.0},
};

constexpr double kTableDeltaR = 2.0;

std::vector<Condition> selected_conditions(const std::optional<std::string>& scenario) {
    if (!scenario) return {kConditions[0], kConditions[1], kConditions[2]};
    for (const auto& c : kConditions) {
        if (*scenario == c.name) return {c};
    }
    throw std::invalid_argument("unknown scenario '" + *scenario + "' (expected A|B|C)");
}

/// Pixel ladder element k, or nullopt when infeasible. Row k = 0 is the
/// no-detection class and is identically zero.
std::optional<double> pixel_cell(int k, const Condition& c) {
    if (k == 0) return 0.0;
    DesignRequest req;
    req.mode = ApplicationMode::pixel_array();
    req.detector_count = k;
    req.delta_r = kTableDeltaR;
    req.y = c.y;
    req.normal_resistance = c.r_n;
    const DesignOutcome outcome = design_pixel(req);
    if (!is_feasible(outcome)) return std::nullopt;
    return result_of(outcome).shunts.back();
}

/// Two-coincidence ladder, table row `row` = element row+1. The budget is
/// clamped at the element count; the leading elements do not depend on it.
std::optional<double> coincidence_cell(int row, const Condition& c) {
    DesignRequest req;
    req.mode = ApplicationMode::coincidence(std::min(2, row + 1));
    req.detector_count = row + 1;
    req.delta_r = kTableDeltaR;
    req.y = c.y;
    req.normal_resistance = c.r_n;
    const DesignOutcome outcome = design_coincidence(req);
    if (!is_feasible(outcome)) return std::nullopt;
    return result_of(outcome).shunts.back();
}

struct NumericTable {
    std::vector<std::string> columns;                          // without the k column
    std::vector<int> rows;                                     // k values
    std::vector<std::vector<std::optional<double>>> cells;     // [row][column]
};

NumericTable build_numeric_table(int which, const std::vector<Condition>& conditions) {
    NumericTable table;
    for (const auto& c : conditions) table.columns.push_back(c.name);
    const int last_row = which == 1 ? 24 : 10;
    for (int k = 0; k <= last_row; ++k) {
        table.rows.push_back(k);
        std::vector<std::optional<double>> row;
        for (const auto& c : conditions)
            row.push_back(which == 1 ? pixel_cell(k, c) : coincidence_cell(k, c));
        table.cells.push_back(std::move(row));
    }
    return table;
}

std::string render_numeric_table(const NumericTable& table, EmitFormat format) {
    switch (format) {
        case EmitFormat::Csv: {
            std::ostringstream out;
            out << "k";
            for (const auto& col : table.columns) out << ',' << col;
            out << '\n';
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                out << table.rows[i];
                for (const auto& cell : table.cells[i]) {
                    out << ',';
                    if (cell) out << format_full(*cell);
                }
                out << '\n';
            }
            return out.str();
        }
        case EmitFormat::Json: {
            nlohmann::ordered_json doc;
            doc["columns"] = table.columns;
            doc["rows"] = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                nlohmann::ordered_json row;
                row["k"] = table.rows[i];
                for (std::size_t j = 0; j < table.columns.size(); ++j) {
                    const auto& cell = table.cells[i][j];
                    if (cell)
                        row[table.columns[j]] = *cell;
                    else
                        row[table.columns[j]] = nullptr;
                }
                doc["rows"].push_back(row);
            }
            return doc.dump(2) + "\n";
        }
        case EmitFormat::Text:
            break;
    }
    std::ostringstream out;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%3s", "k");
    out << buf;
    for (const auto& col : table.columns) {
        std::snprintf(buf, sizeof(buf), "  %9s", col.c_str());
        out << buf;
    }
    out << '\n';
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%3d", table.rows[i]);
        out << buf;
        for (const auto& cell : table.cells[i]) {
            const std::string text = cell ? format_fixed2(*cell) : "-";
            std::snprintf(buf, sizeof(buf), "  %9s", text.c_str());
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::string render_summary_table(EmitFormat format) {
    struct Row {
        const char* application;
        const char* ideal;
        const char* non_ideal;
    };
    // The loaded coincidence ladder has no one-line closed form; the
    // recurrence on the parallel values is stated instead. Full-state
    // identification has no loaded construction at all.
    const Row rows[] = {
        {"counting (pnr)", "r_k = dR", "r_k = dR/(1 - n/m_L - dR/R_N)"},
        {"pixel array", "r_k = k dR", "r_k = k dR/(1 - k/m_L - k dR/R_N)"},
        {"coincidence (up to n_c)", "r_{k+1} = r_k + ... + r_{k-n_c+1} + dR",
         "r_p{k+1} = R + dR (1+YR)^2/(1 - Y dR - Y^2 dR R), R = r_p{k} + ... + r_p{k-n_c+1}"},
        {"full identification", "r_k = 2^(k-1) dR", "-"},
    };
    switch (format) {
        case EmitFormat::Csv: {
            std::ostringstream out;
            out << "application,ideal,non_ideal\n";
            for (const auto& row : rows) {
                out << '"' << row.application << "\",\"" << row.ideal << "\",\""
                    << row.non_ideal << "\"\n";
            }
            return out.str();
        }
        case EmitFormat::Json: {
            nlohmann::ordered_json doc = nlohmann::ordered_json::array();
            for (const auto& row : rows) {
                nlohmann::ordered_json r;
                r["application"] = row.application;
                r["ideal"] = row.ideal;
                r["non_ideal"] = row.non_ideal;
                doc.push_back(r);
            }
            return doc.dump(2) + "\n";
        }
        case EmitFormat::Text:
            break;
    }
    std::ostringstream out;
    char line[192];
    std::snprintf(line, sizeof(line), "%-24s  %-40s  %s\n", "application", "ideal",
                  "non-ideal");
    out << line;
    for (const auto& row : rows) {
        std::snprintf(line, sizeof(line), "%-24s  %-40s  %s\n", row.application, row.ideal,
                      row.non_ideal);
        out << line;
    }
    return out.str();
}

std::optional<double> sweep_cell(const std::string& mode, int k, int n_c, double delta_r,
                                 double y, double r_n) {
    DesignRequest req;
    req.detector_count = k;
    req.delta_r = delta_r;
    req.y = y;
    req.normal_resistance = r_n;
    if (mode == "pixel") req.mode = ApplicationMode::pixel_array();
    else if (mode == "coincidence") req.mode = ApplicationMode::coincidence(std::min(n_c, k));
    else if (mode == "full") req.mode = ApplicationMode::full();
    else if (mode == "pnr") req.mode = ApplicationMode::photon_number();
    else throw std::invalid_argument("unknown sweep mode '" + mode + "'");
    const DesignOutcome outcome = design(req);
    if (!is_feasible(outcome)) return std::nullopt;
    return result_of(outcome).shunts.back();
}

}  // namespace

std::string render_reference_table(int which, const std::optional<std::string>& scenario,
                                   EmitFormat format) {
    if (which == 3) return render_summary_table(format);
    if (which != 1 && which != 2)
        throw std::invalid_argument("table number must be 1, 2 or 3");
    return render_numeric_table(build_numeric_table(which, selected_conditions(scenario)),
                                format);
}

std::string render_growth_sweep(const SweepOptions& options) {
    if (options.k_min < 1 || options.k_max < options.k_min)
        throw std::invalid_argument("sweep range must satisfy 1 <= k_min <= k_max");
    std::ostringstream out;
    out << "k";
    for (const auto& mode : options.modes) {
        const std::string tag =
            mode == "coincidence" ? "coincidence" + std::to_string(options.n_c) : mode;
        out << ',' << tag << "_ideal";
        if (mode != "full") out << ',' << tag << "_nonideal";
    }
    out << '\n';
    for (int k = options.k_min; k <= options.k_max; ++k) {
        out << k;
        for (const auto& mode : options.modes) {
            const auto ideal = sweep_cell(mode, k, options.n_c, options.delta_r, 0.0, kInfinite);
            out << ',';
            if (ideal) out << format_full(*ideal);
            if (mode != "full") {
                const auto loaded =
                    sweep_cell(mode, k, options.n_c, options.delta_r, options.y, options.r_n);
                out << ',';
                if (loaded) out << format_full(*loaded);
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ampmux
