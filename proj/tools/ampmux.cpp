// ampmux - design and certify shunt ladders for amplitude-multiplexed
// series arrays of switching detectors.
//
// Subcommands: design, verify, decode, table, sweep.
// Exit codes: 0 ok/pass, 1 internal error, 2 infeasible (or failed
// verification), 3 input error, 4 decode failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ampmux/io.hpp"
#include "ampmux/tables.hpp"
#include "ampmux/units.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInput = 3;
constexpr int kExitDecode = 4;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw flag values; dimensioned ones stay strings so unit suffixes parse late.
struct CommonFlags {
    std::string mode;
    int n = 0;
    int n_c = 0;
    std::string delta_r, delta_v, ib, zo1, zo2, y, yb, rn;
    std::string emit = "text";
    std::string out_path;
};

void add_param_flags(CLI::App& cmd, CommonFlags& flags) {
    cmd.add_option("--delta-r", flags.delta_r, "Resistance resolution (Ohm/kOhm)");
    cmd.add_option("--delta-v", flags.delta_v, "Voltage resolution (V/mV/uV)");
    cmd.add_option("--ib", flags.ib, "Bias current (A/mA/uA)");
    cmd.add_option("--zo1", flags.zo1, "Output impedance 1 (Ohm/kOhm)");
    cmd.add_option("--zo2", flags.zo2, "Output impedance 2 (Ohm/kOhm or inf)");
    cmd.add_option("--y", flags.y, "Effective admittance (S)");
    cmd.add_option("--yb", flags.yb, "Bias-source admittance (S)");
    cmd.add_option("--rn", flags.rn, "Normal resistance (Ohm/kOhm or inf)");
}

void add_output_flags(CLI::App& cmd, CommonFlags& flags) {
    cmd.add_option("--emit", flags.emit, "Output format: text|csv|json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd.add_option("--out", flags.out_path, "Write output to a file instead of stdout");
}

std::optional<double> parse_opt(const std::string& text, ampmux::UnitKind kind) {
    if (text.empty()) return std::nullopt;
    return ampmux::parse_quantity(text, kind);
}

void write_output(const CommonFlags& flags, const std::string& payload) {
    if (flags.out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(flags.out_path, std::ios::binary);
    if (!out) throw InputError("cannot open output file '" + flags.out_path + "'");
    out << payload;
}

/// Builds the design file the flags describe (used both to run a design and
/// to resolve verify/decode parameters given alongside a file).
ampmux::DesignFile design_file_from_flags(const CommonFlags& flags) {
    ampmux::DesignFile file;
    file.mode = flags.mode;
    file.n = flags.n;
    if (flags.n_c > 0) file.n_c = flags.n_c;
    file.delta_r_ohm = parse_opt(flags.delta_r, ampmux::UnitKind::Resistance);
    file.delta_v_volt = parse_opt(flags.delta_v, ampmux::UnitKind::Voltage);
    file.i_b_ampere = parse_opt(flags.ib, ampmux::UnitKind::Current);
    file.z_o1_ohm = parse_opt(flags.zo1, ampmux::UnitKind::Resistance);
    file.z_o2_ohm = parse_opt(flags.zo2, ampmux::UnitKind::Resistance);
    file.y_siemens = parse_opt(flags.y, ampmux::UnitKind::Admittance);
    file.y_b_siemens = parse_opt(flags.yb, ampmux::UnitKind::Admittance);
    file.r_n_ohm = flags.rn.empty()
                       ? ampmux::kInfinite
                       : ampmux::parse_quantity(flags.rn, ampmux::UnitKind::Resistance);
    // Round-tripping through the parser applies the schema checks (profile
    // exclusivity and completeness) to flag input as well.
    return ampmux::parse_design_file(ampmux::render_design_file(file));
}

ampmux::DesignFile load_design_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open design file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return ampmux::parse_design_file(text);
}

/// Applies parameter flags on top of a loaded file, enforcing consistency.
ampmux::DesignFile merge_flags(ampmux::DesignFile file, const CommonFlags& flags) {
    if (!flags.mode.empty() && flags.mode != file.mode)
        throw InputError("--mode disagrees with the design file");
    if (flags.n > 0 && flags.n != file.n)
        throw InputError("--n disagrees with the design file");
    if (flags.n_c > 0 && (!file.n_c || flags.n_c != *file.n_c))
        throw InputError("--nc disagrees with the design file");
    auto override_opt = [](std::optional<double>& slot, const std::string& text,
                           ampmux::UnitKind kind) {
        if (auto v = parse_opt(text, kind)) slot = v;
    };
    // --ib is deliberately absent here: it supplies the bias current for the
    // voltage computation (see to_circuit_params), not a file field.
    override_opt(file.delta_r_ohm, flags.delta_r, ampmux::UnitKind::Resistance);
    override_opt(file.delta_v_volt, flags.delta_v, ampmux::UnitKind::Voltage);
    override_opt(file.z_o1_ohm, flags.zo1, ampmux::UnitKind::Resistance);
    override_opt(file.z_o2_ohm, flags.zo2, ampmux::UnitKind::Resistance);
    override_opt(file.y_siemens, flags.y, ampmux::UnitKind::Admittance);
    override_opt(file.y_b_siemens, flags.yb, ampmux::UnitKind::Admittance);
    if (!flags.rn.empty())
        file.r_n_ohm = ampmux::parse_quantity(flags.rn, ampmux::UnitKind::Resistance);
    // Re-validate the merged document.
    return ampmux::parse_design_file(ampmux::render_design_file(file));
}

int run_design(const CommonFlags& flags, bool strict) {
    const ampmux::DesignFile request_file = design_file_from_flags(flags);
    const ampmux::DesignRequest request = ampmux::to_design_request(request_file);

    if (strict && request.mode.task() == ampmux::DetectionTask::PhotonNumber) {
        std::cerr << "--strict is not available for pnr: the equal-shunt counting ladder "
                     "places class levels but does not certify inter-class gaps under "
                     "loading, and no alternative construction is offered. Run 'verify' "
                     "to measure the actual margins.\n";
        return kExitInput;
    }

    const ampmux::DesignOutcome outcome = ampmux::design(request);
    if (!ampmux::is_feasible(outcome)) {
        std::cerr << "infeasible: " << ampmux::infeasibility_of(outcome).message << "\n";
        return kExitInfeasible;
    }
    const ampmux::DesignResult& result = ampmux::result_of(outcome);

    if (strict) {
        const ampmux::CircuitParams params =
            ampmux::CircuitParams::from_design_values(1.0, request.y, request.delta_r);
        const ampmux::VerificationReport report =
            ampmux::verify(result.to_array(), params, request.mode);
        if (!report.pass) {
            std::cerr << "strict check failed: min inter-class gap "
                      << ampmux::format_full(report.min_inter_class_gap)
                      << " V is below the resolution\n";
            return kExitInfeasible;
        }
    }

    ampmux::DesignFile out_file = request_file;
    out_file.shunts_ohm = result.shunts;

    // --out always receives the design-file document (the artifact verify
    // reads back); stdout carries the --emit rendering, with json meaning
    // that same document.
    const ampmux::EmitFormat format = ampmux::emit_from_name(flags.emit);
    if (!flags.out_path.empty()) {
        std::ofstream out(flags.out_path, std::ios::binary);
        if (!out) throw InputError("cannot open output file '" + flags.out_path + "'");
        out << ampmux::render_design_file(out_file);
    }
    std::cout << (format == ampmux::EmitFormat::Json
                      ? ampmux::render_design_file(out_file)
                      : ampmux::render_design_result(result, format));

    if (request.mode.task() == ampmux::DetectionTask::PhotonNumber && request.y > 0.0) {
        std::cerr << "note: counting ladders under loading place the class levels but do "
                     "not guarantee inter-class voltage gaps at high counts; run 'verify' "
                     "for the certified margins.\n";
    } else if (request.mode.task() == ampmux::DetectionTask::Coincidence &&
               request.mode.coincidence_budget() >= 2 && request.n > 1 && request.y > 0.0) {
        std::cerr << "note: loaded coincidence ladders clear each single switching against "
                     "the worst previous case, but class pairs sharing the largest element "
                     "compress below the resolution; run 'verify' for the certified "
                     "margins.\n";
    }
    return kExitOk;
}

int run_verify(const std::string& path, const CommonFlags& flags) {
    const ampmux::DesignFile file = merge_flags(load_design_file(path), flags);
    const ampmux::ArraySpec array = ampmux::to_array(file);
    const ampmux::CircuitParams params =
        ampmux::to_circuit_params(file, parse_opt(flags.ib, ampmux::UnitKind::Current));
    const ampmux::ApplicationMode mode = ampmux::mode_from_name(file.mode, file.n_c);

    const ampmux::VerificationReport report = ampmux::verify(array, params, mode);
    write_output(flags, ampmux::render_report(report, ampmux::emit_from_name(flags.emit)));
    return report.pass ? kExitOk : kExitInfeasible;
}

int run_decode(const std::string& path, const std::string& voltage_text,
               const CommonFlags& flags) {
    const ampmux::DesignFile file = merge_flags(load_design_file(path), flags);
    const ampmux::ArraySpec array = ampmux::to_array(file);
    const ampmux::CircuitParams params =
        ampmux::to_circuit_params(file, parse_opt(flags.ib, ampmux::UnitKind::Current));
    const ampmux::ApplicationMode mode = ampmux::mode_from_name(file.mode, file.n_c);
    const double v = ampmux::parse_quantity(voltage_text, ampmux::UnitKind::Voltage);

    const ampmux::DecodeOutcome outcome = ampmux::decode(array, params, mode, v);
    if (!ampmux::decoded(outcome)) {
        const auto& failure = std::get<ampmux::DecodeFailure>(outcome);
        std::cerr << (failure.kind == ampmux::DecodeErrorKind::OutOfRange ? "out of range: "
                                                                          : "ambiguous design: ")
                  << failure.message << "\n";
        return kExitDecode;
    }
    const auto& result = std::get<ampmux::DecodeResult>(outcome);
    std::ostringstream out;
    out << ampmux::describe(mode, result.label) << "\n";
    out << "margin: " << ampmux::format_full(result.margin) << " V\n";
    write_output(flags, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shunt-ladder design and exhaustive discrimination checks for "
                 "amplitude-multiplexed series detector arrays"};
    app.require_subcommand(1);

    CommonFlags design_flags;
    bool strict = false;
    auto* design_cmd = app.add_subcommand("design", "Synthesize a shunt ladder");
    design_cmd->add_option("--mode", design_flags.mode, "pnr|pixel|coincidence|full")
        ->required();
    design_cmd->add_option("--n", design_flags.n, "Detector count")->required();
    design_cmd->add_option("--nc", design_flags.n_c, "Coincidence budget");
    add_param_flags(*design_cmd, design_flags);
    add_output_flags(*design_cmd, design_flags);
    design_cmd->add_flag("--strict", strict,
                         "Fail unless the design verifies at the full resolution");

    CommonFlags verify_flags;
    std::string verify_path;
    auto* verify_cmd = app.add_subcommand("verify", "Exhaustively certify a design file");
    verify_cmd->add_option("file", verify_path, "Design file (JSON)")->required();
    verify_cmd->add_option("--mode", verify_flags.mode, "Must match the file when given");
    verify_cmd->add_option("--n", verify_flags.n, "Must match the file when given");
    verify_cmd->add_option("--nc", verify_flags.n_c, "Must match the file when given");
    add_param_flags(*verify_cmd, verify_flags);
    add_output_flags(*verify_cmd, verify_flags);

    CommonFlags decode_flags;
    std::string decode_path, decode_voltage;
    auto* decode_cmd = app.add_subcommand("decode", "Attribute a measured voltage");
    decode_cmd->add_option("file", decode_path, "Design file (JSON)")->required();
    decode_cmd->add_option("voltage", decode_voltage, "Measured output voltage (V/mV/uV)")
        ->required();
    decode_cmd->add_option("--mode", decode_flags.mode, "Must match the file when given");
    decode_cmd->add_option("--n", decode_flags.n, "Must match the file when given");
    decode_cmd->add_option("--nc", decode_flags.n_c, "Must match the file when given");
    add_param_flags(*decode_cmd, decode_flags);
    add_output_flags(*decode_cmd, decode_flags);

    CommonFlags table_flags;
    int table_number = 0;
    std::string table_scenario;
    auto* table_cmd = app.add_subcommand("table", "Regenerate a reference table");
    table_cmd->add_option("number", table_number, "1, 2 or 3")->required();
    table_cmd->add_option("--scenario", table_scenario, "A|B|C (default: all)")
        ->check(CLI::IsMember({"A", "B", "C"}));
    add_output_flags(*table_cmd, table_flags);

    CommonFlags sweep_flags;
    ampmux::SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "CSV of ladder growth against k");
    sweep_cmd->add_option("--mode", sweep.modes, "pixel|coincidence|full|pnr (repeatable)");
    sweep_cmd->add_option("--nc", sweep.n_c, "Coincidence budget (default 2)");
    sweep_cmd->add_option("--k-min", sweep.k_min, "First element (default 1)");
    sweep_cmd->add_option("--k-max", sweep.k_max, "Last element (default 24)");
    sweep_cmd->add_option("--delta-r", sweep_flags.delta_r, "Resistance resolution");
    sweep_cmd->add_option("--y", sweep_flags.y, "Non-ideal admittance (default 0.02 S)");
    sweep_cmd->add_option("--rn", sweep_flags.rn, "Non-ideal normal resistance (default 1 kOhm)");
    add_output_flags(*sweep_cmd, sweep_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (design_cmd->parsed()) return run_design(design_flags, strict);
        if (verify_cmd->parsed()) return run_verify(verify_path, verify_flags);
        if (decode_cmd->parsed()) return run_decode(decode_path, decode_voltage, decode_flags);
        if (table_cmd->parsed()) {
            std::optional<std::string> scenario;
            if (!table_scenario.empty()) scenario = table_scenario;
            write_output(table_flags,
                         ampmux::render_reference_table(
                             table_number, scenario, ampmux::emit_from_name(table_flags.emit)));
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            if (!sweep_flags.delta_r.empty())
                sweep.delta_r =
                    ampmux::parse_quantity(sweep_flags.delta_r, ampmux::UnitKind::Resistance);
            if (!sweep_flags.y.empty())
                sweep.y = ampmux::parse_quantity(sweep_flags.y, ampmux::UnitKind::Admittance);
            if (!sweep_flags.rn.empty())
                sweep.r_n = ampmux::parse_quantity(sweep_flags.rn, ampmux::UnitKind::Resistance);
            write_output(sweep_flags, ampmux::render_growth_sweep(sweep));
            return kExitOk;
        }
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ampmux::DesignFileError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
