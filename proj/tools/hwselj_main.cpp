// Command-line front end: loads a run configuration, dispatches one verb,
// and emits deterministic text/CSV (shortest round-trip float formatting).

#include <cmath>
#include <cstddef>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "hwselj/hwselj.hpp"

namespace {

using hwselj::format_double;
using hwselj::RunConfig;

struct GlobalOpts {
    std::vector<std::string> config_paths;
    bool paper_fixtures = false;
    std::string out_path;
    std::string format;
};

RunConfig assemble_config(const GlobalOpts& g) {
    RunConfig cfg = g.paper_fixtures ? hwselj::paper_fixtures_config() : RunConfig{};
    for (const auto& path : g.config_paths)
        cfg = hwselj::load_run_config(path, std::move(cfg));
    if (!g.out_path.empty()) cfg.output_path = g.out_path;
    if (!g.format.empty()) cfg.output_format = g.format;
    return cfg;
}

/// Stdout by default, a file when an output path is configured.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

bool use_csv(const RunConfig& cfg, bool default_csv) {
    if (cfg.output_format.empty()) return default_csv;
    return cfg.output_format == "csv";
}

void emit_kv(std::ostream& out, const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
}

int cmd_helix_info(const RunConfig& cfg) {
    const hwselj::HelixGeometry& h = cfg.geometry();
    const hwselj::DielectricStack& st = cfg.dielectric();
    const bool admissible = h.pitch > st.electrode_width;

    OutputTarget target(cfg.output_path);
    std::ostream& out = target.stream();
    if (use_csv(cfg, false)) {
        hwselj::write_csv_row(out, {"radius", "pitch", "total_angle",
                                    "helix_constant", "arc_length", "curvature",
                                    "torsion", "pitch_admissible"});
        hwselj::write_csv_row(
            out, {format_double(h.radius), format_double(h.pitch),
                  format_double(h.total_angle), format_double(h.helix_constant()),
                  format_double(h.arc_length()), format_double(h.curvature()),
                  format_double(h.torsion()), admissible ? "true" : "false"});
    } else {
        emit_kv(out, "radius", format_double(h.radius));
        emit_kv(out, "pitch", format_double(h.pitch));
        emit_kv(out, "total_angle", format_double(h.total_angle));
        emit_kv(out, "helix_constant", format_double(h.helix_constant()));
        emit_kv(out, "arc_length", format_double(h.arc_length()));
        emit_kv(out, "curvature", format_double(h.curvature()));
        emit_kv(out, "torsion", format_double(h.torsion()));
        emit_kv(out, "pitch_admissible", admissible ? "true" : "false");
        if (!admissible)
            out << "warning = pitch <= electrode width; adjacent turns overlap\n";
    }
    return 0;
}

int cmd_tension_eval(const RunConfig& cfg) {
    const hwselj::MechanismSpec m = cfg.mechanism();
    const hwselj::DriveState d = cfg.drive_state();
    const hwselj::TensionSolution sol = hwselj::terminal_tension(m, d);

    OutputTarget target(cfg.output_path);
    std::ostream& out = target.stream();
    if (use_csv(cfg, false)) {
        hwselj::write_csv_row(out, {"voltage", "preload", "terminal_tension",
                                    "amplification", "capstan_gain",
                                    "electro_term"});
        hwselj::write_csv_row(
            out, {format_double(d.voltage), format_double(d.preload),
                  format_double(sol.terminal_tension),
                  format_double(sol.amplification),
                  format_double(sol.capstan_gain), format_double(sol.electro_term)});
    } else {
        emit_kv(out, "voltage", format_double(d.voltage));
        emit_kv(out, "preload", format_double(d.preload));
        emit_kv(out, "terminal_tension", format_double(sol.terminal_tension));
        emit_kv(out, "amplification", format_double(sol.amplification));
        emit_kv(out, "capstan_gain", format_double(sol.capstan_gain));
        emit_kv(out, "electro_term", format_double(sol.electro_term));
    }
    return 0;
}

int cmd_tension_sweep(const RunConfig& cfg) {
    const hwselj::MechanismSpec m = cfg.mechanism();
    if (cfg.voltages.empty())
        throw hwselj::ConfigError("sweep.voltages", "required for tension sweep");
    const double preload = cfg.drive ? cfg.drive->preload : 0.0;
    const std::vector<double> angles =
        cfg.angles.empty() ? std::vector<double>{m.helix.total_angle} : cfg.angles;

    OutputTarget target(cfg.output_path);
    std::ostream& out = target.stream();
    hwselj::write_csv_row(out, {"V", "T0", "phi", "T", "amplification"});
    bool any_error = false;
    for (double v : cfg.voltages) {
        for (double phi : angles) {
            hwselj::MechanismSpec row_m = m;
            row_m.helix.total_angle = phi;
            try {
                const auto sol =
                    hwselj::terminal_tension(row_m, {v, preload});
                hwselj::write_csv_row(
                    out, {format_double(v), format_double(preload),
                          format_double(phi), format_double(sol.terminal_tension),
                          format_double(sol.amplification)});
            } catch (const std::exception& e) {
                std::cerr << "error: sweep row V=" << format_double(v)
                          << " phi=" << format_double(phi) << ": " << e.what()
                          << '\n';
                any_error = true;
            }
        }
    }
    return any_error ? 1 : 0;
}

int cmd_compare_planar(const RunConfig& cfg) {
    const hwselj::MechanismSpec m = cfg.mechanism();
    const hwselj::DriveState d = cfg.drive_state();
    const hwselj::TensionSolution sol = hwselj::terminal_tension(m, d);
    const double contact = m.helix.arc_length();
    const double planar = hwselj::planar_tension(m.stack, contact, d);
    const double ratio = sol.terminal_tension / planar;

    // Strip length a planar stack would need to reach the helical tension:
    // T0 + mu q_e L = T_helical. Without a friction gain (mu q_e = 0) the
    // planar model is stuck at T0, so any stronger target is unreachable.
    const double gain_rate = m.stack.friction_mu * m.stack.line_load(d.voltage);
    double match_length = 0.0;
    if (gain_rate > 0.0)
        match_length = (sol.terminal_tension - d.preload) / gain_rate;
    else if (sol.terminal_tension > d.preload)
        match_length = std::numeric_limits<double>::infinity();

    OutputTarget target(cfg.output_path);
    std::ostream& out = target.stream();
    if (use_csv(cfg, false)) {
        hwselj::write_csv_row(out, {"helical_tension", "planar_tension",
                                    "contact_length", "ratio",
                                    "planar_match_length"});
        hwselj::write_csv_row(out, {format_double(sol.terminal_tension),
                                    format_double(planar), format_double(contact),
                                    format_double(ratio),
                                    format_double(match_length)});
    } else {
        emit_kv(out, "helical_tension", format_double(sol.terminal_tension));
        emit_kv(out, "planar_tension", format_double(planar));
        emit_kv(out, "contact_length", format_double(contact));
        emit_kv(out, "ratio", format_double(ratio));
        if (std::isinf(match_length))
            emit_kv(out, "planar_match_length",
                    "unreachable (no friction gain and target above preload)");
        else
            emit_kv(out, "planar_match_length", format_double(match_length));
    }
    return 0;
}

int cmd_process(const RunConfig& cfg, const std::vector<std::string>& logs,
                const std::string& voltages_arg, double outlier_sigma) {
    const hwselj::RigConfig rig = cfg.rig_config();
    std::vector<double> voltages = cfg.voltages;
    if (!voltages_arg.empty())
        voltages = hwselj::detail::parse_list(
            voltages_arg, hwselj::detail::Dimension::kVoltage, "--voltages");
    if (voltages.size() != logs.size())
        throw std::runtime_error(
            "need one voltage per log: " + std::to_string(logs.size()) +
            " logs, " + std::to_string(voltages.size()) + " voltages");

    OutputTarget target(cfg.output_path);
    std::ostream& out = target.stream();
    hwselj::write_csv_row(out, {"voltage", "F_f_mean", "F_f_std", "n_samples"});
    bool any_error = false;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        try {
            const auto samples = hwselj::load_sensor_log(logs[i]);
            const auto kept = hwselj::remove_outliers(samples, outlier_sigma);
            const hwselj::Wrench mean = hwselj::steady_state_mean(kept);
            const double f_mean = hwselj::friction_from_wrench(mean, rig);

            double ss = 0.0, per_sample_mean = 0.0;
            std::vector<double> frictions;
            frictions.reserve(kept.size());
            for (const auto& s : kept)
                frictions.push_back(hwselj::friction_from_wrench(s.wrench, rig));
            for (double f : frictions) per_sample_mean += f;
            per_sample_mean /= static_cast<double>(frictions.size());
            for (double f : frictions) {
                const double dev = f - per_sample_mean;
                ss += dev * dev;
            }
            const double f_std =
                frictions.size() > 1
                    ? std::sqrt(ss / static_cast<double>(frictions.size() - 1))
                    : 0.0;

            hwselj::write_csv_row(out, {format_double(voltages[i]),
                                        format_double(f_mean), format_double(f_std),
                                        std::to_string(kept.size())});
        } catch (const std::exception& e) {
            std::cerr << "error: " << logs[i] << ": " << e.what() << '\n';
            any_error = true;
        }
    }
    return any_error ? 1 : 0;
}

/// Reads a measurement CSV with a `voltage` column and a force column named
/// F, F_f_mean, or force (so `process` output feeds straight in). Extra
/// columns are ignored.
std::vector<std::pair<double, double>> load_fit_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fit input: " + path);

    std::string line;
    if (!std::getline(in, line))
        throw hwselj::ParseError(1, "empty file: expected a CSV header");
    const auto header = hwselj::detail::split_csv(hwselj::detail::strip_cr(line));
    std::optional<std::size_t> v_col, f_col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "voltage") v_col = i;
        if (!f_col && (header[i] == "F" || header[i] == "F_f_mean" ||
                       header[i] == "force"))
            f_col = i;
    }
    if (!v_col || !f_col)
        throw hwselj::ParseError(
            1, "need a voltage column and one of F, F_f_mean, force; got '" +
                   hwselj::detail::strip_cr(line) + "'");

    std::vector<std::pair<double, double>> points;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = hwselj::detail::strip_cr(line);
        if (row.empty()) continue;
        const auto cells = hwselj::detail::split_csv(row);
        if (cells.size() != header.size())
            throw hwselj::ParseError(line_no, "expected " +
                                                  std::to_string(header.size()) +
                                                  " columns, got " +
                                                  std::to_string(cells.size()));
        points.emplace_back(
            hwselj::detail::parse_field(cells[*v_col], line_no, "voltage"),
            hwselj::detail::parse_field(cells[*f_col], line_no, "force"));
    }
    return points;
}

int cmd_fit(const RunConfig& cfg, const std::string& in_path,
            const std::string& overlay_path) {
    const auto points = load_fit_input(in_path);
    const hwselj::FitResult fit = hwselj::fit_quadratic(points);

    OutputTarget target(cfg.output_path);
    std::ostream& out = target.stream();
    if (use_csv(cfg, false)) {
        hwselj::write_csv_row(out,
                              {"coeff_a", "coeff_b", "rms_residual", "n_points"});
        hwselj::write_csv_row(out, {format_double(fit.coeff_a),
                                    format_double(fit.coeff_b),
                                    format_double(fit.rms_residual),
                                    std::to_string(fit.n_points)});
    } else {
        emit_kv(out, "coeff_a", format_double(fit.coeff_a));
        emit_kv(out, "coeff_b", format_double(fit.coeff_b));
        emit_kv(out, "rms_residual", format_double(fit.rms_residual));
        emit_kv(out, "n_points", std::to_string(fit.n_points));
    }

    if (!overlay_path.empty()) {
        double v_min = points.front().first, v_max = v_min;
        for (const auto& [v, f] : points) {
            v_min = std::min(v_min, v);
            v_max = std::max(v_max, v);
        }
        std::ofstream overlay(overlay_path);
        if (!overlay)
            throw std::runtime_error("cannot open overlay output: " + overlay_path);
        hwselj::write_csv_row(overlay, {"voltage", "F_fit"});
        const auto steps = static_cast<long long>((v_max - v_min) / 50.0 + 0.5);
        for (long long k = 0; k <= steps; ++k) {
            const double v = v_min + 50.0 * static_cast<double>(k);
            hwselj::write_csv_row(
                overlay, {format_double(v),
                          format_double(fit.coeff_a * v * v + fit.coeff_b)});
        }
    }
    return 0;
}

int cmd_finger(const RunConfig& cfg) {
    const hwselj::FingerConfig c = cfg.finger_config();
    if (cfg.voltages.empty())
        throw hwselj::ConfigError("sweep.voltages", "required for finger sweep");
    if (cfg.loads.empty())
        throw hwselj::ConfigError("sweep.loads", "required for finger sweep");
    const auto rows = hwselj::load_sweep(c, cfg.voltages, cfg.loads);

    OutputTarget target(cfg.output_path);
    std::ostream& out = target.stream();
    hwselj::write_csv_row(out, {"V", "F_pull", "theta_deg", "k", "status"});
    for (const auto& row : rows) {
        hwselj::write_csv_row(
            out, {format_double(row.voltage), format_double(row.load),
                  format_double(row.bend_angle * 180.0 / std::numbers::pi),
                  format_double(row.stiffness), hwselj::to_string(row.status)});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HWS-ELJ variable-stiffness mechanism toolkit"};
    app.require_subcommand(1);
    // Global flags remain usable after the verb.
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--config", g.config_paths,
                   "Config file(s), applied in order (later keys win)");
    app.add_flag("--paper-fixtures", g.paper_fixtures,
                 "Start from the published specimen constants and voltage grid");
    app.add_option("--out", g.out_path, "Output path (default stdout)");
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "text"}));

    auto* helix_info = app.add_subcommand("helix-info", "Report wrap geometry");

    auto* tension = app.add_subcommand("tension", "Wound-electrode tension");
    tension->require_subcommand(1);
    auto* tension_eval = tension->add_subcommand("eval", "Single evaluation");
    auto* tension_sweep =
        tension->add_subcommand("sweep", "Voltage (x angle) sweep CSV");

    auto* compare = app.add_subcommand(
        "compare-planar", "Helical vs flat-strip jamming at equal contact area");

    auto* process = app.add_subcommand(
        "process", "Reduce six-axis sensor logs to friction measurements");
    std::vector<std::string> log_paths;
    std::string voltages_arg;
    double outlier_sigma = 3.0;
    process->add_option("logs", log_paths, "Sensor log CSV files")->required();
    process->add_option("--voltages", voltages_arg,
                        "Per-log voltages, e.g. '1000 V, 1400 V' "
                        "(default: the sweep.voltages list)");
    process->add_option("--outlier-sigma", outlier_sigma,
                        "Outlier cutoff in robust standard deviations");

    auto* fit = app.add_subcommand("fit", "Quadratic voltage-response fit");
    std::string fit_in, overlay_path;
    fit->add_option("--in", fit_in, "Measurement CSV (voltage + force columns)")
        ->required();
    fit->add_option("--overlay", overlay_path,
                    "Also write the fitted curve at 50 V resolution");

    auto* finger = app.add_subcommand("finger", "Finger-joint load sweep CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg = assemble_config(g);
        if (helix_info->parsed()) return cmd_helix_info(cfg);
        if (tension->parsed()) {
            if (tension_eval->parsed()) return cmd_tension_eval(cfg);
            if (tension_sweep->parsed()) return cmd_tension_sweep(cfg);
        }
        if (compare->parsed()) return cmd_compare_planar(cfg);
        if (process->parsed())
            return cmd_process(cfg, log_paths, voltages_arg, outlier_sigma);
        if (fit->parsed()) return cmd_fit(cfg, fit_in, overlay_path);
        if (finger->parsed()) return cmd_finger(cfg);
        std::cerr << "error: no command\n";
        return 2;
    } catch (const hwselj::ConfigError& e) {
        std::cerr << "error: config: " << e.what() << '\n';
    } catch (const hwselj::ParseError& e) {
        std::cerr << "error: parse: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
}
