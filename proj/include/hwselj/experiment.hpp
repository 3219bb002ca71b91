#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hwselj/errors.hpp"
#include "hwselj/tension.hpp"

namespace hwselj {

/// Six-axis force/torque reading. Forces in N, torques in N*m.
struct Wrench {
    double Fx = 0.0, Fy = 0.0, Fz = 0.0;
    double Tx = 0.0, Ty = 0.0, Tz = 0.0;
};

struct SensorSample {
    double time = 0.0;  // s
    Wrench wrench;
};

/// Test-rig description: groove radius converting z-torque to tangential
/// force, suspended mass for the gravity preload, and the log sampling rate.
struct RigConfig {
    double groove_radius = 0.0;  // m
    double mass = 0.0;           // kg
    double gravity = 9.81;       // m/s^2
    double sampling_hz = 10.0;

    void validate() const {
        if (!(groove_radius > 0.0))
            throw std::invalid_argument("rig.groove_radius: must be > 0, got " +
                                        std::to_string(groove_radius));
        if (!(mass >= 0.0))
            throw std::invalid_argument("rig.mass: must be >= 0, got " +
                                        std::to_string(mass));
        if (!(gravity > 0.0))
            throw std::invalid_argument("rig.gravity: must be > 0, got " +
                                        std::to_string(gravity));
        if (!(sampling_hz > 0.0))
            throw std::invalid_argument("rig.sampling_hz: must be > 0, got " +
                                        std::to_string(sampling_hz));
    }
};

inline constexpr const char* kSensorLogHeader = "time,Fx,Fy,Fz,Tx,Ty,Tz";

namespace detail {

inline std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

inline double parse_field(const std::string& cell, std::size_t line,
                          const char* column) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        throw ParseError(line, std::string("column ") + column +
                                   ": not a number: '" + cell + "'");
    }
    // Reject trailing garbage like "1.5x".
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
        ++used;
    if (used != cell.size())
        throw ParseError(line, std::string("column ") + column +
                                   ": not a number: '" + cell + "'");
    return v;
}

inline std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

/// Parses a sensor log. The header must be exactly `time,Fx,Fy,Fz,Tx,Ty,Tz`;
/// every data row needs all seven numeric cells and nondecreasing time.
/// A header with no data rows is a valid, empty log. Any malformed row stops
/// the parse with the offending line number.
inline std::vector<SensorSample> load_sensor_log(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError(1, "empty file: expected header '" +
                                std::string(kSensorLogHeader) + "'");
    if (detail::strip_cr(line) != kSensorLogHeader)
        throw ParseError(1, "bad header: expected '" +
                                std::string(kSensorLogHeader) + "', got '" +
                                detail::strip_cr(line) + "'");

    static constexpr std::array<const char*, 7> kColumns = {
        "time", "Fx", "Fy", "Fz", "Tx", "Ty", "Tz"};
    std::vector<SensorSample> samples;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = detail::strip_cr(line);
        if (row.empty()) continue;
        const auto cells = detail::split_csv(row);
        if (cells.size() != kColumns.size())
            throw ParseError(line_no, "expected " + std::to_string(kColumns.size()) +
                                          " columns, got " +
                                          std::to_string(cells.size()));
        std::array<double, 7> v{};
        for (std::size_t i = 0; i < kColumns.size(); ++i)
            v[i] = detail::parse_field(cells[i], line_no, kColumns[i]);
        if (!samples.empty() && v[0] < samples.back().time)
            throw ParseError(line_no, "time regression: " + std::to_string(v[0]) +
                                          " after " +
                                          std::to_string(samples.back().time));
        samples.push_back({v[0], {v[1], v[2], v[3], v[4], v[5], v[6]}});
    }
    return samples;
}

inline std::vector<SensorSample> load_sensor_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sensor log: " + path);
    return load_sensor_log(in);
}

/// Robust outlier rejection: per channel, drop any sample whose deviation
/// from the channel median exceeds threshold * 1.4826 * MAD. With a
/// degenerate channel (MAD = 0, i.e. most samples identical) any deviation
/// from the median counts as an outlier, so a constant log passes through
/// unchanged while an isolated spike is dropped. threshold = +inf keeps
/// everything.
inline std::vector<SensorSample> remove_outliers(
    const std::vector<SensorSample>& samples, double threshold_sigma = 3.0) {
    if (!(threshold_sigma > 0.0))
        throw std::invalid_argument("outlier threshold must be > 0, got " +
                                    std::to_string(threshold_sigma));
    if (std::isinf(threshold_sigma) || samples.empty()) return samples;

    static constexpr std::array<double Wrench::*, 6> kChannels = {
        &Wrench::Fx, &Wrench::Fy, &Wrench::Fz,
        &Wrench::Tx, &Wrench::Ty, &Wrench::Tz};

    const auto median_of = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };

    std::array<double, 6> median{}, cutoff{};
    std::vector<double> values(samples.size());
    for (std::size_t ch = 0; ch < kChannels.size(); ++ch) {
        for (std::size_t i = 0; i < samples.size(); ++i)
            values[i] = samples[i].wrench.*kChannels[ch];
        median[ch] = median_of(values);
        for (double& v : values) v = std::abs(v - median[ch]);
        cutoff[ch] = threshold_sigma * 1.4826 * median_of(values);
    }

    std::vector<SensorSample> kept;
    kept.reserve(samples.size());
    for (const auto& s : samples) {
        bool outlier = false;
        for (std::size_t ch = 0; ch < kChannels.size() && !outlier; ++ch)
            outlier = std::abs(s.wrench.*kChannels[ch] - median[ch]) > cutoff[ch];
        if (!outlier) kept.push_back(s);
    }
    return kept;
}

/// Arithmetic mean of every channel; the steady-state representative wrench.
inline Wrench steady_state_mean(const std::vector<SensorSample>& samples) {
    if (samples.empty())
        throw std::invalid_argument("steady_state_mean: no samples");
    Wrench sum;
    for (const auto& s : samples) {
        sum.Fx += s.wrench.Fx;
        sum.Fy += s.wrench.Fy;
        sum.Fz += s.wrench.Fz;
        sum.Tx += s.wrench.Tx;
        sum.Ty += s.wrench.Ty;
        sum.Tz += s.wrench.Tz;
    }
    const double n = static_cast<double>(samples.size());
    return {sum.Fx / n, sum.Fy / n, sum.Fz / n, sum.Tx / n, sum.Ty / n, sum.Tz / n};
}

/// Friction magnitude seen by the rig. The wound-electrode end tension splits
/// into the axial component F_z1 (the sensor's Fz channel) and the tangential
/// component F_z2 = Tz / groove_radius; the total is their quadrature sum.
/// Uses magnitudes only, so channel sign conventions cancel out.
inline double friction_from_wrench(const Wrench& w, const RigConfig& rig) {
    rig.validate();
    const double f_z1 = w.Fz;
    const double f_z2 = w.Tz / rig.groove_radius;
    return std::sqrt(f_z1 * f_z1 + f_z2 * f_z2);
}

/// Gravity preload of the suspended mass, T0 = m g.
inline double initial_force(const RigConfig& rig) {
    rig.validate();
    return rig.mass * rig.gravity;
}

/// Quadratic voltage-response fit T(V) = a V^2 + b.
struct FitResult {
    double coeff_a = 0.0;      // N/V^2
    double coeff_b = 0.0;      // N
    double rms_residual = 0.0; // N
    int n_points = 0;
};

/// Linear least squares on the basis {V^2, 1}. Solved on the centered
/// regressor (x - mean(x) with x = V^2), which keeps the normal equations
/// diagonal and the recovery of exact quadratic data at machine precision.
/// Needs at least 3 points spanning at least 2 distinct V^2 values.
inline FitResult fit_quadratic(const std::vector<std::pair<double, double>>& points) {
    const std::size_t n = points.size();
    if (n < 3)
        throw std::invalid_argument("fit needs >= 3 points, got " +
                                    std::to_string(n));

    double x_mean = 0.0, y_mean = 0.0;
    for (const auto& [v, f] : points) {
        x_mean += v * v;
        y_mean += f;
    }
    x_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (const auto& [v, f] : points) {
        const double dx = v * v - x_mean;
        sxx += dx * dx;
        sxy += dx * (f - y_mean);
    }
    if (sxx == 0.0)
        throw std::runtime_error(
            "fit error: rank-deficient data (all voltages have the same V^2)");

    FitResult out;
    out.coeff_a = sxy / sxx;
    out.coeff_b = y_mean - out.coeff_a * x_mean;
    out.n_points = static_cast<int>(n);

    double ss = 0.0;
    for (const auto& [v, f] : points) {
        const double r = out.coeff_a * v * v + out.coeff_b - f;
        ss += r * r;
    }
    out.rms_residual = std::sqrt(ss / static_cast<double>(n));
    return out;
}

/// The wound-tension solution regrouped by powers of V:
/// T(V) = quadratic * V^2 + constant with
/// quadratic = eps0 eps_e w (e^(mu kappa s) - 1) / (2 d_e^2 kappa) and
/// constant = T0 e^(mu kappa s). Shares its arithmetic with terminal_tension,
/// so quadratic * V^2 + constant reproduces it identically.
struct VoltageCoefficients {
    double quadratic = 0.0;  // N/V^2
    double constant = 0.0;   // N
};

inline VoltageCoefficients predicted_coefficients(const MechanismSpec& m,
                                                  double preload) {
    m.validate();
    if (!(preload >= 0.0))
        throw std::invalid_argument("preload must be >= 0, got " +
                                    std::to_string(preload));
    const double s = m.helix.arc_length();
    const double x = detail::friction_exponent(m, s);
    detail::check_exponent(x);
    return {detail::voltage_quadratic_coefficient(m, s),
            preload * std::exp(x)};
}

}  // namespace hwselj
