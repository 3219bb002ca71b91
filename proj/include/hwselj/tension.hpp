#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hwselj/electrostatics.hpp"
#include "hwselj/geometry.hpp"
#include "hwselj/ode.hpp"

namespace hwselj {

// exp() overflows just above 709; anything past this is unphysical anyway.
inline constexpr double kMaxFrictionExponent = 700.0;

// Below this wrap tightness the closed form's 1/kappa factor loses accuracy;
// switch to the flat-strip series instead.
inline constexpr double kPlanarSwitchKappaS = 1e-9;

/// Complete physical description of a wound mechanism: electrode path plus
/// dielectric/friction stack. A positive pitch must exceed the electrode
/// width or adjacent turns would overlap on the core; `allow_limit_geometry`
/// waives that fabrication constraint (and permits pitch = 0) for limit
/// studies and property tests.
struct MechanismSpec {
    HelixGeometry helix;
    DielectricStack stack;
    bool allow_limit_geometry = false;

    void validate() const {
        helix.validate();
        stack.validate();
        if (allow_limit_geometry) return;
        if (helix.pitch == 0.0) {
            throw std::invalid_argument(
                "helix.pitch: 0 (circular wrap) requires allow_limit_geometry");
        }
        if (!(helix.pitch > stack.electrode_width)) {
            throw std::invalid_argument(
                "helix.pitch: must exceed stack.electrode_width (" +
                std::to_string(helix.pitch) + " <= " +
                std::to_string(stack.electrode_width) +
                "), or turns overlap on the core");
        }
    }
};

/// Electrical and mechanical inputs at the free end of the electrode.
struct DriveState {
    double voltage = 0.0;  // V
    double preload = 0.0;  // initial tension T0, N

    void validate() const {
        if (!(voltage >= 0.0))
            throw std::invalid_argument("drive.voltage: must be >= 0, got " +
                                        std::to_string(voltage));
        if (!(preload >= 0.0))
            throw std::invalid_argument("drive.preload: must be >= 0, got " +
                                        std::to_string(preload));
    }
};

/// Decomposed terminal tension. terminal_tension = preload * capstan_gain +
/// electro_term; amplification is terminal/preload, NaN when preload = 0.
struct TensionSolution {
    double terminal_tension = 0.0;  // N
    double amplification = 0.0;     // dimensionless
    double capstan_gain = 0.0;      // e^(mu kappa s)
    double electro_term = 0.0;      // voltage-driven addend, N
};

namespace detail {

inline double friction_exponent(const MechanismSpec& m, double arc) {
    return m.stack.friction_mu * m.helix.curvature() * arc;
}

inline void check_exponent(double x) {
    if (x > kMaxFrictionExponent) {
        throw std::range_error(
            "friction exponent mu*kappa*s = " + std::to_string(x) +
            " exceeds " + std::to_string(kMaxFrictionExponent) +
            "; the closed form would overflow (reduce mu, wrap angle, or "
            "curvature)");
    }
}

// Voltage-quadratic coefficient of the terminal tension: the electrostatic
// addend equals this times V^2. Shared by terminal_tension and
// predicted_coefficients so the two agree identically.
inline double voltage_quadratic_coefficient(const MechanismSpec& m, double arc) {
    const double kappa = m.helix.curvature();
    const double mu = m.stack.friction_mu;
    const double c = m.stack.line_load_coefficient();
    const double x = mu * kappa * arc;
    check_exponent(x);
    if (kappa * arc < kPlanarSwitchKappaS) {
        // Flat-strip limit of (e^x - 1)/kappa with one correction term, so the
        // value stays continuous across the switch.
        return c * mu * arc * (1.0 + 0.5 * x);
    }
    return c * std::expm1(x) / kappa;
}

}  // namespace detail

/// Terminal tension of the wound electrode,
///
///   T = T0 e^(mu kappa s) + q_e/kappa * (e^(mu kappa s) - 1),
///
/// evaluated over the full wrap s = a*Phi unless a partial arc length is
/// given. The (e^x - 1) factor uses expm1, and wraps with kappa*s below
/// kPlanarSwitchKappaS fall back to the flat-strip series, so loose wraps
/// degrade gracefully into the planar model.
inline TensionSolution terminal_tension(const MechanismSpec& m, const DriveState& d,
                                        std::optional<double> arc_length = {}) {
    m.validate();
    d.validate();
    const double s = arc_length.value_or(m.helix.arc_length());
    if (!(s >= 0.0))
        throw std::invalid_argument("arc length must be >= 0, got " +
                                    std::to_string(s));

    const double x = detail::friction_exponent(m, s);
    detail::check_exponent(x);

    TensionSolution out;
    out.capstan_gain = std::exp(x);
    out.electro_term =
        detail::voltage_quadratic_coefficient(m, s) * d.voltage * d.voltage;
    out.terminal_tension = d.preload * out.capstan_gain + out.electro_term;
    out.amplification = d.preload > 0.0
                            ? out.terminal_tension / d.preload
                            : std::numeric_limits<double>::quiet_NaN();
    return out;
}

/// Independent numerical route to the terminal tension: integrates the force
/// balance dT/ds = mu (kappa T + q_e) from T(0) = T0 to the wrap end with an
/// adaptive Cash-Karp RK45 pass, then confirms it against Richardson
/// step-halving of fixed-step RK4. Exists to cross-check terminal_tension;
/// it shares no arithmetic with the closed form.
inline double integrate_tension_ode(const MechanismSpec& m, const DriveState& d,
                                    double rel_tol = 1e-10,
                                    std::optional<double> arc_length = {}) {
    m.validate();
    d.validate();
    if (!(rel_tol >= 1e-14 && rel_tol <= 1e-3)) {
        throw std::invalid_argument("rel_tol must be in [1e-14, 1e-3], got " +
                                    std::to_string(rel_tol));
    }
    const double s_end = arc_length.value_or(m.helix.arc_length());
    if (!(s_end >= 0.0))
        throw std::invalid_argument("arc length must be >= 0, got " +
                                    std::to_string(s_end));

    const double mu = m.stack.friction_mu;
    const double kappa = m.helix.curvature();
    const double q_e = m.stack.line_load(d.voltage);
    const auto rhs = [mu, kappa, q_e](double /*s*/, double t) {
        return mu * (kappa * t + q_e);
    };

    // Scale floor keeps the relative test meaningful when T0 = V = 0.
    const double abs_scale = std::max({d.preload, q_e * s_end * mu, 1e-30});
    const double adaptive =
        integrate_rk45(rhs, 0.0, s_end, d.preload, rel_tol, abs_scale);
    const auto [refined, achieved] =
        integrate_rk4_refined(rhs, 0.0, s_end, d.preload, rel_tol, abs_scale);

    const double disagreement = std::abs(adaptive - refined) /
                                std::max(std::abs(refined), abs_scale);
    if (disagreement > 50.0 * rel_tol) {
        throw NonConvergenceError(
            "adaptive and step-halved integrations disagree",
            std::max(disagreement, achieved));
    }
    return refined;
}

/// Tension along the wrap: n_samples points (s_i, T(s_i)) from s = 0 to the
/// full arc length. Nondecreasing in s.
inline std::vector<std::pair<double, double>> tension_profile(
    const MechanismSpec& m, const DriveState& d, int n_samples) {
    if (n_samples < 2)
        throw std::invalid_argument("tension_profile needs n_samples >= 2, got " +
                                    std::to_string(n_samples));
    m.validate();
    d.validate();
    const double s_end = m.helix.arc_length();
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double s = s_end * static_cast<double>(i) / (n_samples - 1);
        out.emplace_back(s, terminal_tension(m, d, s).terminal_tension);
    }
    return out;
}

/// Flat-strip (planar jamming) baseline over contact length L:
/// T = T0 + mu q_e L. This is the kappa -> 0 limit of the wound model with
/// s = L held fixed, and what a conventional planar layer-jamming stack of
/// the same contact area provides.
inline double planar_tension(const DielectricStack& stack, double contact_length,
                             const DriveState& d) {
    stack.validate();
    d.validate();
    if (!(contact_length > 0.0))
        throw std::invalid_argument("contact length must be > 0, got " +
                                    std::to_string(contact_length));
    return d.preload + stack.friction_mu * stack.line_load(d.voltage) * contact_length;
}

/// Terminal tension over preload. Preload must be positive for the ratio to
/// be meaningful.
inline double amplification_ratio(const MechanismSpec& m, const DriveState& d) {
    if (!(d.preload > 0.0)) {
        throw std::domain_error(
            "amplification ratio undefined at zero preload");
    }
    return terminal_tension(m, d).terminal_tension / d.preload;
}

/// Inverse design: smallest total winding angle whose terminal tension
/// reaches `target_tension` at the given drive. Closed-form inversion of the
/// tension solution; requires friction and curvature to be active, since
/// without them no wrap angle raises the tension.
inline double required_angle(const MechanismSpec& m, const DriveState& d,
                             double target_tension) {
    m.validate();
    d.validate();
    if (!(m.stack.friction_mu > 0.0))
        throw std::invalid_argument("required_angle needs friction_mu > 0");
    const double kappa = m.helix.curvature();
    if (!(kappa > 0.0))
        throw std::invalid_argument("required_angle needs curvature > 0");
    if (!(target_tension >= 0.0))
        throw std::invalid_argument("target tension must be >= 0, got " +
                                    std::to_string(target_tension));
    if (target_tension <= d.preload) return 0.0;

    // T(Phi) = (T0 + q/kappa) e^(mu kappa a Phi) - q/kappa, so the gain needed
    // is (target + q/kappa) / (T0 + q/kappa).
    const double q_over_kappa = m.stack.line_load(d.voltage) / kappa;
    const double base = d.preload + q_over_kappa;
    if (!(base > 0.0)) {
        throw std::range_error(
            "target tension unreachable: zero preload and zero line load");
    }
    const double exponent = std::log((target_tension + q_over_kappa) / base);
    if (exponent > kMaxFrictionExponent) {
        throw std::range_error(
            "target tension unreachable: required exponent " +
            std::to_string(exponent) + " exceeds the overflow guard");
    }
    return exponent / (m.stack.friction_mu * kappa * m.helix.helix_constant());
}

}  // namespace hwselj
