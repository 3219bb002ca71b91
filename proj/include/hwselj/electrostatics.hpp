#pragma once

#include <stdexcept>
#include <string>

namespace hwselj {

/// Vacuum permittivity, F/m. The rounded tabulated value is used so runs with
/// published specimen parameters reproduce the published arithmetic; the field
/// below is overridable where that matters.
inline constexpr double kVacuumPermittivity = 8.85e-12;

/// Two dielectric films in series between the electrode cores, plus the
/// frictional properties of their interface. Copper foil thickness and air
/// gaps are neglected; attraction depends on V^2 only.
struct DielectricStack {
    double eps_r1 = 1.0;          // relative permittivity of film 1
    double thickness_1 = 0.0;     // film 1 thickness d1, m
    double eps_r2 = 1.0;          // relative permittivity of film 2
    double thickness_2 = 0.0;     // film 2 thickness d2, m
    double electrode_width = 0.0; // electrode strip width w, m
    double friction_mu = 0.0;     // interfacial friction coefficient
    double eps0 = kVacuumPermittivity;

    void validate() const {
        if (!(eps_r1 >= 1.0))
            throw std::invalid_argument("stack.eps_r1: must be >= 1, got " +
                                        std::to_string(eps_r1));
        if (!(eps_r2 >= 1.0))
            throw std::invalid_argument("stack.eps_r2: must be >= 1, got " +
                                        std::to_string(eps_r2));
        if (!(thickness_1 > 0.0))
            throw std::invalid_argument("stack.thickness_1: must be > 0, got " +
                                        std::to_string(thickness_1));
        if (!(thickness_2 > 0.0))
            throw std::invalid_argument("stack.thickness_2: must be > 0, got " +
                                        std::to_string(thickness_2));
        if (!(electrode_width > 0.0))
            throw std::invalid_argument("stack.electrode_width: must be > 0, got " +
                                        std::to_string(electrode_width));
        if (!(friction_mu >= 0.0))
            throw std::invalid_argument("stack.friction_mu: must be >= 0, got " +
                                        std::to_string(friction_mu));
        if (!(eps0 > 0.0))
            throw std::invalid_argument("stack.eps0: must be > 0, got " +
                                        std::to_string(eps0));
    }

    /// Total dielectric gap d_e = d1 + d2 between the electrode cores.
    double effective_gap() const { return thickness_1 + thickness_2; }

    /// Single-layer relative permittivity reproducing the series capacitance
    /// of both films: eps_e = eps1 eps2 d_e / (eps1 d2 + eps2 d1), i.e.
    /// d_e / eps_e = d1/eps1 + d2/eps2.
    double equivalent_permittivity() const {
        return eps_r1 * eps_r2 * effective_gap() /
               (eps_r1 * thickness_2 + eps_r2 * thickness_1);
    }

    /// q_e(V) = eps0 eps_e w V^2 / (2 d_e^2), N/m. Quadratic in V; the sign of
    /// the applied voltage is irrelevant, so negative inputs are rejected.
    double line_load(double voltage) const {
        if (!(voltage >= 0.0)) {
            throw std::domain_error("voltage must be >= 0 (attraction depends on "
                                    "V^2 only), got " + std::to_string(voltage));
        }
        return line_load_coefficient() * voltage * voltage;
    }

    // q_e / V^2, N/(m V^2).
    double line_load_coefficient() const {
        const double de = effective_gap();
        return eps0 * equivalent_permittivity() * electrode_width / (2.0 * de * de);
    }
};

}  // namespace hwselj
