#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hwselj/vec3.hpp"

namespace hwselj {

/// Moving orthonormal basis along the electrode path. `binormal` is
/// tangent x normal by construction.
struct FrenetFrame {
    Vec3 tangent;
    Vec3 normal;
    Vec3 binormal;
};

/// Circular helix r(phi) = (R cos phi, R sin phi, (H/2pi) phi) traced by the
/// wound electrode on the core surface. All lengths in meters, angles in
/// radians. pitch = 0 is the degenerate circular wrap, kept for limit studies.
struct HelixGeometry {
    double radius = 0.0;       // core radius R, m
    double pitch = 0.0;        // axial advance per turn H, m
    double total_angle = 0.0;  // full winding angle Phi, rad

    void validate() const {
        if (!(radius > 0.0)) {
            throw std::invalid_argument("helix.radius: must be > 0, got " +
                                        std::to_string(radius));
        }
        if (!(pitch >= 0.0)) {
            throw std::invalid_argument("helix.pitch: must be >= 0, got " +
                                        std::to_string(pitch));
        }
        if (!(total_angle > 0.0)) {
            throw std::invalid_argument("helix.total_angle: must be > 0, got " +
                                        std::to_string(total_angle));
        }
    }

    // Axial rise per radian of winding, H/2pi.
    double rise_per_radian() const { return pitch / (2.0 * std::numbers::pi); }

    /// Helix constant a = sqrt(R^2 + (H/2pi)^2); ds = a dphi.
    double helix_constant() const {
        return std::hypot(radius, rise_per_radian());
    }

    /// Arc length of the full wrap, a * Phi.
    double arc_length() const { return helix_constant() * total_angle; }

    /// Curvature kappa = R / (R^2 + (H/2pi)^2). Constant along the helix;
    /// reduces to 1/R for a circular wrap.
    double curvature() const {
        const double b = rise_per_radian();
        return radius / (radius * radius + b * b);
    }

    /// Torsion tau = (H/2pi) / (R^2 + (H/2pi)^2); zero for a circular wrap.
    double torsion() const {
        const double b = rise_per_radian();
        return b / (radius * radius + b * b);
    }

    /// Point on the electrode path at winding angle phi in [0, total_angle].
    Vec3 position(double phi) const {
        check_domain(phi);
        return {radius * std::cos(phi), radius * std::sin(phi),
                rise_per_radian() * phi};
    }

    /// Frenet frame at winding angle phi. The normal points toward the helix
    /// axis; the binormal is computed as tangent x normal.
    FrenetFrame frenet_frame(double phi) const {
        check_domain(phi);
        const double a = helix_constant();
        const double b = rise_per_radian();
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        FrenetFrame f;
        f.tangent = Vec3{-radius * s, radius * c, b} / a;
        f.normal = Vec3{-c, -s, 0.0};
        f.binormal = f.tangent.cross(f.normal);
        return f;
    }

private:
    void check_domain(double phi) const {
        if (!(phi >= 0.0 && phi <= total_angle)) {
            throw std::domain_error("winding angle " + std::to_string(phi) +
                                    " rad outside [0, " +
                                    std::to_string(total_angle) + "]");
        }
    }
};

}  // namespace hwselj
