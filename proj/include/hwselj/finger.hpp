#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hwselj/errors.hpp"
#include "hwselj/tension.hpp"

namespace hwselj {

// Physical fingers cannot bend past a straight-back fold.
inline constexpr double kMaxBendAngle = std::numbers::pi;

/// Two-segment finger joint held by a wound mechanism: a spring preloads the
/// electrode, the electrode wraps the core inside segment 1, and its far end
/// anchors segment 2. Bending segment 2 by theta pays out arc core_radius *
/// theta of electrode, stretching the spring; the amplified tension times
/// core_radius is the torque holding the joint.
struct FingerConfig {
    double spring_k = 0.0;          // preload spring stiffness, N/m
    double pre_extension = 0.0;     // spring stretch at theta = 0, m
    double core_radius = 0.0;       // moment arm of the electrode about the hinge, m
    double fingertip_lever = 0.0;   // moment arm of the fingertip load, m
    MechanismSpec mechanism;

    void validate() const {
        if (!(spring_k > 0.0))
            throw std::invalid_argument("finger.spring_k: must be > 0, got " +
                                        std::to_string(spring_k));
        if (!(pre_extension >= 0.0))
            throw std::invalid_argument("finger.pre_extension: must be >= 0, got " +
                                        std::to_string(pre_extension));
        if (!(core_radius > 0.0))
            throw std::invalid_argument("finger.core_radius: must be > 0, got " +
                                        std::to_string(core_radius));
        if (!(fingertip_lever > 0.0))
            throw std::invalid_argument("finger.fingertip_lever: must be > 0, got " +
                                        std::to_string(fingertip_lever));
        mechanism.validate();
    }
};

/// Spring tension at bend angle theta: T0(theta) = k (x0 + r_c theta).
/// Electrode pay-out is the arc r_c * theta, the simplest length-conserving
/// coupling between bend and spring stretch.
inline double preload_at_angle(const FingerConfig& c, double theta) {
    if (!(theta >= 0.0))
        throw std::domain_error("bend angle must be >= 0, got " +
                                std::to_string(theta));
    return c.spring_k * (c.pre_extension + c.core_radius * theta);
}

/// Torque available to hold the joint at (theta, V): amplified electrode
/// tension times its moment arm.
inline double holding_torque(const FingerConfig& c, double voltage, double theta) {
    const DriveState drive{voltage, preload_at_angle(c, theta)};
    return terminal_tension(c.mechanism, drive).terminal_tension * c.core_radius;
}

/// Net bend angle under a fingertip load: the smallest theta >= 0 where the
/// holding torque matches load * lever. The residual is monotone in theta, so
/// bisection on [0, pi] suffices; 0 means the joint holds rigid. Throws
/// NoEquilibriumError when even theta = pi cannot hold the load. The lever
/// arm is treated as constant over the bend (small-angle load geometry).
inline double equilibrium_angle(const FingerConfig& c, double voltage,
                                double load) {
    c.validate();
    if (!(load >= 0.0))
        throw std::invalid_argument("load must be >= 0, got " +
                                    std::to_string(load));

    const double demand = load * c.fingertip_lever;
    if (holding_torque(c, voltage, 0.0) >= demand) return 0.0;
    if (holding_torque(c, voltage, kMaxBendAngle) < demand) {
        throw NoEquilibriumError(
            "load " + std::to_string(load) +
            " N exceeds the joint's holding capability at every bend angle");
    }

    double lo = 0.0;
    double hi = kMaxBendAngle;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (holding_torque(c, voltage, mid) >= demand ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Joint stiffness k = load / bend_angle. Returns +infinity when the joint
/// holds rigid (theta = 0): a deliberate value, not an overflow.
inline double stiffness_coefficient(const FingerConfig& c, double voltage,
                                    double load) {
    if (!(load > 0.0))
        throw std::invalid_argument(
            "stiffness coefficient undefined at zero load");
    const double theta = equilibrium_angle(c, voltage, load);
    if (theta == 0.0) return std::numeric_limits<double>::infinity();
    return load / theta;
}

enum class FingerRowStatus {
    kOk,             // interior equilibrium, finite stiffness
    kRigid,          // joint holds at theta = 0; stiffness reported as +inf
    kUndefinedLoad,  // zero load: theta = 0 but stiffness is undefined
    kNoEquilibrium,  // load exceeds capability; angle and stiffness are NaN
};

inline const char* to_string(FingerRowStatus s) {
    switch (s) {
        case FingerRowStatus::kOk: return "ok";
        case FingerRowStatus::kRigid: return "rigid";
        case FingerRowStatus::kUndefinedLoad: return "undefined_load";
        case FingerRowStatus::kNoEquilibrium: return "no_equilibrium";
    }
    return "?";
}

struct FingerSweepRow {
    double voltage = 0.0;     // V
    double load = 0.0;        // N
    double bend_angle = 0.0;  // rad
    double stiffness = 0.0;   // N/rad
    FingerRowStatus status = FingerRowStatus::kOk;
};

/// Voltage x load sweep, voltage-major row order. Rows that cannot reach
/// equilibrium are flagged, never dropped, so the output shape is always
/// |voltages| x |loads|.
inline std::vector<FingerSweepRow> load_sweep(const FingerConfig& c,
                                              const std::vector<double>& voltages,
                                              const std::vector<double>& loads) {
    if (voltages.empty() || loads.empty())
        throw std::invalid_argument("load_sweep needs nonempty voltage and load lists");
    c.validate();

    std::vector<FingerSweepRow> rows;
    rows.reserve(voltages.size() * loads.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (double v : voltages) {
        for (double f : loads) {
            FingerSweepRow row;
            row.voltage = v;
            row.load = f;
            if (f == 0.0) {
                row.bend_angle = 0.0;
                row.stiffness = nan;
                row.status = FingerRowStatus::kUndefinedLoad;
            } else {
                try {
                    row.bend_angle = equilibrium_angle(c, v, f);
                    if (row.bend_angle == 0.0) {
                        row.stiffness = std::numeric_limits<double>::infinity();
                        row.status = FingerRowStatus::kRigid;
                    } else {
                        row.stiffness = f / row.bend_angle;
                        row.status = FingerRowStatus::kOk;
                    }
                } catch (const NoEquilibriumError&) {
                    row.bend_angle = nan;
                    row.stiffness = nan;
                    row.status = FingerRowStatus::kNoEquilibrium;
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace hwselj
