#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

#include "hwselj/electrostatics.hpp"
#include "hwselj/experiment.hpp"
#include "hwselj/finger.hpp"
#include "hwselj/geometry.hpp"
#include "hwselj/tension.hpp"

// Specimen constants from the published HWS-ELJ study, plus the reference
// fixture used by the tests and the --paper-fixtures CLI flag. Values the
// study does not report (core radius, pitch, film thicknesses, all finger
// dimensions except electrode width and wrap) are synthetic stand-ins chosen
// to satisfy the model's validity constraints; they are marked below and must
// not be read as measured values.

namespace hwselj::specimen {

// Published specimen parameters.
inline constexpr double kRelativePermittivity = 3.6;
inline constexpr double kElectrodeWidth = 0.007;        // m
inline constexpr double kFrictionCoefficient = 0.22;
inline constexpr double kWrapAngle = 2.5 * std::numbers::pi;  // 450 degrees
inline constexpr double kSamplingHz = 10.0;

// Published quadratic fits T(V) = a V^2 + b, one intercept per suspended
// mass. The study's initial-force column rounds m*g to {0.25, 0.50, 1.00} N.
inline constexpr double kFitSlope = 5.138e-8;  // N/V^2
inline constexpr std::array<double, 3> kFitIntercepts = {0.902, 1.804, 3.608};
inline constexpr std::array<double, 3> kMasses = {0.025, 0.050, 0.100};  // kg
inline constexpr std::array<double, 3> kInitialForces = {0.25, 0.50, 1.00};

// Published finger-joint parameters (width and wrap only).
inline constexpr double kFingerElectrodeWidth = 0.006;  // m
inline constexpr double kFingerWrapAngle = 2.0 * std::numbers::pi;

/// The published excitation grid: 1000 V to 3800 V in 400 V steps.
inline std::vector<double> voltage_grid() {
    std::vector<double> grid;
    for (double v = 1000.0; v <= 3800.0; v += 400.0) grid.push_back(v);
    return grid;
}

/// Reference wound mechanism. Core radius, pitch, and film thicknesses are
/// synthetic (the study reports none of them); dielectric constants, width,
/// and friction are the published values.
inline MechanismSpec reference_mechanism() {
    MechanismSpec m;
    m.helix = {0.004, 0.013, kWrapAngle};
    m.stack = {kRelativePermittivity, 50e-6,
               kRelativePermittivity, 50e-6,
               kElectrodeWidth, kFrictionCoefficient};
    return m;
}

/// Reference test rig with the published sampling rate; groove radius is
/// synthetic.
inline RigConfig reference_rig(double mass = kMasses[0]) {
    RigConfig rig;
    rig.groove_radius = 0.008;
    rig.mass = mass;
    rig.sampling_hz = kSamplingHz;
    return rig;
}

/// Reference finger joint. Electrode width and wrap angle are published;
/// the core geometry, films, spring, and lever arm are synthetic.
inline FingerConfig reference_finger() {
    FingerConfig c;
    c.mechanism.helix = {0.005, 0.008, kFingerWrapAngle};
    c.mechanism.stack = {kRelativePermittivity, 50e-6,
                         kRelativePermittivity, 50e-6,
                         kFingerElectrodeWidth, kFrictionCoefficient};
    c.spring_k = 300.0;       // N/m
    c.pre_extension = 0.005;  // m
    c.core_radius = 0.008;    // m
    c.fingertip_lever = 0.060;  // m
    return c;
}

inline std::vector<double> finger_voltage_grid() { return {0.0, 1000.0, 2000.0, 3000.0}; }

inline std::vector<double> finger_load_grid() {
    return {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
}

}  // namespace hwselj::specimen
