#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <system_error>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hwselj/electrostatics.hpp"
#include "hwselj/errors.hpp"
#include "hwselj/experiment.hpp"
#include "hwselj/finger.hpp"
#include "hwselj/geometry.hpp"
#include "hwselj/specimen.hpp"
#include "hwselj/tension.hpp"

namespace hwselj {

/// Parsed run configuration. Sections are optional at parse time; each
/// command demands the ones it needs through the accessors below, which
/// also run the domain validation.
struct RunConfig {
    std::optional<HelixGeometry> helix;
    std::optional<DielectricStack> stack;
    bool allow_limit_geometry = false;
    std::optional<DriveState> drive;
    std::optional<RigConfig> rig;
    std::optional<FingerConfig> finger;  // mechanism part filled on access

    std::vector<double> voltages;  // V
    std::vector<double> angles;    // rad
    std::vector<double> loads;     // N

    std::string output_path;    // empty = stdout
    std::string output_format;  // "csv" or "text"; empty = command default

    const HelixGeometry& geometry() const {
        if (!helix) throw ConfigError("helix", "section required by this command");
        helix->validate();
        return *helix;
    }

    const DielectricStack& dielectric() const {
        if (!stack) throw ConfigError("stack", "section required by this command");
        stack->validate();
        return *stack;
    }

    MechanismSpec mechanism() const {
        MechanismSpec m{geometry(), dielectric(), allow_limit_geometry};
        m.validate();
        return m;
    }

    DriveState drive_state() const {
        if (!drive) throw ConfigError("drive", "section required by this command");
        drive->validate();
        return *drive;
    }

    RigConfig rig_config() const {
        if (!rig) throw ConfigError("rig", "section required by this command");
        rig->validate();
        return *rig;
    }

    FingerConfig finger_config() const {
        if (!finger) throw ConfigError("finger", "section required by this command");
        finger->validate();
        return *finger;
    }
};

namespace detail {

enum class Dimension {
    kNone,  // plain number, suffix forbidden
    kLength,
    kAngle,
    kVoltage,
    kForce,
    kMass,
    kAcceleration,
    kFrequency,
    kStiffness,
    kPermittivity,
};

struct UnitEntry {
    const char* suffix;
    double factor;
};

inline const std::vector<UnitEntry>& unit_table(Dimension dim) {
    static const std::vector<UnitEntry> kLengthUnits = {
        {"m", 1.0}, {"mm", 1e-3}, {"cm", 1e-2}, {"um", 1e-6}};
    static const std::vector<UnitEntry> kAngleUnits = {
        {"rad", 1.0}, {"deg", std::numbers::pi / 180.0}};
    static const std::vector<UnitEntry> kVoltageUnits = {{"V", 1.0}, {"kV", 1e3}};
    static const std::vector<UnitEntry> kForceUnits = {{"N", 1.0}, {"mN", 1e-3}};
    static const std::vector<UnitEntry> kMassUnits = {{"kg", 1.0}, {"g", 1e-3}};
    static const std::vector<UnitEntry> kAccelUnits = {{"m/s2", 1.0}};
    static const std::vector<UnitEntry> kFreqUnits = {{"Hz", 1.0}};
    static const std::vector<UnitEntry> kStiffnessUnits = {{"N/m", 1.0}};
    static const std::vector<UnitEntry> kPermittivityUnits = {{"F/m", 1.0}};
    static const std::vector<UnitEntry> kNoUnits = {};
    switch (dim) {
        case Dimension::kLength: return kLengthUnits;
        case Dimension::kAngle: return kAngleUnits;
        case Dimension::kVoltage: return kVoltageUnits;
        case Dimension::kForce: return kForceUnits;
        case Dimension::kMass: return kMassUnits;
        case Dimension::kAcceleration: return kAccelUnits;
        case Dimension::kFrequency: return kFreqUnits;
        case Dimension::kStiffness: return kStiffnessUnits;
        case Dimension::kPermittivity: return kPermittivityUnits;
        case Dimension::kNone: return kNoUnits;
    }
    return kNoUnits;
}

inline std::string accepted_suffixes(Dimension dim) {
    std::string out;
    for (const auto& e : unit_table(dim)) {
        if (!out.empty()) out += ", ";
        out += e.suffix;
    }
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

/// Parses "<number> <suffix>" with the suffix mandatory for dimensioned
/// fields and forbidden for plain ones, yielding the SI value.
inline double parse_quantity(const std::string& raw, Dimension dim,
                             const std::string& field) {
    const std::string text = trim(raw);
    if (text.empty()) throw ConfigError(field, "empty value");

    double number = 0.0;
    const auto res =
        std::from_chars(text.data(), text.data() + text.size(), number);
    if (res.ec != std::errc() || res.ptr == text.data())
        throw ConfigError(field, "not a number: '" + text + "'");
    const std::string suffix = trim(text.substr(
        static_cast<std::size_t>(res.ptr - text.data())));

    if (dim == Dimension::kNone) {
        if (!suffix.empty())
            throw ConfigError(field, "dimensionless field takes no unit, got '" +
                                         suffix + "'");
        return number;
    }
    if (suffix.empty())
        throw ConfigError(field, "missing unit suffix (expected one of: " +
                                     accepted_suffixes(dim) + ")");
    for (const auto& e : unit_table(dim))
        if (suffix == e.suffix) return number * e.factor;
    throw ConfigError(field, "unknown unit '" + suffix + "' (expected one of: " +
                                 accepted_suffixes(dim) + ")");
}

inline std::vector<double> parse_list(const std::string& raw, Dimension dim,
                                      const std::string& field) {
    std::vector<double> out;
    std::size_t begin = 0;
    while (begin <= raw.size()) {
        const std::size_t comma = raw.find(',', begin);
        const std::string cell =
            raw.substr(begin, comma == std::string::npos ? std::string::npos
                                                         : comma - begin);
        out.push_back(parse_quantity(cell, dim, field));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    if (out.empty()) throw ConfigError(field, "empty list");
    return out;
}

inline bool parse_bool(const std::string& raw, const std::string& field) {
    const std::string text = trim(raw);
    if (text == "true") return true;
    if (text == "false") return false;
    throw ConfigError(field, "expected true or false, got '" + text + "'");
}

inline void apply_helix_key(HelixGeometry& h, const std::string& key,
                            const std::string& value, const std::string& field) {
    using D = Dimension;
    if (key == "radius") h.radius = parse_quantity(value, D::kLength, field);
    else if (key == "pitch") h.pitch = parse_quantity(value, D::kLength, field);
    else if (key == "total_angle")
        h.total_angle = parse_quantity(value, D::kAngle, field);
    else throw ConfigError(field, "unknown key");
}

inline void apply_stack_key(DielectricStack& s, const std::string& key,
                            const std::string& value, const std::string& field) {
    using D = Dimension;
    if (key == "eps_r1") s.eps_r1 = parse_quantity(value, D::kNone, field);
    else if (key == "eps_r2") s.eps_r2 = parse_quantity(value, D::kNone, field);
    else if (key == "thickness_1")
        s.thickness_1 = parse_quantity(value, D::kLength, field);
    else if (key == "thickness_2")
        s.thickness_2 = parse_quantity(value, D::kLength, field);
    else if (key == "electrode_width")
        s.electrode_width = parse_quantity(value, D::kLength, field);
    else if (key == "friction_mu")
        s.friction_mu = parse_quantity(value, D::kNone, field);
    else if (key == "eps0")
        s.eps0 = parse_quantity(value, D::kPermittivity, field);
    else throw ConfigError(field, "unknown key");
}

inline void apply_key(RunConfig& cfg, const std::string& section,
                      const std::string& key, const std::string& value) {
    const std::string field = section + "." + key;
    using D = Dimension;

    if (section == "helix") {
        auto& h = cfg.helix ? *cfg.helix : cfg.helix.emplace();
        apply_helix_key(h, key, value, field);
        return;
    }
    if (section == "stack") {
        auto& s = cfg.stack ? *cfg.stack : cfg.stack.emplace();
        apply_stack_key(s, key, value, field);
        return;
    }
    if (section == "mechanism") {
        if (key == "allow_limit_geometry")
            cfg.allow_limit_geometry = parse_bool(value, field);
        else throw ConfigError(field, "unknown key");
        return;
    }
    if (section == "drive") {
        auto& d = cfg.drive ? *cfg.drive : cfg.drive.emplace();
        if (key == "voltage") d.voltage = parse_quantity(value, D::kVoltage, field);
        else if (key == "preload")
            d.preload = parse_quantity(value, D::kForce, field);
        else throw ConfigError(field, "unknown key");
        return;
    }
    if (section == "rig") {
        auto& r = cfg.rig ? *cfg.rig : cfg.rig.emplace();
        if (key == "groove_radius")
            r.groove_radius = parse_quantity(value, D::kLength, field);
        else if (key == "mass") r.mass = parse_quantity(value, D::kMass, field);
        else if (key == "gravity")
            r.gravity = parse_quantity(value, D::kAcceleration, field);
        else if (key == "sampling_hz")
            r.sampling_hz = parse_quantity(value, D::kFrequency, field);
        else throw ConfigError(field, "unknown key");
        return;
    }
    if (section == "finger") {
        auto& f = cfg.finger ? *cfg.finger : cfg.finger.emplace();
        if (key == "spring_k")
            f.spring_k = parse_quantity(value, D::kStiffness, field);
        else if (key == "pre_extension")
            f.pre_extension = parse_quantity(value, D::kLength, field);
        else if (key == "core_radius")
            f.core_radius = parse_quantity(value, D::kLength, field);
        else if (key == "fingertip_lever")
            f.fingertip_lever = parse_quantity(value, D::kLength, field);
        else throw ConfigError(field, "unknown key");
        return;
    }
    // The finger is a self-contained device, so its wound mechanism lives in
    // nested sections rather than sharing the top-level [helix]/[stack].
    if (section == "finger.helix") {
        auto& f = cfg.finger ? *cfg.finger : cfg.finger.emplace();
        apply_helix_key(f.mechanism.helix, key, value, field);
        return;
    }
    if (section == "finger.stack") {
        auto& f = cfg.finger ? *cfg.finger : cfg.finger.emplace();
        apply_stack_key(f.mechanism.stack, key, value, field);
        return;
    }
    if (section == "finger.mechanism") {
        auto& f = cfg.finger ? *cfg.finger : cfg.finger.emplace();
        if (key == "allow_limit_geometry")
            f.mechanism.allow_limit_geometry = parse_bool(value, field);
        else throw ConfigError(field, "unknown key");
        return;
    }
    if (section == "sweep") {
        if (key == "voltages")
            cfg.voltages = parse_list(value, D::kVoltage, field);
        else if (key == "angles") cfg.angles = parse_list(value, D::kAngle, field);
        else if (key == "loads") cfg.loads = parse_list(value, D::kForce, field);
        else throw ConfigError(field, "unknown key");
        return;
    }
    if (section == "output") {
        if (key == "path") cfg.output_path = trim(value);
        else if (key == "format") {
            const std::string fmt = trim(value);
            if (fmt != "csv" && fmt != "text")
                throw ConfigError(field, "expected csv or text, got '" + fmt + "'");
            cfg.output_format = fmt;
        } else throw ConfigError(field, "unknown key");
        return;
    }
    throw ConfigError(section, "unknown section");
}

}  // namespace detail

/// Parses a sectioned key-value config on top of `base` (later keys win,
/// so fixture defaults can be overridden file-by-file). Lines are
/// `[section]`, `key = value`, blank, or comments starting with # or ;.
/// Dimensioned values require a unit suffix.
inline RunConfig parse_run_config(std::istream& in, RunConfig base = {}) {
    RunConfig cfg = std::move(base);
    std::string line;
    std::string section;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
            line.pop_back();
        const std::string text = detail::trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ParseError(line_no, "unterminated section header: " + text);
            section = detail::trim(text.substr(1, text.size() - 2));
            if (section.empty())
                throw ParseError(line_no, "empty section name");
            continue;
        }
        const std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected key = value, got: " + text);
        if (section.empty())
            throw ParseError(line_no, "key outside any [section]");
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = text.substr(eq + 1);
        if (key.empty()) throw ParseError(line_no, "empty key");
        if (!seen.insert(section + "." + key).second)
            throw ConfigError(section + "." + key, "duplicate key");
        detail::apply_key(cfg, section, key, value);
    }
    return cfg;
}

inline RunConfig load_run_config(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    return parse_run_config(in, std::move(base));
}

/// Base configuration materializing the published specimen constants and
/// excitation grid, with the synthetic reference dimensions filled in so
/// every command can run against it (user config keys override).
inline RunConfig paper_fixtures_config() {
    RunConfig cfg;
    const MechanismSpec m = specimen::reference_mechanism();
    cfg.helix = m.helix;
    cfg.stack = m.stack;
    cfg.rig = specimen::reference_rig();
    // Preload as published (245.25 mN), not recomputed from the rig mass.
    cfg.drive = DriveState{3000.0, 0.24525};
    cfg.finger = specimen::reference_finger();
    cfg.voltages = specimen::voltage_grid();
    cfg.loads = specimen::finger_load_grid();
    return cfg;
}

}  // namespace hwselj
