#pragma once

/// Scenario files: a JSON document listing the element train, the input
/// states, and run options.
///
///   {
///     "elements": [
///       {"kind": "absorber", "axis": [0, 0, 1], "alpha": 1.0, "alpha0": 0.0},
///       {"kind": "retarder", "axis": {"two_chi_deg": 0, "two_psi_deg": 90},
///        "delta_deg": 90}
///     ],
///     "inputs": [[0, 1, 0]],
///     "options": {"trace_samples": 64, "wilson_steps": 4096,
///                 "complete_closure": false}
///   }
///
/// Angles in files are degrees; the library works in radians internally.
/// Axes may be Cartesian Stokes triples or polarization-ellipse angles
/// (2*chi = latitude, 2*psi = longitude).  Slightly non-unit axes are
/// normalized with a warning; zero axes are errors.  Validation messages
/// name the offending path and field.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sim.hpp"

namespace dichro {

constexpr double pi = 3.14159265358979323846;

inline double deg_to_rad(double d) { return d * pi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / pi; }

namespace detail {

[[noreturn]] inline void scenario_fail(const std::string& where, const std::string& what) {
    throw std::runtime_error(where + ": " + what);
}

inline double get_number(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) scenario_fail(where, "expected a number");
    return j.get<double>();
}

inline PoincarePoint parse_axis(const nlohmann::json& j, const std::string& where) {
    Vec3 v;
    if (j.is_array()) {
        if (j.size() != 3) scenario_fail(where, "expected three components");
        v = {get_number(j[0], where + "[0]"), get_number(j[1], where + "[1]"),
             get_number(j[2], where + "[2]")};
    } else if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "two_chi_deg" && it.key() != "two_psi_deg")
                scenario_fail(where + "." + it.key(), "unknown field");
        if (!j.contains("two_chi_deg") || !j.contains("two_psi_deg"))
            scenario_fail(where, "need both two_chi_deg and two_psi_deg");
        double two_chi = deg_to_rad(get_number(j["two_chi_deg"], where + ".two_chi_deg"));
        double two_psi = deg_to_rad(get_number(j["two_psi_deg"], where + ".two_psi_deg"));
        v = {std::cos(two_chi) * std::cos(two_psi), std::cos(two_chi) * std::sin(two_psi),
             std::sin(two_chi)};
    } else {
        scenario_fail(where, "expected a Stokes triple or ellipse angles");
    }
    double n = norm(v);
    if (n == 0.0) scenario_fail(where, "axis must be nonzero");
    if (std::abs(n - 1.0) > 1e-6)
        std::cerr << "warning: " << where << ": axis is not unit (norm " << n
                  << "), normalizing\n";
    return PoincarePoint::normalized(v);
}

inline Element parse_element(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) scenario_fail(where, "expected an object");
    if (!j.contains("kind") || !j["kind"].is_string()) scenario_fail(where + ".kind", "missing");
    std::string kind = j["kind"].get<std::string>();
    if (!j.contains("axis")) scenario_fail(where + ".axis", "missing");
    PoincarePoint axis = parse_axis(j["axis"], where + ".axis");

    if (kind == "absorber") {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "kind" && it.key() != "axis" && it.key() != "alpha" &&
                it.key() != "alpha0")
                scenario_fail(where + "." + it.key(), "unknown field");
        if (!j.contains("alpha")) scenario_fail(where + ".alpha", "missing");
        double alpha = get_number(j["alpha"], where + ".alpha");
        double alpha0 = j.contains("alpha0") ? get_number(j["alpha0"], where + ".alpha0") : 0.0;
        try {
            return AbsorberSpec(axis, alpha, alpha0);
        } catch (const std::domain_error& e) {
            scenario_fail(where, e.what());
        }
    }
    if (kind == "retarder") {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "kind" && it.key() != "axis" && it.key() != "delta_deg")
                scenario_fail(where + "." + it.key(), "unknown field");
        if (!j.contains("delta_deg")) scenario_fail(where + ".delta_deg", "missing");
        return RetarderSpec(axis, deg_to_rad(get_number(j["delta_deg"], where + ".delta_deg")));
    }
    scenario_fail(where + ".kind", "must be \"absorber\" or \"retarder\"");
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& doc, const std::string& name) {
    if (!doc.is_object()) detail::scenario_fail(name, "expected a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "elements" && it.key() != "inputs" && it.key() != "options")
            detail::scenario_fail(name + "." + it.key(), "unknown field");

    Scenario s;
    if (!doc.contains("elements") || !doc["elements"].is_array() || doc["elements"].empty())
        detail::scenario_fail(name + ".elements", "need a non-empty array");
    for (std::size_t k = 0; k < doc["elements"].size(); ++k) {
        std::ostringstream w;
        w << name << ".elements[" << k << "]";
        s.elements.push_back(detail::parse_element(doc["elements"][k], w.str()));
    }

    if (doc.contains("inputs")) {
        if (!doc["inputs"].is_array()) detail::scenario_fail(name + ".inputs", "expected an array");
        for (std::size_t k = 0; k < doc["inputs"].size(); ++k) {
            std::ostringstream w;
            w << name << ".inputs[" << k << "]";
            s.inputs.push_back(detail::parse_axis(doc["inputs"][k], w.str()));
        }
    }

    if (doc.contains("options")) {
        const nlohmann::json& o = doc["options"];
        if (!o.is_object()) detail::scenario_fail(name + ".options", "expected an object");
        for (auto it = o.begin(); it != o.end(); ++it) {
            const std::string& key = it.key();
            if (key == "trace_samples") {
                if (!it->is_number_integer() || it->get<int>() < 2)
                    detail::scenario_fail(name + ".options.trace_samples", "expected an integer >= 2");
                s.options.trace_samples = it->get<int>();
            } else if (key == "wilson_steps") {
                if (!it->is_number_integer() || it->get<int>() < 1)
                    detail::scenario_fail(name + ".options.wilson_steps", "expected an integer >= 1");
                s.options.wilson_steps = it->get<int>();
            } else if (key == "complete_closure") {
                if (!it->is_boolean())
                    detail::scenario_fail(name + ".options.complete_closure", "expected a boolean");
                s.options.complete_closure = it->get<bool>();
            } else {
                detail::scenario_fail(name + ".options." + key, "unknown field");
            }
        }
    }
    return s;
}

inline Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open scenario file");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return parse_scenario(doc, path);
}

}  // namespace dichro
