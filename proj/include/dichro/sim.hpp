#pragma once

/// Scenario runner: pushes a set of input polarization states through an
/// element train (absorbers and retarders), recording the Poincare-sphere
/// trajectory and relative intensity at fractional depths of every element,
/// and reports the geometry of the net operator (closure, rotation, and for
/// closed all-absorber trains the full geometric-phase report).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "jones.hpp"
#include "lorentz.hpp"
#include "phases.hpp"

namespace dichro {

using Element = std::variant<AbsorberSpec, RetarderSpec>;

struct ScenarioOptions {
    int trace_samples = 64;       // rows per (input, element), >= 2
    int wilson_steps = 4096;      // integrator steps per geodesic segment
    bool complete_closure = false;  // append the closing absorber before running
    double tolerance = 1e-8;      // closure tolerance
};

struct Scenario {
    std::vector<Element> elements;
    std::vector<PoincarePoint> inputs;
    ScenarioOptions options;
};

struct TrajectoryRecord {
    int state_index;    // which input
    int element_index;  // which element
    double t;           // fractional depth within the element, in [0, 1]
    PoincarePoint point;
    double intensity;   // relative to the input state at 1
};

struct ScenarioResult {
    std::vector<Element> elements;  // as run (closure may append one)
    std::vector<TrajectoryRecord> records;
    bool closed = false;
    double residual = 0.0;          // rapidity of the net boost part
    RotationResult rotation;        // rotation part of the net operator
    double total_alpha0 = 0.0;      // summed overall absorption (nepers)
    std::optional<PhaseReport> phase;  // full report for closed all-absorber runs
};

inline JonesMatrix element_matrix(const Element& e) {
    if (std::holds_alternative<AbsorberSpec>(e)) return absorber_matrix(std::get<AbsorberSpec>(e));
    return retarder_matrix(std::get<RetarderSpec>(e));
}

/// The element at fractional depth t: same axis, scaled strength.  Partial
/// applications compose into the whole (the elements form semigroups in t).
inline JonesMatrix fractional_element_matrix(const Element& e, double t) {
    if (std::holds_alternative<AbsorberSpec>(e)) {
        const AbsorberSpec& a = std::get<AbsorberSpec>(e);
        return absorber_matrix(AbsorberSpec(a.axis, t * a.alpha, t * a.alpha0));
    }
    const RetarderSpec& r = std::get<RetarderSpec>(e);
    return retarder_matrix(RetarderSpec(r.axis, t * r.delta));
}

inline ScenarioResult run_scenario(const Scenario& s) {
    if (s.elements.empty()) throw std::domain_error("run_scenario: no elements");
    if (s.options.trace_samples < 2)
        throw std::domain_error("run_scenario: trace_samples must be >= 2");

    ScenarioResult res;
    res.elements = s.elements;
    if (s.options.complete_closure) {
        LorentzMatrix prod = LorentzMatrix::identity();
        for (const Element& e : res.elements) prod = lorentz_of_jones(element_matrix(e)) * prod;
        Vec4 v = prod.m.apply(FourVelocity::rest().u);
        // Euclidean defect, not rapidity: acosh amplifies rounding to ~sqrt(eps).
        if (euclid_norm(v - FourVelocity::rest().u) > 1e-9)
            res.elements.emplace_back(AbsorberSpec(PoincarePoint::normalized(-v.spatial()),
                                                   std::acosh(std::max(1.0, v.t))));
    }

    // Trajectories: trace_samples rows per (input, element), sampling the
    // fractional depth t = j/(trace_samples - 1) so row t = 1 is exactly
    // the one-shot application of the element.
    for (std::size_t i = 0; i < s.inputs.size(); ++i) {
        JonesVector v = jones_of_poincare(s.inputs[i]);  // unit intensity
        for (std::size_t e = 0; e < res.elements.size(); ++e) {
            for (int j = 0; j < s.options.trace_samples; ++j) {
                double t = static_cast<double>(j) / (s.options.trace_samples - 1);
                JonesVector w = fractional_element_matrix(res.elements[e], t).apply(v);
                res.records.push_back({static_cast<int>(i), static_cast<int>(e), t,
                                       poincare_of_jones(w), w.intensity()});
            }
            v = element_matrix(res.elements[e]).apply(v);
        }
    }

    LorentzMatrix prod = LorentzMatrix::identity();
    bool all_absorbers = true;
    for (const Element& e : res.elements) {
        prod = lorentz_of_jones(element_matrix(e)) * prod;
        if (std::holds_alternative<AbsorberSpec>(e)) {
            res.total_alpha0 += std::get<AbsorberSpec>(e).alpha0;
        } else {
            all_absorbers = false;
        }
    }
    res.residual = residual_rapidity(prod);
    res.closed = is_closed(prod, FourVelocity::rest(), s.options.tolerance);
    res.rotation = rotation_axis_angle(polar_decompose(prod).rotation);

    if (res.closed && all_absorbers) {
        std::vector<AbsorberSpec> els;
        for (const Element& e : res.elements) els.push_back(std::get<AbsorberSpec>(e));
        res.phase = thomas_report(ClosedSequence::make(els, s.options.tolerance),
                                  std::max(1, s.options.trace_samples - 1));
    }
    return res;
}

}  // namespace dichro
