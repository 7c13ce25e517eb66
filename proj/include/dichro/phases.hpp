#pragma once

/// Closed absorber sequences and the geometric data attached to them: the
/// net rotation of the Poincare sphere, the two fixed poles orthogonal to
/// the plane of the axes, the geodesic triangle a pole traces, its signed
/// solid angle, and the Pancharatnam phases of the two poles.  For a closed
/// triple the rotation angle equals the traced solid angle and the pole
/// phases are equal and opposite.

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "jones.hpp"
#include "lorentz.hpp"

namespace dichro {

/// A sequence of absorbers whose combined action fixes the rest frame,
/// i.e. whose net effect on the sphere is a pure rotation.
struct ClosedSequence {
    std::vector<AbsorberSpec> elements;
    JonesMatrix product_jones;      // later elements multiply from the left
    LorentzMatrix product_lorentz;  // image of the product under the covering map

    static ClosedSequence make(std::vector<AbsorberSpec> els, double tol = 1e-8) {
        if (els.empty()) throw std::domain_error("ClosedSequence: no elements");
        JonesMatrix jm = JonesMatrix::identity();
        LorentzMatrix lm = LorentzMatrix::identity();
        for (const AbsorberSpec& a : els) {
            jm = absorber_matrix(a) * jm;
            lm = lorentz_of_jones(absorber_matrix(a)) * lm;
        }
        if (!is_closed(lm, FourVelocity::rest(), tol)) {
            std::ostringstream os;
            os << "ClosedSequence: product does not close (residual rapidity "
               << residual_rapidity(lm) << ")";
            throw std::domain_error(os.str());
        }
        LorentzMatrix from_jones = lorentz_of_jones(jm);
        if (!(frobenius(from_jones.m - lm.m) <= 1e-8 * std::max(1.0, frobenius(lm.m))))
            throw std::runtime_error("ClosedSequence: covering-map consistency check failed");
        return {std::move(els), jm, lm};
    }

    double total_alpha0() const {
        double s = 0.0;
        for (const AbsorberSpec& a : elements) s += a.alpha0;
        return s;
    }
};

/// The unique third absorber closing the product of two, found by polar
/// decomposition: the closing element inverts the boost part, so its axis
/// is opposite the spatial direction of the drifted rest frame and its
/// relative absorption is that drift's rapidity.  The third axis always
/// lies in the plane of the first two (when those are distinct).
inline ClosedSequence close_sequence(const AbsorberSpec& a1, const AbsorberSpec& a2,
                                     double tol = 1e-8) {
    LorentzMatrix prod = lorentz_of_jones(absorber_matrix(a2)) * lorentz_of_jones(absorber_matrix(a1));
    Vec4 v = prod.m.apply(FourVelocity::rest().u);
    double alpha3 = std::acosh(std::max(1.0, v.t));
    PoincarePoint axis3 =
        norm(v.spatial()) > 1e-14 ? PoincarePoint::normalized(-v.spatial()) : a1.axis;
    return ClosedSequence::make({a1, a2, AbsorberSpec(axis3, alpha3)}, tol);
}

/// Completes a sequence of absorbers with one closing element (no-op if the
/// product is already closed to machine precision).
inline std::vector<AbsorberSpec> complete_sequence(std::vector<AbsorberSpec> els) {
    if (els.empty()) throw std::domain_error("complete_sequence: no elements");
    LorentzMatrix prod = LorentzMatrix::identity();
    for (const AbsorberSpec& a : els) prod = lorentz_of_jones(absorber_matrix(a)) * prod;
    Vec4 v = prod.m.apply(FourVelocity::rest().u);
    // Gate on the Euclidean defect: acosh amplifies rounding in v.t to
    // ~sqrt(eps), which would append a spurious ~1e-8 element to an
    // already-closed train.
    if (euclid_norm(v - FourVelocity::rest().u) > 1e-9)
        els.emplace_back(PoincarePoint::normalized(-v.spatial()), std::acosh(std::max(1.0, v.t)));
    return els;
}

/// The two poles orthogonal to the plane spanned by the element axes; every
/// element fixes both, so the whole sequence does.  Returns nothing when
/// the axes are collinear (the invariant set is then a great circle).
inline std::optional<std::pair<PoincarePoint, PoincarePoint>> fixed_points(
    const ClosedSequence& seq, double tol = 1e-9) {
    double best = 0.0;
    Vec3 bestcross;
    std::size_t n = seq.elements.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec3 c = cross(seq.elements[i].axis.s, seq.elements[j].axis.s);
            if (norm(c) > best) {
                best = norm(c);
                bestcross = c;
            }
        }
    if (best < tol) return std::nullopt;
    PoincarePoint pn = PoincarePoint::normalized(bestcross);
    return std::make_pair(pn, pn.antipode());
}

/// The closed geodesic polygon traced by a fixed point as the sequence is
/// applied element by element.  Each leg runs along the great circle
/// through the moving point and the element's axis (fractional absorbers
/// slide the point monotonically toward the axis), sampled at
/// samples_per_leg points with the leg's endpoint owned by the next leg.
inline SphericalPolyline trace_fixed_point_triangle(const ClosedSequence& seq,
                                                    const PoincarePoint& p0,
                                                    int samples_per_leg = 1, double tol = 1e-8) {
    if (samples_per_leg < 1)
        throw std::domain_error("trace_fixed_point_triangle: samples_per_leg must be >= 1");
    if (sphere_distance(induced_sphere_map(seq.product_jones, p0), p0) > tol)
        throw std::domain_error("trace_fixed_point_triangle: p0 is not fixed by the sequence");

    SphericalPolyline out;
    out.closed = true;
    PoincarePoint p = p0;
    for (const AbsorberSpec& a : seq.elements) {
        for (int j = 0; j < samples_per_leg; ++j) {
            double t = static_cast<double>(j) / samples_per_leg;
            AbsorberSpec frac(a.axis, t * a.alpha, t * a.alpha0);
            out.vertices.push_back(induced_sphere_map(absorber_matrix(frac), p));
        }
        p = induced_sphere_map(absorber_matrix(a), p);
    }
    return out;
}

/// Pancharatnam phase of a cyclic chain of states: the argument of the
/// product of successive overlaps <psi_k|psi_k+1> around the cycle, in
/// (-pi, pi].  Independent of the representatives chosen.  For a geodesic
/// polygon this equals half the enclosed signed solid angle.
inline double pancharatnam_phase(const std::vector<PoincarePoint>& states) {
    if (states.size() < 2) throw std::domain_error("pancharatnam_phase: need at least two states");
    cdouble prod(1.0, 0.0);
    std::size_t n = states.size();
    for (std::size_t k = 0; k < n; ++k) {
        cdouble ov = inner(jones_of_poincare(states[k]), jones_of_poincare(states[(k + 1) % n]));
        if (std::abs(ov) < 1e-12)
            throw std::domain_error("pancharatnam_phase: consecutive states are orthogonal");
        prod *= ov;
    }
    return std::arg(prod);
}

struct PhaseReport {
    RotationResult rotation;      // net rotation of the closed sequence
    bool degenerate = false;      // no common fixed-point pair: collinear or
                                  // nonplanar axes, or an identity sequence
    PoincarePoint pole_n, pole_s; // the fixed poles (meaningless if degenerate)
    double omega = 0.0;           // signed solid angle traced by pole_n
    double phase_n = 0.0;         // Pancharatnam phase of pole_n's triangle
    double phase_s = 0.0;         // ... of pole_s's triangle: always -phase_n
    SphericalPolyline triangle_n, triangle_s;
};

/// Full geometric-phase report of a closed sequence.  Cross-checks the
/// lemmas the construction guarantees: the rotation axis is the pole axis,
/// the rotation angle is the traced solid angle (up to sign), and the two
/// pole phases are equal and opposite.
inline PhaseReport thomas_report(const ClosedSequence& seq, int samples_per_leg = 1) {
    PhaseReport rep;
    PolarDecomposition pd = polar_decompose(seq.product_lorentz);
    rep.rotation = rotation_axis_angle(pd.rotation);

    auto fp = fixed_points(seq);
    double max_alpha = 0.0;
    for (const AbsorberSpec& a : seq.elements) max_alpha = std::max(max_alpha, a.alpha);
    // The construction needs a point every element fixes.  fixed_points
    // proposes the pole of the axes' common plane; when the axes are not
    // coplanar (possible for 4+ elements) no such point exists and only
    // the rotation is reportable.
    if (!fp || max_alpha < 1e-15 ||
        sphere_distance(induced_sphere_map(seq.product_jones, fp->first), fp->first) > 1e-8) {
        rep.degenerate = true;
        return rep;
    }
    rep.pole_n = fp->first;
    rep.pole_s = fp->second;
    rep.triangle_n = trace_fixed_point_triangle(seq, rep.pole_n, samples_per_leg);
    rep.triangle_s = trace_fixed_point_triangle(seq, rep.pole_s, samples_per_leg);

    // Corner polygons (one vertex per element) carry the geometry.
    auto corners = [&](const SphericalPolyline& tri) {
        SphericalPolyline c;
        c.closed = true;
        for (std::size_t k = 0; k < tri.vertices.size(); k += samples_per_leg)
            c.vertices.push_back(tri.vertices[k]);
        return c;
    };
    SphericalPolyline corners_n = corners(rep.triangle_n);
    rep.omega = solid_angle_polyline(corners_n);
    rep.phase_n = pancharatnam_phase(corners_n.vertices);
    rep.phase_s = pancharatnam_phase(corners(rep.triangle_s).vertices);

    if (!(std::abs(rep.phase_n + rep.phase_s) <= 1e-8))
        throw std::runtime_error("thomas_report: pole phases are not equal and opposite");
    double omega_angle = std::min(std::abs(rep.omega), 2.0 * 3.141592653589793238 - std::abs(rep.omega));
    if (!(std::abs(rep.rotation.angle - omega_angle) <= 1e-8))
        throw std::runtime_error("thomas_report: rotation angle does not match the solid angle");
    if (rep.rotation.angle > 1e-9 &&
        !(norm(cross(rep.rotation.axis.s, rep.pole_n.s)) <= 1e-8))
        throw std::runtime_error("thomas_report: rotation axis is not the pole axis");
    return rep;
}

/// Net rotation of a closed sequence of M absorbers given directly by the
/// exact operator product.  Throws (naming the residual rapidity) if the
/// product is not closed.
inline RotationResult m_element_rotation(const std::vector<AbsorberSpec>& els, double tol = 1e-8) {
    if (els.empty()) throw std::domain_error("m_element_rotation: no elements");
    LorentzMatrix prod = LorentzMatrix::identity();
    for (const AbsorberSpec& a : els) prod = lorentz_of_jones(absorber_matrix(a)) * prod;
    if (!is_closed(prod, FourVelocity::rest(), tol)) {
        std::ostringstream os;
        os << "m_element_rotation: product does not close (residual rapidity "
           << residual_rapidity(prod) << ")";
        throw std::domain_error(os.str());
    }
    PolarDecomposition pd = polar_decompose(prod);
    return rotation_axis_angle(pd.rotation);
}

/// Finds the common relative absorption at which the closed triple built
/// on two given axes produces a prescribed net rotation angle, by growing
/// a bracket and bisecting.  The angle is monotone in alpha for separated
/// axes over the range of interest.
inline double solve_equal_rapidity_for_angle(const PoincarePoint& axis1, const PoincarePoint& axis2,
                                             double target_angle) {
    auto angle_of = [&](double alpha) {
        ClosedSequence seq = close_sequence(AbsorberSpec(axis1, alpha), AbsorberSpec(axis2, alpha));
        return rotation_axis_angle(polar_decompose(seq.product_lorentz).rotation).angle;
    };
    double lo = 0.0, hi = 1.0;
    while (angle_of(hi) < target_angle) {
        hi *= 2.0;
        if (hi > 64.0)
            throw std::domain_error("solve_equal_rapidity_for_angle: target angle not reachable");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        (angle_of(mid) < target_angle ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace dichro
