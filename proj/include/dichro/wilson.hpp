#pragma once

/// Path-ordered integration of the rotation-valued gauge field that lives
/// on the unit hyperboloid: transporting a frame around a closed loop of
/// pure boosts yields a net spatial rotation, obtainable either as the
/// ordered product of the boosts themselves (exact_loop_rotation) or as
/// the Wilson loop of the gauge field along the geodesic polygon
/// (wilson_loop).  The two agree to the integrator's accuracy.

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "jones.hpp"
#include "linalg.hpp"
#include "lorentz.hpp"

namespace dichro {

/// An element of so(3): exactly antisymmetric by construction.
struct GaugeValue {
    Mat3 a;

    explicit GaugeValue(const Vec3& w) {
        // a v = w x v
        a(0, 1) = -w.z;
        a(1, 0) = w.z;
        a(0, 2) = w.y;
        a(2, 0) = -w.y;
        a(1, 2) = -w.x;
        a(2, 1) = w.x;
        assert(a(0, 0) == 0.0 && a(1, 1) == 0.0 && a(2, 2) == 0.0);
    }

    Vec3 axis_vector() const { return {a(2, 1), a(0, 2), a(1, 0)}; }
};

/// Rotation-valued connection evaluated on a tangent vector of H+:
///   A_ij = (u_i du_j - u_j du_i) / (1 + u0)
/// in plain spatial components.  The overall sign is pinned by the
/// small-loop holonomy tests against the exact boost product.
inline GaugeValue gauge_field(const FourVelocity& u, const Vec4& du) {
    double tangency = std::abs(minkowski(u.u, du));
    if (!(tangency <= 1e-9 * std::max(1.0, euclid_norm(u.u) * euclid_norm(du))))
        throw std::domain_error("gauge_field: du is not tangent to the hyperboloid at u");
    Vec3 us = u.u.spatial(), dus = du.spatial();
    // (u_i du_j - u_j du_i) is the antisymmetric matrix of us x dus.
    return GaugeValue(cross(us, dus) * (-1.0 / (1.0 + u.u.t)));
}

/// exp of an so(3) element by the Rodrigues formula; exactly orthogonal
/// up to rounding for any input size.
inline Mat3 so3_exp(const GaugeValue& g) {
    Vec3 w = g.axis_vector();
    double th = norm(w);
    double k1, k2;  // sin(th)/th and (1-cos(th))/th^2
    if (th < 1e-4) {
        double t2 = th * th;
        k1 = 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
        k2 = 0.5 * (1.0 - t2 / 12.0 * (1.0 - t2 / 30.0));
    } else {
        k1 = std::sin(th) / th;
        k2 = (1.0 - std::cos(th)) / (th * th);
    }
    return Mat3::identity() + g.a * k1 + (g.a * g.a) * k2;
}

/// Parallel transport along the geodesic from a to b, as the path-ordered
/// exponential of the gauge field with midpoint sampling (second order in
/// the step).  Later steps multiply from the left.
inline Mat3 wilson_segment(const FourVelocity& a, const FourVelocity& b, int steps) {
    if (steps < 1) throw std::domain_error("wilson_segment: need at least one step");
    HyperbolicGeodesic geo = hyperbolic_geodesic(a, b);
    Mat3 t = Mat3::identity();
    if (geo.zeta == 0.0) return t;
    double dt = 1.0 / steps;
    for (int k = 0; k < steps; ++k) {
        double tm = (k + 0.5) * dt;
        FourVelocity u(geo.at(tm));
        GaugeValue g = gauge_field(u, geo.velocity(tm));
        t = so3_exp(GaugeValue(g.axis_vector() * dt)) * t;
    }
    return t;
}

/// Wilson loop of the gauge field around a closed piecewise-geodesic loop.
inline RotationResult wilson_loop(const HyperbolicPolyline& loop, int steps_per_segment = 4096) {
    if (!loop.closed || loop.vertices.size() < 2)
        throw std::domain_error("wilson_loop: need a closed polyline with >= 2 vertices");
    std::size_t n = loop.vertices.size();
    Mat3 t = Mat3::identity();
    for (std::size_t k = 0; k < n; ++k)
        t = wilson_segment(loop.vertices[k], loop.vertices[(k + 1) % n], steps_per_segment) * t;
    return axis_angle_from_rotation3(t);
}

/// Holonomy of a closed loop from the exact ordered product of the pure
/// boosts between consecutive vertices, conjugated to the rest frame of
/// the start vertex so it is a genuine spatial rotation.  Throws if the
/// product fails to close on the start vertex within tol.
inline RotationResult exact_loop_rotation(const HyperbolicPolyline& loop, double tol = 1e-8) {
    if (!loop.closed || loop.vertices.size() < 2)
        throw std::domain_error("exact_loop_rotation: need a closed polyline with >= 2 vertices");
    std::size_t n = loop.vertices.size();
    LorentzMatrix prod = LorentzMatrix::identity();
    for (std::size_t k = 0; k < n; ++k)
        prod = pure_boost_between(loop.vertices[k], loop.vertices[(k + 1) % n]) * prod;

    const FourVelocity& start = loop.vertices.front();
    if (!is_closed(prod, start, tol))
        throw std::runtime_error("exact_loop_rotation: boost product does not close on the loop");

    LorentzMatrix g = pure_boost_between(FourVelocity::rest(), start);
    LorentzMatrix ginv{eta() * g.m * eta()};
    LorentzMatrix conj = ginv * prod * g;
    PolarDecomposition pd = polar_decompose(conj);
    return rotation_axis_angle(pd.rotation);
}

/// Four-velocities of the successive frames reached by an absorber train:
/// u_0 is the rest velocity and u_k = L_1 L_2 ... L_k (rest), i.e. each
/// element boosts in the frame already reached, so leg k of the polygon
/// is a geodesic of length alpha_k launched along the transported image
/// of axis_k.  For a train whose operator product closes, this polygon
/// closes, and its holonomy (wilson_loop / exact_loop_rotation) is the
/// frame-transport rotation: the INVERSE of the rotation the train
/// applies to states (same angle, opposite axis).  Traverse the loop
/// with reversed() to get the state rotation itself.
inline HyperbolicPolyline velocity_loop(const std::vector<AbsorberSpec>& elements) {
    HyperbolicPolyline loop;
    loop.closed = true;
    LorentzMatrix g = LorentzMatrix::identity();
    loop.vertices.emplace_back(FourVelocity::rest());
    for (std::size_t k = 0; k + 1 < elements.size(); ++k) {
        g = g * lorentz_of_jones(absorber_matrix(elements[k]));
        loop.vertices.emplace_back(apply_to_velocity(g, FourVelocity::rest()));
    }
    return loop;
}

}  // namespace dichro
