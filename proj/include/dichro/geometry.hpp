#pragma once

/// Geodesic geometry on the unit sphere and on the unit hyperboloid H+:
/// great-circle and hyperbolic-geodesic interpolation, signed solid angles
/// of geodesic polygons, and coplanarity of hyperboloid loops.
///
/// Solid angles are signed: positive for counterclockwise traversal viewed
/// from outside the sphere, and reported in (-2 pi, 2 pi] per simple loop.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "jones.hpp"
#include "linalg.hpp"
#include "lorentz.hpp"

namespace dichro {

struct SphericalPolyline {
    std::vector<PoincarePoint> vertices;
    bool closed = false;

    /// Checks that every segment has a unique great circle (no consecutive
    /// antipodal pair; for a closed polyline this includes the wrap-around).
    void validate() const {
        if (vertices.empty()) throw std::domain_error("SphericalPolyline: no vertices");
        std::size_t n = vertices.size();
        std::size_t last = closed ? n : n - 1;
        for (std::size_t k = 0; k < last; ++k)
            if (norm(vertices[k].s + vertices[(k + 1) % n].s) < 1e-9)
                throw std::domain_error("SphericalPolyline: consecutive vertices are antipodal");
    }
};

struct HyperbolicPolyline {
    std::vector<FourVelocity> vertices;
    bool closed = false;
};

/// Opposite traversal of a polyline.  Closed polylines keep their base
/// vertex (reversal about the start), open ones swap endpoints; either
/// way holonomies and signed areas over the result are inverted.
template <class Polyline>
inline Polyline reversed(const Polyline& p) {
    Polyline out = p;
    if (p.closed && p.vertices.size() > 1)
        std::reverse(out.vertices.begin() + 1, out.vertices.end());
    else
        std::reverse(out.vertices.begin(), out.vertices.end());
    return out;
}

/// Point on the great-circle arc from a to b at parameter t (0 -> a, 1 -> b).
inline PoincarePoint great_circle_point(const PoincarePoint& a, const PoincarePoint& b, double t) {
    double ang = angle_between(a.s, b.s);
    if (!(ang < 3.141592653589793 - 1e-9))
        throw std::domain_error("great_circle_point: endpoints are antipodal, arc is not unique");
    if (ang < 1e-12) return a;
    double s = std::sin(ang);
    return PoincarePoint(a.s * (std::sin((1.0 - t) * ang) / s) + b.s * (std::sin(t * ang) / s));
}

namespace detail {

inline bool lex_less(const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

/// Signed solid angle of one geodesic triangle via the tangent half-angle
/// form, which is stable for thin triangles.  A coplanar-with-the-origin
/// (collinear) triangle yields exactly zero.
inline double vo_triangle(const Vec3& a, const Vec3& b, const Vec3& c) {
    double num = dot(a, cross(b, c));
    if (std::abs(num) < 1e-14) return 0.0;
    double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    return 2.0 * std::atan2(num, den);
}

/// Reduce a solid angle modulo 4 pi into (-2 pi, 2 pi].
inline double reduce_solid_angle(double omega) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    double r = std::remainder(omega, 2.0 * two_pi);
    if (r <= -two_pi) r += 2.0 * two_pi;
    return r;
}

}  // namespace detail

/// Signed solid angle subtended by the geodesic triangle a -> b -> c -> a.
/// The cyclic order is canonicalized internally so that relabeling the same
/// cycle gives bit-identical results and reversal flips the sign exactly.
inline double solid_angle_triangle(const PoincarePoint& a, const PoincarePoint& b,
                                   const PoincarePoint& c) {
    const Vec3* v[3] = {&a.s, &b.s, &c.s};
    int m = 0;
    if (detail::lex_less(*v[1], *v[m])) m = 1;
    if (detail::lex_less(*v[2], *v[m])) m = 2;
    const Vec3& nxt = *v[(m + 1) % 3];
    const Vec3& prv = *v[(m + 2) % 3];
    if (detail::lex_less(prv, nxt)) return -detail::vo_triangle(*v[m], prv, nxt);
    return detail::vo_triangle(*v[m], nxt, prv);
}

/// Signed solid angle enclosed by a closed spherical polyline, computed as
/// a fan of signed triangle solid angles.  The fan root is the first vertex
/// of the canonicalized cycle when that is numerically sound; for polygons
/// that are degenerate seen from their own vertices (e.g. lying on one
/// great circle) a fallback center off the polygon is used -- the choice
/// only moves the sum by multiples of 4 pi, and the result is reduced into
/// (-2 pi, 2 pi].
inline double solid_angle_polyline(const SphericalPolyline& p) {
    p.validate();
    if (!p.closed)
        throw std::domain_error("solid_angle_polyline: polyline must be closed");
    if (p.vertices.size() < 3) return 0.0;  // a point or a there-and-back arc encloses nothing

    // Canonicalize the cycle: start at the lexicographically smallest
    // vertex and walk toward its smaller neighbor.  Reversing the input
    // then yields the same cycle with only the sign flipped.
    std::size_t n = p.vertices.size();
    std::size_t m = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (detail::lex_less(p.vertices[k].s, p.vertices[m].s)) m = k;
    double sign = 1.0;
    std::vector<const Vec3*> cyc(n);
    if (detail::lex_less(p.vertices[(m + n - 1) % n].s, p.vertices[(m + 1) % n].s)) {
        sign = -1.0;
        for (std::size_t k = 0; k < n; ++k) cyc[k] = &p.vertices[(m + n - k) % n].s;
    } else {
        for (std::size_t k = 0; k < n; ++k) cyc[k] = &p.vertices[(m + k) % n].s;
    }

    auto try_center = [&](const Vec3& c, double& out) {
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const Vec3& a = *cyc[k];
            const Vec3& b = *cyc[(k + 1) % n];
            if (norm(c + a) < 1e-7) return false;  // antipodal to a vertex
            double num = dot(c, cross(a, b));
            double den = 1.0 + dot(c, a) + dot(a, b) + dot(b, c);
            if (std::abs(num) < 1e-14) {
                if (den < 1e-12) return false;  // ambiguous hemisphere-size triangle
                continue;
            }
            total += 2.0 * std::atan2(num, den);
        }
        out = total;
        return true;
    };

    std::vector<Vec3> candidates;
    candidates.push_back(*cyc[0]);
    Vec3 centroid{};
    for (std::size_t k = 0; k < n; ++k) centroid = centroid + *cyc[k];
    if (norm(centroid) > 1e-3) candidates.push_back(normalized(centroid));
    candidates.push_back(normalized(*cyc[0] + *cyc[1]));
    for (const Vec3& ax : {Vec3{0, 0, 1}, Vec3{0, 0, -1}, Vec3{1, 0, 0}, Vec3{-1, 0, 0},
                           Vec3{0, 1, 0}, Vec3{0, -1, 0}, Vec3{0.577350269189626, 0.577350269189626, 0.577350269189626}})
        candidates.push_back(ax);

    for (const Vec3& c : candidates) {
        double raw;
        if (try_center(c, raw)) {
            double r = detail::reduce_solid_angle(sign * raw);
            return r;
        }
    }
    throw std::runtime_error("solid_angle_polyline: no numerically sound fan center found");
}

/// The geodesic of H+ through two of its points, parametrized so that
/// t = 0 and t = 1 land exactly on the endpoints:
///   u(t) = a cosh(t zeta) + e sinh(t zeta),  zeta = arccosh(a.b).
struct HyperbolicGeodesic {
    Vec4 base;   // a
    Vec4 dir;    // unit spacelike tangent at a toward b (zero if a == b)
    double zeta; // rapidity separating the endpoints

    Vec4 at(double t) const { return base * std::cosh(t * zeta) + dir * std::sinh(t * zeta); }

    /// d/dt of at(t); Minkowski-orthogonal to the point at every t.
    Vec4 velocity(double t) const {
        return (base * std::sinh(t * zeta) + dir * std::cosh(t * zeta)) * zeta;
    }
};

inline HyperbolicGeodesic hyperbolic_geodesic(const FourVelocity& a, const FourVelocity& b) {
    double g = std::max(1.0, minkowski(a.u, b.u));
    double zeta = std::acosh(g);
    if (zeta < 1e-12) return {a.u, Vec4{}, 0.0};
    return {a.u, (b.u - a.u * g) * (1.0 / std::sinh(zeta)), zeta};
}

inline FourVelocity hyperbolic_geodesic_point(const FourVelocity& a, const FourVelocity& b,
                                              double t) {
    HyperbolicGeodesic geo = hyperbolic_geodesic(a, b);
    if (geo.zeta == 0.0) return a;
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return FourVelocity(geo.at(t));
}

/// Whether all points lie in a common plane section of the hyperboloid,
/// i.e. whether the 4-vectors span a linear subspace of dimension <= 3 at
/// the given relative tolerance.  For a loop based at the rest frame this
/// is exactly the condition that the boost axes span a single 2-plane.
inline bool is_coplanar_h(const std::vector<FourVelocity>& points, double tol = 1e-9) {
    if (points.empty()) throw std::domain_error("is_coplanar_h: no points");
    double scale = 0.0;
    for (const auto& p : points) scale = std::max(scale, euclid_norm(p.u));

    // Greedy modified Gram-Schmidt: grow an orthonormal basis from the
    // points, then test whether a fourth independent direction remains.
    std::vector<Vec4> basis;
    auto residual = [&](Vec4 v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec4& e : basis) {
                double c = v.t * e.t + v.x * e.x + v.y * e.y + v.z * e.z;
                v = v - e * c;
            }
        return v;
    };
    for (int round = 0; round < 4; ++round) {
        double best = 0.0;
        Vec4 bestv;
        for (const auto& p : points) {
            Vec4 r = residual(p.u);
            double nr = euclid_norm(r);
            if (nr > best) {
                best = nr;
                bestv = r;
            }
        }
        if (best <= tol * scale) break;
        basis.push_back(bestv * (1.0 / best));
    }
    return basis.size() <= 3;
}

}  // namespace dichro
