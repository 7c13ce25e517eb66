#pragma once

/// Jones calculus for fully polarized light and its Poincare-sphere picture.
///
/// Conventions used throughout the library:
///   * A Jones vector (c0, c1) matters only up to a nonzero complex scale.
///   * Its Poincare point is s_i = <v|sigma_i|v> / <v|v> with the standard
///     Pauli matrices, so (1,0) sits at the +z pole, (1,1) at +x, (1,i) at +y.
///   * Writing c1/c0 = tan(theta/2) e^{i phi}, theta is the colatitude from
///     the +z pole and phi the longitude from the +x meridian.
///   * A retarder of retardance delta about an axis rotates the sphere
///     right-handedly by delta about that axis.

#include <complex>
#include <stdexcept>

#include "linalg.hpp"

namespace dichro {

using cdouble = std::complex<double>;

/// A point on the unit Poincare sphere.  Construction checks the norm and
/// then renormalizes, so stored coordinates are unit to machine precision.
struct PoincarePoint {
    Vec3 s{0.0, 0.0, 1.0};

    PoincarePoint() = default;

    explicit PoincarePoint(const Vec3& v, double tol = 1e-6) {
        double n = norm(v);
        if (!(std::abs(n - 1.0) <= tol))
            throw std::domain_error("PoincarePoint: coordinates are not a unit vector");
        s = v * (1.0 / n);
    }

    PoincarePoint(double x, double y, double z) : PoincarePoint(Vec3{x, y, z}) {}

    /// Accepts any nonzero vector and normalizes it.
    static PoincarePoint normalized(const Vec3& v) { return PoincarePoint(dichro::normalized(v), 1.0); }

    PoincarePoint antipode() const { return PoincarePoint(-s, 1.0); }

    static PoincarePoint xhat() { return {1.0, 0.0, 0.0}; }
    static PoincarePoint yhat() { return {0.0, 1.0, 0.0}; }
    static PoincarePoint zhat() { return {0.0, 0.0, 1.0}; }
};

/// Great-circle distance between two sphere points, in [0, pi].
inline double sphere_distance(const PoincarePoint& a, const PoincarePoint& b) {
    return angle_between(a.s, b.s);
}

struct JonesVector {
    cdouble c0, c1;

    JonesVector(cdouble a, cdouble b) : c0(a), c1(b) {
        if (std::norm(c0) + std::norm(c1) == 0.0)
            throw std::domain_error("JonesVector: zero vector does not describe a polarization");
    }

    double intensity() const { return std::norm(c0) + std::norm(c1); }
};

inline cdouble inner(const JonesVector& a, const JonesVector& b) {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

struct JonesMatrix {
    cdouble m00, m01, m10, m11;

    cdouble det() const { return m00 * m11 - m01 * m10; }

    JonesMatrix dagger() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }

    JonesMatrix operator*(const JonesMatrix& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }

    JonesVector apply(const JonesVector& v) const {
        return {m00 * v.c0 + m01 * v.c1, m10 * v.c0 + m11 * v.c1};
    }

    static JonesMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

/// An elliptic dichroic element: attenuates the eigenstate at `axis` by
/// e^{-alpha1} and the orthogonal eigenstate at the antipode by e^{-alpha2},
/// parametrized by the relative absorption alpha = alpha2 - alpha1 >= 0 and
/// the overall absorption alpha0 = (alpha1 + alpha2)/2 >= 0.  Only alpha
/// moves points on the sphere; alpha0 scales intensity.
struct AbsorberSpec {
    PoincarePoint axis;
    double alpha;
    double alpha0 = 0.0;

    AbsorberSpec(const PoincarePoint& ax, double a, double a0 = 0.0)
        : axis(ax), alpha(a), alpha0(a0) {
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            throw std::domain_error("AbsorberSpec: alpha must be finite and >= 0");
        if (!(alpha0 >= 0.0) || !std::isfinite(alpha0))
            throw std::domain_error("AbsorberSpec: alpha0 must be finite and >= 0");
    }
};

/// A birefringent element: retardance delta (radians) about `axis`.
struct RetarderSpec {
    PoincarePoint axis;
    double delta;

    RetarderSpec(const PoincarePoint& ax, double d) : axis(ax), delta(d) {
        if (!std::isfinite(delta)) throw std::domain_error("RetarderSpec: delta must be finite");
    }
};

/// Stokes direction of a Jones vector: s_i = <v|sigma_i|v> / <v|v>.
inline PoincarePoint poincare_of_jones(const JonesVector& v) {
    double n = v.intensity();
    double s1 = 2.0 * std::real(std::conj(v.c0) * v.c1) / n;
    double s2 = 2.0 * std::imag(std::conj(v.c0) * v.c1) / n;
    double s3 = (std::norm(v.c0) - std::norm(v.c1)) / n;
    return PoincarePoint(Vec3{s1, s2, s3});
}

/// Unit-intensity representative of a sphere point, with the phase fixed so
/// the first component is real and non-negative; the south pole maps to (0,1).
inline JonesVector jones_of_poincare(const PoincarePoint& p) {
    double ct = clamp(p.s.z, -1.0, 1.0);
    double st = std::hypot(p.s.x, p.s.y);
    double ch = std::sqrt((1.0 + ct) / 2.0);  // cos(theta/2)
    double sh = std::sqrt((1.0 - ct) / 2.0);  // sin(theta/2)
    if (st < 1e-300) return ch >= sh ? JonesVector(1.0, 0.0) : JonesVector(0.0, 1.0);
    cdouble phase(p.s.x / st, p.s.y / st);  // e^{i phi}
    return {ch, sh * phase};
}

/// Jones matrix of an elliptic absorber.  Built exactly by conjugation:
/// diag(e^{-alpha1}, e^{-alpha2}) in the orthonormal eigenbasis of the axis,
/// which equals e^{-alpha0} exp((alpha/2) axis.sigma).  Always Hermitian
/// positive definite times the scalar e^{-alpha0}.
inline JonesMatrix absorber_matrix(const AbsorberSpec& a) {
    JonesVector n = jones_of_poincare(a.axis);
    JonesVector s = jones_of_poincare(a.axis.antipode());
    double f1 = std::exp(-(a.alpha0 - a.alpha / 2.0));  // e^{-alpha1}
    double f2 = std::exp(-(a.alpha0 + a.alpha / 2.0));  // e^{-alpha2}
    // f1 |n><n| + f2 |s><s|
    return {f1 * n.c0 * std::conj(n.c0) + f2 * s.c0 * std::conj(s.c0),
            f1 * n.c0 * std::conj(n.c1) + f2 * s.c0 * std::conj(s.c1),
            f1 * n.c1 * std::conj(n.c0) + f2 * s.c1 * std::conj(s.c0),
            f1 * n.c1 * std::conj(n.c1) + f2 * s.c1 * std::conj(s.c1)};
}

/// Jones matrix of a retarder: exp(-i (delta/2) axis.sigma), unitary with
/// unit determinant.  Rotates the Poincare sphere by delta about the axis.
inline JonesMatrix retarder_matrix(const RetarderSpec& r) {
    double c = std::cos(r.delta / 2.0);
    double s = std::sin(r.delta / 2.0);
    const Vec3& n = r.axis.s;
    const cdouble i(0.0, 1.0);
    // c I - i s (n1 sigma1 + n2 sigma2 + n3 sigma3)
    return {c - i * s * n.z, -i * s * (n.x - i * n.y), -i * s * (n.x + i * n.y), c + i * s * n.z};
}

struct AppliedState {
    JonesVector state;
    double intensity_ratio;  // |m v|^2 / |v|^2
};

inline AppliedState apply_element(const JonesMatrix& m, const JonesVector& v) {
    JonesVector out = m.apply(v);
    if (out.intensity() == 0.0)
        throw std::domain_error("apply_element: output vanished (singular element)");
    return {out, out.intensity() / v.intensity()};
}

/// The projective action of an invertible Jones matrix on the sphere.
inline PoincarePoint induced_sphere_map(const JonesMatrix& m, const PoincarePoint& p) {
    double scale = std::max({std::abs(m.m00), std::abs(m.m01), std::abs(m.m10), std::abs(m.m11)});
    if (!(std::abs(m.det()) > 1e-15 * scale * scale))
        throw std::domain_error("induced_sphere_map: matrix is singular");
    return poincare_of_jones(m.apply(jones_of_poincare(p)));
}

}  // namespace dichro
