#pragma once

/// The proper orthochronous Lorentz group and the two-to-one covering map
/// from invertible Jones matrices, under which an elliptic absorber acts on
/// the Poincare sphere exactly as a boost acts on directions on the
/// celestial sphere (relative absorption = rapidity) and a retarder acts as
/// a spatial rotation.

#include <stdexcept>

#include "jones.hpp"
#include "linalg.hpp"

namespace dichro {

/// A future-pointing unit timelike 4-vector (a point on the unit
/// hyperboloid H+).  Construction checks and renormalizes.
struct FourVelocity {
    Vec4 u{1.0, 0.0, 0.0, 0.0};

    FourVelocity() = default;

    explicit FourVelocity(const Vec4& v, double tol = 1e-6) {
        double n2 = minkowski(v, v);
        if (!(v.t > 0.0) || !(std::abs(n2 - 1.0) <= tol))
            throw std::domain_error("FourVelocity: not future-pointing unit timelike");
        u = v * (1.0 / std::sqrt(n2));
    }

    static FourVelocity rest() { return FourVelocity{}; }
};

/// Rapidity separating two four-velocities: arccosh of their Minkowski dot.
inline double rapidity_between(const FourVelocity& a, const FourVelocity& b) {
    return std::acosh(std::max(1.0, minkowski(a.u, b.u)));
}

struct LorentzMatrix {
    Mat4 m = Mat4::identity();

    /// Throws unless the matrix is proper orthochronous Lorentz within tol:
    /// L^T eta L = eta, det L = +1, L(0,0) >= 1.  The tolerance is relative
    /// to the squared size of L, which is the scale of the rounding noise
    /// the metric-defect entries carry for large rapidities.
    void validate(double tol = 1e-9) const {
        double scale = std::max(1.0, frobenius(m));
        Mat4 defect = m.transpose() * eta() * m - eta();
        if (!(frobenius(defect) <= tol * scale * scale))
            throw std::domain_error("LorentzMatrix: does not preserve the metric");
        if (!(std::abs(determinant(m) - 1.0) <= tol * scale * scale * scale * scale))
            throw std::domain_error("LorentzMatrix: determinant is not +1");
        if (!(m(0, 0) >= 1.0 - tol))
            throw std::domain_error("LorentzMatrix: not orthochronous");
    }

    LorentzMatrix operator*(const LorentzMatrix& o) const { return {m * o.m}; }

    static LorentzMatrix identity() { return {}; }
};

struct RotationResult {
    PoincarePoint axis;
    double angle;  // in [0, pi]
};

/// Axis and angle of a 3x3 rotation matrix.  The angle is in [0, pi]; when
/// it is 0 or pi the axis sign is fixed by making its first component of
/// magnitude above 1e-6 positive (for angle 0 the axis is +z by convention).
inline RotationResult axis_angle_from_rotation3(const Mat3& r) {
    Vec3 w{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
    double s = 0.5 * norm(w);                            // |sin angle|
    double c = clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);  // cos angle
    double angle = std::atan2(s, c);

    if (angle < 1e-12) return {PoincarePoint::zhat(), 0.0};

    Vec3 axis;
    // The skew part fails only near a half turn (s -> 0 with c -> -1); for
    // small angles w = 2 sin(angle) axis is accurate down to the 1e-12 cut.
    if (c >= 0.0 || s > 1e-6) {
        axis = w * (0.5 / s);
    } else {
        // Near a half turn extract the axis from (R + I)/2 = n n^T.
        Mat3 q = (r + Mat3::identity()) * 0.5;
        int j = 0;
        if (q(1, 1) > q(j, j)) j = 1;
        if (q(2, 2) > q(j, j)) j = 2;
        axis = Vec3{q(0, j), q(1, j), q(2, j)} * (1.0 / std::sqrt(q(j, j)));
        // Fix the sign convention: first component of sensible size positive.
        double lead = std::abs(axis.x) > 1e-6 ? axis.x : (std::abs(axis.y) > 1e-6 ? axis.y : axis.z);
        if (lead < 0.0) axis = -axis;
    }
    return {PoincarePoint::normalized(axis), angle};
}

/// Pure boost of given rapidity along a unit spatial axis.
inline LorentzMatrix boost_matrix(const PoincarePoint& axis, double rapidity) {
    if (!std::isfinite(rapidity)) throw std::domain_error("boost_matrix: rapidity must be finite");
    double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
    const Vec3& n = axis.s;
    Mat4 r = Mat4::identity();
    r(0, 0) = ch;
    double ni[3] = {n.x, n.y, n.z};
    for (int i = 0; i < 3; ++i) {
        r(0, i + 1) = r(i + 1, 0) = sh * ni[i];
        for (int j = 0; j < 3; ++j) r(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (ch - 1.0) * ni[i] * ni[j];
    }
    return {r};
}

/// Image of an invertible Jones matrix under the covering map: m is scaled
/// to unit determinant and L^mu_nu = Re tr(sigma_mu m sigma_nu m^dagger)/2.
/// Absorbers map to pure boosts with rapidity alpha along their axis
/// (alpha0 drops out); retarders map to spatial rotations.
inline LorentzMatrix lorentz_of_jones(const JonesMatrix& jm) {
    double scale = std::max({std::abs(jm.m00), std::abs(jm.m01), std::abs(jm.m10), std::abs(jm.m11)});
    cdouble d = jm.det();
    if (!(std::abs(d) > 1e-15 * scale * scale))
        throw std::domain_error("lorentz_of_jones: matrix is singular (projector limit)");
    cdouble is = 1.0 / std::sqrt(d);
    JonesMatrix n{jm.m00 * is, jm.m01 * is, jm.m10 * is, jm.m11 * is};

    // Columns of the 2x2 action: X -> n X n^dagger on the Hermitian basis
    // sigma_nu; entries are recovered by tracing against sigma_mu.
    JonesMatrix nd = n.dagger();
    Mat4 L;
    const cdouble i(0.0, 1.0);
    JonesMatrix sigma[4] = {JonesMatrix::identity(),
                            {0.0, 1.0, 1.0, 0.0},
                            {0.0, -i, i, 0.0},
                            {1.0, 0.0, 0.0, -1.0}};
    for (int nu = 0; nu < 4; ++nu) {
        JonesMatrix x = n * sigma[nu] * nd;
        for (int mu = 0; mu < 4; ++mu) {
            JonesMatrix t = sigma[mu] * x;
            L(mu, nu) = 0.5 * std::real(t.m00 + t.m11);
        }
    }
    LorentzMatrix out{L};
    out.validate(1e-9);
    return out;
}

inline FourVelocity apply_to_velocity(const LorentzMatrix& l, const FourVelocity& v) {
    return FourVelocity(l.m.apply(v.u));
}

/// The rotation-free boost linking four-velocity a to b: it acts in the
/// timelike plane spanned by a and b and fixes the orthogonal complement.
/// Closed form B = I + 2 b a~^T - q q~^T / (1 + a.b), q = a + b, where ~
/// denotes index lowering; exactly in the group (no square roots).  Note
/// this matrix is symmetric only when a or b is the rest frame; transport
/// along a geodesic composes these maps without accumulating rotation.
inline LorentzMatrix pure_boost_between(const FourVelocity& a, const FourVelocity& b) {
    double g = std::max(1.0, minkowski(a.u, b.u));
    Vec4 q = a.u + b.u;
    Mat4 m = Mat4::identity() + outer(b.u, lower(a.u)) * 2.0 - outer(q, lower(q)) * (1.0 / (1.0 + g));
    return {m};
}

struct PolarDecomposition {
    LorentzMatrix boost;     // pure boost taking the rest frame to L(rest)
    LorentzMatrix rotation;  // spatial rotation, boost * rotation = L
};

/// Polar decomposition L = B R computed with group operations only:
/// B = pure_boost_between(rest, L rest) and R = B^{-1} L.
inline PolarDecomposition polar_decompose(const LorentzMatrix& l) {
    FourVelocity v(l.m.apply(FourVelocity::rest().u));
    LorentzMatrix b = pure_boost_between(FourVelocity::rest(), v);
    LorentzMatrix binv{eta() * b.m * eta()};  // inverse of a pure boost
    return {b, binv * l};
}

/// Axis and angle of a Lorentz matrix that is a spatial rotation.
inline RotationResult rotation_axis_angle(const LorentzMatrix& l, double tol = 1e-9) {
    double defect = std::abs(l.m(0, 0) - 1.0);
    for (int i = 1; i < 4; ++i)
        defect = std::max({defect, std::abs(l.m(0, i)), std::abs(l.m(i, 0))});
    if (!(defect <= tol))
        throw std::domain_error("rotation_axis_angle: matrix moves the time axis");
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = l.m(i + 1, j + 1);
    return axis_angle_from_rotation3(r);
}

/// Whether L maps u to itself within tol (Euclidean norm of the difference).
inline bool is_closed(const LorentzMatrix& l, const FourVelocity& u, double tol = 1e-8) {
    return euclid_norm(l.m.apply(u.u) - u.u) <= tol;
}

/// Rapidity of the boost part of L at the rest frame; zero iff L is closed.
inline double residual_rapidity(const LorentzMatrix& l) {
    return std::acosh(std::max(1.0, l.m(0, 0)));
}

}  // namespace dichro
