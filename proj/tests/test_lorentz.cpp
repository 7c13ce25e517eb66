#include <doctest.h>

#include <cmath>

#include <dichro/jones.hpp>
#include <dichro/lorentz.hpp>

#include "oracles.hpp"

using namespace dichro;

namespace {
const double kPi = 3.14159265358979323846;

double rel_diff(const Mat4& a, const Mat4& b) {
    return frobenius(a - b) / std::max(1.0, frobenius(b));
}
}  // namespace

TEST_CASE("boost_matrix equals the exponential of the boost generator") {
    PoincarePoint axis = PoincarePoint::normalized(Vec3{1, 1, 1});
    LorentzMatrix l = boost_matrix(axis, 1.0);
    CHECK(rel_diff(l.m, oracle::boost_exp(axis.s, 1.0)) < 1e-13);
    l.validate();
    CHECK(frobenius(l.m - l.m.transpose()) < 1e-14);

    // Rest frame goes to (cosh a, sinh a * axis), and the rapidity is read back.
    FourVelocity moved = apply_to_velocity(l, FourVelocity::rest());
    CHECK(moved.u.t == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
    CHECK(norm(moved.u.spatial() - std::sinh(1.0) * axis.s) < 1e-13);
    CHECK(rapidity_between(FourVelocity::rest(), moved) == doctest::Approx(1.0).epsilon(1e-12));

    oracle::Rng rng(21);
    for (int k = 0; k < 30; ++k) {
        PoincarePoint n = rng.point();
        double a = rng.uniform(0.0, 3.0);
        CHECK(rel_diff(boost_matrix(n, a).m, oracle::boost_exp(n.s, a)) < 1e-12);
    }
}

TEST_CASE("covering map: absorbers to boosts, retarders to rotations") {
    oracle::Rng rng(22);
    for (int k = 0; k < 30; ++k) {
        AbsorberSpec a = rng.absorber(0.0, 3.0, 1.0);
        LorentzMatrix l = lorentz_of_jones(absorber_matrix(a));
        // alpha0 drops out; the image is the pure boost along the axis.
        CHECK(rel_diff(l.m, boost_matrix(a.axis, a.alpha).m) < 1e-12);
    }
    for (int k = 0; k < 30; ++k) {
        RetarderSpec r(rng.point(), rng.uniform(0.05, kPi - 0.05));
        LorentzMatrix l = lorentz_of_jones(retarder_matrix(r));
        RotationResult rr = rotation_axis_angle(l);
        CHECK(rr.angle == doctest::Approx(r.delta).epsilon(1e-10));
        CHECK(norm(rr.axis.s - r.axis.s) < 1e-9);
    }
}

TEST_CASE("covering map is a homomorphism") {
    oracle::Rng rng(23);
    for (int k = 0; k < 30; ++k) {
        JonesMatrix a = absorber_matrix(rng.absorber(0.0, 2.0, 1.0));
        JonesMatrix b = retarder_matrix(RetarderSpec(rng.point(), rng.uniform(-3.0, 3.0)));
        JonesMatrix c = absorber_matrix(rng.absorber());
        Mat4 prod = (lorentz_of_jones(c) * lorentz_of_jones(b) * lorentz_of_jones(a)).m;
        Mat4 direct = lorentz_of_jones(c * b * a).m;
        CHECK(rel_diff(direct, prod) < 1e-11);
    }
}

TEST_CASE("covering map matches the sphere action on the celestial sphere") {
    // The projective Jones action and the Lorentz action on null directions
    // (1, s) describe the same map.
    oracle::Rng rng(24);
    for (int k = 0; k < 50; ++k) {
        JonesMatrix m = absorber_matrix(rng.absorber(0.0, 2.5)) *
                        retarder_matrix(RetarderSpec(rng.point(), rng.uniform(-3.0, 3.0)));
        PoincarePoint p = rng.point();
        Vec4 null_in{1.0, p.s.x, p.s.y, p.s.z};
        Vec4 null_out = lorentz_of_jones(m).m.apply(null_in);
        CHECK(null_out.t > 0.0);
        CHECK(norm(null_out.spatial() * (1.0 / null_out.t) - induced_sphere_map(m, p).s) < 1e-11);
    }
}

TEST_CASE("polar decomposition splits boost and rotation") {
    oracle::Rng rng(25);
    for (int k = 0; k < 40; ++k) {
        LorentzMatrix l = boost_matrix(rng.point(), rng.uniform(0.0, 2.0)) *
                          boost_matrix(rng.point(), rng.uniform(0.0, 2.0)) *
                          boost_matrix(rng.point(), rng.uniform(0.0, 2.0));
        PolarDecomposition pd = polar_decompose(l);
        // The boost factor is symmetric, the rotation fixes the rest frame,
        // and the product rebuilds l.
        CHECK(frobenius(pd.boost.m - pd.boost.m.transpose()) < 1e-12);
        CHECK_NOTHROW(rotation_axis_angle(pd.rotation));
        CHECK(rel_diff((pd.boost * pd.rotation).m, l.m) < 1e-12);
    }
}

TEST_CASE("linking boost between four-velocities") {
    oracle::Rng rng(26);
    for (int k = 0; k < 40; ++k) {
        FourVelocity a = rng.velocity();
        FourVelocity b = rng.velocity();
        LorentzMatrix link = pure_boost_between(a, b);
        link.validate(1e-11);
        CHECK(euclid_norm(link.m.apply(a.u) - b.u) < 1e-12);

        // It acts only in the plane of a and b: Minkowski-orthogonal
        // directions are fixed.
        Vec3 c = cross(a.u.spatial(), b.u.spatial());
        if (norm(c) > 1e-6) {
            Vec4 perp{0.0, c.x, c.y, c.z};  // orthogonal to both (zero time part)
            CHECK(euclid_norm(link.m.apply(perp) - perp) < 1e-12 * norm(c));
        }
    }

    // From rest it reduces to the symmetric axis boost...
    FourVelocity w = apply_to_velocity(boost_matrix(PoincarePoint::xhat(), 0.8), FourVelocity::rest());
    CHECK(rel_diff(pure_boost_between(FourVelocity::rest(), w).m,
                   boost_matrix(PoincarePoint::xhat(), 0.8).m) < 1e-13);

    // ...but between two moving frames it is generally not symmetric: the
    // lab-symmetric boost with the same endpoints differs from the linking
    // boost by a rotation (the geometric origin of Thomas precession).
    FourVelocity u2 = apply_to_velocity(boost_matrix(PoincarePoint::zhat(), 1.0), FourVelocity::rest());
    FourVelocity u3 = FourVelocity(
        (boost_matrix(PoincarePoint::zhat(), 1.0) * boost_matrix(PoincarePoint::xhat(), 1.0))
            .m.apply(FourVelocity::rest().u));
    LorentzMatrix link23 = pure_boost_between(u2, u3);
    CHECK(frobenius(link23.m - link23.m.transpose()) > 0.1);
}

TEST_CASE("rotation axis-angle extraction") {
    // Identity convention.
    RotationResult id = axis_angle_from_rotation3(Mat3::identity());
    CHECK(id.angle == 0.0);

    // Half turn about x: diag(1, -1, -1).
    Mat3 half;
    half(0, 0) = 1.0;
    half(1, 1) = -1.0;
    half(2, 2) = -1.0;
    RotationResult h = axis_angle_from_rotation3(half);
    CHECK(h.angle == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(norm(h.axis.s - Vec3{1, 0, 0}) < 1e-9);

    // Round trips against the exponential oracle, angle in [0, pi].
    oracle::Rng rng(27);
    for (int k = 0; k < 60; ++k) {
        Vec3 n = rng.unit_vec3();
        double th = rng.uniform(1e-4, kPi - 1e-4);
        RotationResult rr = axis_angle_from_rotation3(oracle::rotation_exp(n, th));
        CHECK(rr.angle == doctest::Approx(th).epsilon(1e-10));
        CHECK(norm(rr.axis.s - n) < 1e-9);
    }

    // Near-half-turn branch.
    Vec3 n{0.6, 0.0, 0.8};
    RotationResult near_pi = axis_angle_from_rotation3(oracle::rotation_exp(n, kPi - 1e-9));
    CHECK(near_pi.angle == doctest::Approx(kPi - 1e-9).epsilon(1e-7));
    CHECK(std::min(norm(near_pi.axis.s - n), norm(near_pi.axis.s + n)) < 1e-6);

    // rotation_axis_angle rejects matrices that move the time axis.
    CHECK_THROWS_AS(rotation_axis_angle(boost_matrix(PoincarePoint::zhat(), 0.5)),
                    std::domain_error);
}

TEST_CASE("validation scales with rapidity") {
    // At rapidity 20 the metric-defect entries are ~ cosh^2(20) * eps; the
    // relative test accepts the matrix while a genuinely corrupted one fails.
    LorentzMatrix big = boost_matrix(PoincarePoint::normalized(Vec3{1, 2, -1}), 20.0);
    CHECK_NOTHROW(big.validate());
    CHECK_NOTHROW(lorentz_of_jones(absorber_matrix(
        AbsorberSpec(PoincarePoint::normalized(Vec3{1, 2, -1}), 20.0))));

    LorentzMatrix bad = boost_matrix(PoincarePoint::zhat(), 1.0);
    bad.m(1, 1) += 1e-3;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);

    // Time reversal and reflections are rejected.
    LorentzMatrix tr;
    tr.m(0, 0) = -1.0;
    tr.m(1, 1) = -1.0;
    CHECK_THROWS_AS(tr.validate(), std::domain_error);
}

TEST_CASE("closure predicates") {
    LorentzMatrix rot = lorentz_of_jones(retarder_matrix(RetarderSpec(PoincarePoint::yhat(), 1.1)));
    CHECK(is_closed(rot, FourVelocity::rest()));
    CHECK(residual_rapidity(rot) == 0.0);

    LorentzMatrix boost = boost_matrix(PoincarePoint::xhat(), 0.7);
    CHECK(!is_closed(boost, FourVelocity::rest()));
    CHECK(residual_rapidity(boost) == doctest::Approx(0.7).epsilon(1e-12));

    CHECK_THROWS_AS(FourVelocity(Vec4{1.0, 0.5, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(FourVelocity(Vec4{-1.0, 0.0, 0.0, 0.0}), std::domain_error);
}
