#include <doctest.h>

#include <cmath>
#include <complex>

#include <dichro/jones.hpp>

#include "oracles.hpp"

using namespace dichro;

namespace {
const double kPi = 3.14159265358979323846;

JonesMatrix from_c2(const oracle::C2& c) { return {c(0, 0), c(0, 1), c(1, 0), c(1, 1)}; }

double max_abs_diff(const JonesMatrix& a, const JonesMatrix& b) {
    return std::max({std::abs(a.m00 - b.m00), std::abs(a.m01 - b.m01), std::abs(a.m10 - b.m10),
                     std::abs(a.m11 - b.m11)});
}
}  // namespace

TEST_CASE("sphere coordinates of the basic Jones vectors") {
    PoincarePoint n = poincare_of_jones(JonesVector(1.0, 0.0));
    CHECK(norm(n.s - Vec3{0, 0, 1}) < 1e-15);

    PoincarePoint d = poincare_of_jones(JonesVector(1.0, 1.0));
    CHECK(norm(d.s - Vec3{1, 0, 0}) < 1e-15);

    PoincarePoint c = poincare_of_jones(JonesVector(1.0, cdouble(0.0, 1.0)));
    CHECK(norm(c.s - Vec3{0, 1, 0}) < 1e-15);

    // (1, i/2): s = (2 Re z, 2 Im z, 1 - |z|^2) / (1 + |z|^2) with z = i/2.
    PoincarePoint p = poincare_of_jones(JonesVector(1.0, cdouble(0.0, 0.5)));
    CHECK(norm(p.s - Vec3{0.0, 0.8, 0.6}) < 1e-15);

    // Scaling and a common phase change nothing.
    cdouble phase = std::polar(3.7, 1.234);
    PoincarePoint q = poincare_of_jones(JonesVector(phase, phase * cdouble(0.0, 0.5)));
    CHECK(norm(q.s - p.s) < 1e-14);
}

TEST_CASE("jones_of_poincare is a section of poincare_of_jones") {
    oracle::Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        PoincarePoint p = rng.point();
        JonesVector v = jones_of_poincare(p);
        CHECK(v.intensity() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::imag(v.c0) == 0.0);
        CHECK(std::real(v.c0) >= 0.0);
        CHECK(norm(poincare_of_jones(v).s - p.s) < 1e-12);
    }
    // Poles hit the basis vectors exactly.
    JonesVector north = jones_of_poincare(PoincarePoint::zhat());
    CHECK(north.c0 == cdouble(1.0));
    CHECK(north.c1 == cdouble(0.0));
    JonesVector south = jones_of_poincare(PoincarePoint::zhat().antipode());
    CHECK(south.c0 == cdouble(0.0));
    CHECK(south.c1 == cdouble(1.0));
}

TEST_CASE("absorber matrix equals the exponential of its generator") {
    // alpha = 2 artanh(0.6) = ln 4 along +x gives the frozen matrix
    // [[1.25, 0.75], [0.75, 1.25]] (eigenvalues 2 and 1/2).
    double alpha = 2.0 * std::atanh(0.6);
    JonesMatrix m = absorber_matrix(AbsorberSpec(PoincarePoint::xhat(), alpha));
    CHECK(std::abs(m.m00 - cdouble(1.25)) < 1e-14);
    CHECK(std::abs(m.m01 - cdouble(0.75)) < 1e-14);
    CHECK(std::abs(m.m10 - cdouble(0.75)) < 1e-14);
    CHECK(std::abs(m.m11 - cdouble(1.25)) < 1e-14);

    oracle::Rng rng(12);
    for (int k = 0; k < 50; ++k) {
        AbsorberSpec a = rng.absorber(0.0, 3.0, 1.5);
        JonesMatrix got = absorber_matrix(a);
        JonesMatrix want = from_c2(oracle::absorber_exp(a.axis.s, a.alpha, a.alpha0));
        CHECK(max_abs_diff(got, want) < 1e-12);
        // Hermitian, positive determinant e^{-2 alpha0}.
        CHECK(max_abs_diff(got, got.dagger()) < 1e-14);
        CHECK(std::abs(got.det() - cdouble(std::exp(-2.0 * a.alpha0))) < 1e-12);
    }
}

TEST_CASE("absorber eigenstates attenuate by e^{-alpha1} and e^{-alpha2}") {
    oracle::Rng rng(13);
    for (int k = 0; k < 50; ++k) {
        AbsorberSpec a = rng.absorber(0.0, 2.5, 1.0);
        JonesMatrix m = absorber_matrix(a);
        JonesVector n = jones_of_poincare(a.axis);
        JonesVector s = jones_of_poincare(a.axis.antipode());
        double f1 = std::exp(-(a.alpha0 - a.alpha / 2.0));
        double f2 = std::exp(-(a.alpha0 + a.alpha / 2.0));
        JonesVector mn = m.apply(n);
        JonesVector ms = m.apply(s);
        CHECK(std::abs(mn.c0 - f1 * n.c0) < 1e-12);
        CHECK(std::abs(mn.c1 - f1 * n.c1) < 1e-12);
        CHECK(std::abs(ms.c0 - f2 * s.c0) < 1e-12);
        CHECK(std::abs(ms.c1 - f2 * s.c1) < 1e-12);
    }
}

TEST_CASE("retarder matrix is the unitary exponential and rotates the sphere") {
    oracle::Rng rng(14);
    for (int k = 0; k < 50; ++k) {
        RetarderSpec r(rng.point(), rng.uniform(-2.0 * kPi, 2.0 * kPi));
        JonesMatrix got = retarder_matrix(r);
        JonesMatrix want = from_c2(oracle::retarder_exp(r.axis.s, r.delta));
        CHECK(max_abs_diff(got, want) < 1e-12);
        CHECK(std::abs(got.det() - cdouble(1.0)) < 1e-13);
        // Unitary: m m^dagger = 1.
        CHECK(max_abs_diff(got * got.dagger(), JonesMatrix::identity()) < 1e-13);

        // Sphere action is the right-handed rotation by delta about the axis.
        PoincarePoint p = rng.point();
        Vec3 rotated = oracle::rotation_exp(r.axis.s, r.delta).apply(p.s);
        CHECK(norm(induced_sphere_map(got, p).s - rotated) < 1e-12);
    }

    // Quarter turn about +y carries +z to +x.
    JonesMatrix q = retarder_matrix(RetarderSpec(PoincarePoint::yhat(), kPi / 2.0));
    CHECK(norm(induced_sphere_map(q, PoincarePoint::zhat()).s - Vec3{1, 0, 0}) < 1e-14);
}

TEST_CASE("absorber sphere action obeys the tan-half attenuation law") {
    // A state at polar angle theta from the axis lands at theta' with
    // tan(theta'/2) = e^{-alpha} tan(theta/2).
    for (double alpha : {0.0, 0.3, 1.0, 4.0, 10.0}) {
        JonesMatrix m = absorber_matrix(AbsorberSpec(PoincarePoint::zhat(), alpha));
        for (int i = 1; i < 40; ++i) {
            double theta = kPi * i / 40.0;
            PoincarePoint p(std::sin(theta), 0.0, std::cos(theta));
            PoincarePoint p2 = induced_sphere_map(m, p);
            double theta2 = 2.0 * std::atan(std::exp(-alpha) * std::tan(theta / 2.0));
            CHECK(std::abs(sphere_distance(p2, PoincarePoint::zhat()) - theta2) < 1e-12);
            CHECK(std::abs(p2.s.y) < 1e-15);  // stays on the meridian
        }
    }
}

TEST_CASE("physical absorbers never amplify") {
    oracle::Rng rng(15);
    for (int k = 0; k < 200; ++k) {
        double alpha = rng.uniform(0.0, 3.0);
        // alpha0 >= alpha/2 keeps both eigenvalue exponents non-positive.
        double alpha0 = alpha / 2.0 + rng.uniform(0.0, 1.0);
        AbsorberSpec a(rng.point(), alpha, alpha0);
        JonesVector v = jones_of_poincare(rng.point());
        AppliedState out = apply_element(absorber_matrix(a), v);
        CHECK(out.intensity_ratio <= 1.0 + 1e-12);
    }
    // Retarders preserve intensity exactly.
    for (int k = 0; k < 50; ++k) {
        RetarderSpec r(rng.point(), rng.uniform(-6.0, 6.0));
        JonesVector v = jones_of_poincare(rng.point());
        AppliedState out = apply_element(retarder_matrix(r), v);
        CHECK(out.intensity_ratio == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(PoincarePoint(0.5, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(PoincarePoint::normalized(Vec3{0, 0, 0}), std::domain_error);
    CHECK_THROWS_AS(JonesVector(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(AbsorberSpec(PoincarePoint::zhat(), -0.1), std::domain_error);
    CHECK_THROWS_AS(AbsorberSpec(PoincarePoint::zhat(), 1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(RetarderSpec(PoincarePoint::zhat(), std::nan("")), std::domain_error);

    // Numerically projective absorbers are rejected by the sphere map.
    JonesMatrix huge = absorber_matrix(AbsorberSpec(PoincarePoint::zhat(), 80.0));
    CHECK_THROWS_AS(induced_sphere_map(huge, PoincarePoint::xhat()), std::domain_error);
}
