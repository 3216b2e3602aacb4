#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "schottky/moebius.hpp"

using namespace schottky;

namespace {

const SpherePoint kProbes[] = {
    SpherePoint::finite({0.0, 0.0}),  SpherePoint::finite({1.0, 0.0}),
    SpherePoint::finite({-1.0, 0.0}), SpherePoint::finite({0.0, 1.0}),
    SpherePoint::finite({2.0, 3.0}),  SpherePoint::finite({-0.7, 0.4}),
    SpherePoint::infinity(),
};

double action_distance(const Moebius& f, const Moebius& g) {
    double worst = 0.0;
    for (const auto& p : kProbes)
        worst = std::max(worst, chordal_distance(f(p), g(p)));
    return worst;
}

Moebius doubling() { return Moebius(2.0, 0.0, 0.0, 1.0); }
Moebius shift_one() { return Moebius(1.0, 1.0, 0.0, 1.0); }
Moebius inversion() { return Moebius(0.0, 1.0, 1.0, 0.0); }

} // namespace

TEST_CASE("composition laws") {
    const Moebius g = doubling();
    CHECK(action_distance(Moebius::identity() * g, g) < 1e-12);
    CHECK(action_distance(g * g.inverse(), Moebius::identity()) < 1e-10);

    // (z -> 2z) after (z -> z + 1) at z = 1.
    const Moebius comp = doubling() * shift_one();
    CHECK(comp(Complex(1.0, 0.0)).value().real() == doctest::Approx(4.0).epsilon(1e-12));

    oracle::Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        const Moebius a = rng.moebius(), b = rng.moebius(), c = rng.moebius();
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const SpherePoint z = SpherePoint::finite(rng.box(5.0));
            worst = std::max(worst, chordal_distance(((a * b) * c)(z), (a * (b * c))(z)));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("normalization invariant") {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const Moebius m = rng.moebius();
        const Complex det = m.a() * m.d() - m.b() * m.c();
        CHECK(std::abs(det - 1.0) < 1e-12);
    }
}

TEST_CASE("point action") {
    CHECK(chordal_distance(Moebius::identity()(Complex(0.0, 1.0)),
                           SpherePoint::finite({0.0, 1.0})) == 0.0);
    CHECK(inversion()(Complex(2.0, 0.0)).value().real() == doctest::Approx(0.5));
    CHECK(inversion()(Complex(0.0, 0.0)).is_infinity());
    CHECK(inversion()(SpherePoint::infinity()).value() == Complex(0.0, 0.0));
}

TEST_CASE("circle action") {
    const OrientedCircle unit({0.0, 0.0}, 1.0);
    const OrientedCircle id_image = apply_circle(Moebius::identity(), unit);
    CHECK(std::abs(id_image.center) < 1e-15);
    CHECK(id_image.radius == doctest::Approx(1.0));

    const OrientedCircle c3({3.0, 0.0}, 1.0);
    const OrientedCircle inv_image = apply_circle(inversion(), c3);
    CHECK(inv_image.center.real() == doctest::Approx(3.0 / 8.0).epsilon(1e-12));
    CHECK(inv_image.center.imag() == doctest::Approx(0.0));
    CHECK(inv_image.radius == doctest::Approx(1.0 / 8.0).epsilon(1e-12));

    CHECK_THROWS_AS(apply_circle(inversion(), OrientedCircle({1.0, 0.0}, 1.0)), Error);
    try {
        apply_circle(inversion(), OrientedCircle({1.0, 0.0}, 1.0));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ImageIsLine);
    }
}

TEST_CASE("circle action agrees with the three-point oracle") {
    oracle::Rng rng(11);
    int checked = 0;
    while (checked < 200) {
        const Moebius g = rng.moebius();
        const OrientedCircle c = rng.circle();
        OrientedCircle image;
        try {
            image = apply_circle(g, c);
        } catch (const Error&) {
            continue; // circle through the pole; oracle would also degenerate
        }
        const OrientedCircle expected = oracle::image_circle_three_points(g, c);
        const double scale = std::max(1.0, expected.radius);
        CHECK(std::abs(image.center - expected.center) < 1e-9 * scale);
        CHECK(std::abs(image.radius - expected.radius) < 1e-9 * scale);
        ++checked;
    }
}

TEST_CASE("classification") {
    const Classification parabolic = classify(shift_one());
    CHECK(parabolic.type == MoebiusClass::Parabolic);
    CHECK(parabolic.trace_squared.real() == doctest::Approx(4.0));

    const Classification loxo = classify(doubling());
    CHECK(loxo.type == MoebiusClass::Loxodromic);
    CHECK(loxo.trace_squared.real() == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(loxo.multiplier_modulus == doctest::Approx(2.0).epsilon(1e-12));

    const Classification elliptic = classify(Moebius(Complex(0.0, 1.0), 0.0, 0.0, 1.0));
    CHECK(elliptic.type == MoebiusClass::Elliptic);
    CHECK(elliptic.trace_squared.real() == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(classify(Moebius::identity()).type == MoebiusClass::Identity);
}

TEST_CASE("fixed points") {
    const FixedPoints fp = fixed_points(doubling());
    CHECK(fp.first.is_infinity());
    CHECK(std::abs(fp.second.value()) < 1e-14);

    const FixedPoints par = fixed_points(shift_one());
    CHECK(par.single);
    CHECK(par.first.is_infinity());

    CHECK_THROWS_AS(fixed_points(Moebius::identity()), Error);
}

TEST_CASE("chordal distance") {
    CHECK(chordal_distance(SpherePoint::finite({0, 0}), SpherePoint::infinity()) ==
          doctest::Approx(2.0));
    CHECK(chordal_distance(Complex(1, 0), Complex(-1, 0)) == doctest::Approx(2.0));
    CHECK(chordal_distance(Complex(0, 0), Complex(1, 0)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(chordal_distance(SpherePoint::infinity(), SpherePoint::infinity()) == 0.0);
}

TEST_CASE("spherical diameter") {
    CHECK(spherical_diameter(OrientedCircle({0, 0}, 1.0)) == doctest::Approx(2.0));
    CHECK(spherical_diameter(OrientedCircle({0, 0}, 0.5)) == doctest::Approx(1.6).epsilon(1e-12));

    // Invariance under rotations fixing 0 and infinity.
    oracle::Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const OrientedCircle c = rng.circle();
        const Moebius rot = Moebius(std::polar(1.0, rng.uniform(0.0, 6.28)), 0.0, 0.0, 1.0);
        const OrientedCircle rotated = apply_circle(rot, c);
        CHECK(spherical_diameter(c) == doctest::Approx(spherical_diameter(rotated)).epsilon(1e-11));
    }
}

TEST_CASE("diameter 2 exactly for great circles") {
    oracle::Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const OrientedCircle c = rng.circle();
        const double diam = spherical_diameter(c);
        CHECK(diam <= 2.0 + 1e-12);
        const bool great = std::abs(c.radius * c.radius - std::norm(c.center) - 1.0) < 1e-9;
        if (great)
            CHECK(diam == doctest::Approx(2.0).epsilon(1e-9));
        if (diam > 2.0 - 1e-12)
            CHECK(std::abs(c.radius * c.radius - std::norm(c.center) - 1.0) < 1e-6);
    }
    // Explicit great circle away from the origin.
    const double m = 0.8;
    const OrientedCircle great({m, 0.0}, std::sqrt(1.0 + m * m));
    CHECK(spherical_diameter(great) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("plane distance") {
    // Concentric circles of radii 1 and e span planes at hyperbolic distance 1.
    const double e = std::exp(1.0);
    const PlaneDistance conc = plane_distance(OrientedCircle({0, 0}, 1.0), OrientedCircle({0, 0}, e));
    CHECK(conc.hyperbolic == doctest::Approx(1.0).epsilon(1e-12));

    const OrientedCircle left({-2.0, 0.0}, 1.0);
    const OrientedCircle right({2.0, 0.0}, 1.0);
    const PlaneDistance pd = plane_distance(left, right);
    CHECK(pd.inversive == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(pd.hyperbolic == doctest::Approx(std::acosh(7.0)).epsilon(1e-12));

    // Internally tangent circles: |0 - 0.5| + 0.5 = 1.
    CHECK_THROWS_AS(plane_distance(OrientedCircle({0, 0}, 1.0), OrientedCircle({0.5, 0.0}, 0.5)),
                    Error);
    CHECK_THROWS_AS(plane_distance(OrientedCircle({0, 0}, 1.0), OrientedCircle({1.5, 0.0}, 1.0)),
                    Error);
}

TEST_CASE("plane distance matches the geodesic minimization oracle") {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 12; ++trial) {
        // Disjoint circles centered on the real axis.
        const double r1 = rng.uniform(0.3, 1.2);
        const double r2 = rng.uniform(0.3, 1.2);
        const double gap = rng.uniform(0.05, 2.0);
        const OrientedCircle c1({0.0, 0.0}, r1);
        const OrientedCircle c2({r1 + r2 + gap, 0.0}, r2);
        const double expected = oracle::geodesic_distance_real_circles(c1, c2);
        CHECK(plane_distance(c1, c2).hyperbolic == doctest::Approx(expected).epsilon(1e-7));
    }
}

TEST_CASE("plane distance is a Moebius invariant") {
    oracle::Rng rng(17);
    int done = 0;
    while (done < 100) {
        const auto [c1, c2] = rng.disjoint_pair();
        const Moebius m = rng.moebius();
        OrientedCircle i1, i2;
        try {
            i1 = apply_circle(m, c1);
            i2 = apply_circle(m, c2);
        } catch (const Error&) {
            continue; // image is a line; invariance only claimed for circle images
        }
        const PlaneDistance before = plane_distance(c1, c2);
        const PlaneDistance after = plane_distance(i1, i2);
        CHECK(std::abs(before.inversive - after.inversive) <
              1e-9 * std::max(1.0, before.inversive));
        ++done;
    }
}

TEST_CASE("canonical pairing: worked example") {
    const OrientedCircle c({-2.0, 0.0}, 1.0);
    const OrientedCircle cp({2.0, 0.0}, 1.0);
    const Moebius g = pair_circles(c, cp, 0.0);

    const double s3 = std::sqrt(3.0);
    const FixedPoints fp = fixed_points(g);
    CHECK(std::abs(fp.first.value() - Complex(s3, 0.0)) < 1e-10);
    CHECK(std::abs(fp.second.value() - Complex(-s3, 0.0)) < 1e-10);

    const Classification cls = classify(g);
    CHECK(cls.type == MoebiusClass::Loxodromic);
    const double expected_multiplier = 7.0 + 4.0 * s3;
    CHECK(std::abs(cls.multiplier_modulus - expected_multiplier) <
          1e-9 * expected_multiplier);

    CHECK(std::abs(g(Complex(-1.0, 0.0)).value() - Complex(1.0, 0.0)) < 1e-10);

    // Translation length equals the plane distance.
    CHECK(std::log(cls.multiplier_modulus) ==
          doctest::Approx(plane_distance(c, cp).hyperbolic).epsilon(1e-10));

    // g maps c onto c_prime (three-point check).
    const OrientedCircle image = apply_circle(g, c);
    CHECK(std::abs(image.center - cp.center) < 1e-10);
    CHECK(std::abs(image.radius - cp.radius) < 1e-10);
}

TEST_CASE("canonical pairing: symmetry and error case") {
    oracle::Rng rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        const auto [c, cp] = rng.disjoint_pair();
        const Moebius fwd = pair_circles(c, cp, 0.0);
        const Moebius bwd = pair_circles(cp, c, 0.0);
        CHECK(action_distance(bwd, fwd.inverse()) < 1e-9);
    }
    CHECK_THROWS_AS(pair_circles(OrientedCircle({0, 0}, 1.0), OrientedCircle({1.0, 0.0}, 1.0)),
                    Error);
    // Nested discs are rejected as well.
    CHECK_THROWS_AS(pair_circles(OrientedCircle({0, 0}, 3.0), OrientedCircle({0.5, 0.0}, 1.0)),
                    Error);
}

TEST_CASE("pairing contract on sampled points") {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const auto [c, cp] = rng.disjoint_pair();
        const double twist = rng.uniform(-3.0, 3.0);
        const Moebius g = pair_circles(c, cp, twist);
        for (int i = 0; i < 200; ++i) {
            const double theta = rng.uniform(0.0, 6.2831853071795864769);
            const double factor = (i % 2 == 0) ? rng.uniform(1.001, 4.0) : rng.uniform(0.05, 0.999);
            const Complex z = c.center + std::polar(factor * c.radius, theta);
            if (chordal_distance(SpherePoint::finite(z),
                                 SpherePoint::finite(c.center + std::polar(c.radius, theta))) < 1e-6)
                continue;
            const SpherePoint w = g(z);
            const double dist_to_cp =
                w.is_infinity() ? std::numeric_limits<double>::infinity()
                                : std::abs(w.value() - cp.center);
            if (factor > 1.0)
                CHECK(dist_to_cp < cp.radius + 1e-9); // exterior -> interior
            else
                CHECK(dist_to_cp > cp.radius - 1e-9); // interior -> exterior
        }
        // Infinity lands strictly inside c_prime.
        const SpherePoint w_inf = g(SpherePoint::infinity());
        CHECK(std::abs(w_inf.value() - cp.center) < cp.radius);
    }
}

TEST_CASE("twist rotates about the axis without changing the contract") {
    const OrientedCircle c({-2.0, 0.0}, 1.0);
    const OrientedCircle cp({2.0, 0.0}, 1.0);
    const Moebius g0 = pair_circles(c, cp, 0.0);
    const Moebius g1 = pair_circles(c, cp, 1.25);
    CHECK(action_distance(g0, g1) > 1e-3); // genuinely different maps
    const OrientedCircle image = apply_circle(g1, c);
    CHECK(std::abs(image.center - cp.center) < 1e-10);
    CHECK(std::abs(image.radius - cp.radius) < 1e-10);
    // Same fixed points, same translation length.
    const FixedPoints f0 = fixed_points(g0);
    const FixedPoints f1 = fixed_points(g1);
    CHECK(std::abs(f0.first.value() - f1.first.value()) < 1e-10);
    CHECK(classify(g1).multiplier_modulus ==
          doctest::Approx(classify(g0).multiplier_modulus).epsilon(1e-10));
}
