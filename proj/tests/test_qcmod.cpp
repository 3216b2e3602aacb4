#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "schottky/qcmod.hpp"

using namespace schottky;
using namespace schottky::qc;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("AGM elliptic integral agrees with direct quadrature") {
    for (const double k : {0.05, 0.2, 0.45, 0.7, 0.9, 0.99}) {
        const double expected = oracle::elliptic_k_quadrature(k);
        CHECK(elliptic_k(k) == doctest::Approx(expected).epsilon(1e-11));
    }
    CHECK(elliptic_k(0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
}

TEST_CASE("Groetzsch modulus: symmetric point and monotonicity") {
    CHECK(std::abs(mu(1.0 / std::sqrt(2.0)) - kPi / 2.0) < 1e-10);
    CHECK(mu(0.1) > mu(0.9));

    double previous = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 50; ++i) {
        const double r = 0.01 + (0.99 - 0.01) * (i - 1) / 49.0;
        const double value = mu(r);
        CHECK(value < previous);
        previous = value;
    }

    CHECK_THROWS_AS(mu(0.0), Error);
    CHECK_THROWS_AS(mu(1.0), Error);
}

TEST_CASE("Groetzsch modulus: functional identity on a 50-point grid") {
    for (int i = 0; i < 50; ++i) {
        const double r = 0.01 + (0.99 - 0.01) * i / 49.0;
        const double rp = std::sqrt(1.0 - r * r);
        CHECK(std::abs(mu(r) * mu(rp) - kPi * kPi / 4.0) < 1e-8);
    }
}

TEST_CASE("Groetzsch modulus: small-r asymptotic log(4/r)") {
    const double r = 1e-6;
    CHECK(std::abs(mu(r) + std::log(r) - std::log(4.0)) < 1e-6);
}

TEST_CASE("mu_inv round trips and is monotone") {
    CHECK(std::abs(mu_inv(kPi / 2.0) - 1.0 / std::sqrt(2.0)) < 1e-10);
    for (const double r : {0.05, 0.3, 0.5, 0.8, 0.95})
        CHECK(std::abs(mu_inv(mu(r)) - r) < 1e-10);
    // The m-direction round trip: meaningful while r = mu_inv(m) stays
    // representably below 1 (small m pushes r within ulps of 1).
    for (const double m : {0.5, 0.7, 2.0, 5.0})
        CHECK(std::abs(mu(mu_inv(m)) - m) < 1e-10);

    // r decreases as the modulus grows.
    CHECK(mu_inv(5.0) < mu_inv(2.0));
    CHECK(mu_inv(2.0) < mu_inv(0.5));
    CHECK(mu_inv(25.0) < 1e-9);
    CHECK_THROWS_AS(mu_inv(0.0), Error);
}

TEST_CASE("inner annulus from the Groetzsch modulus") {
    CHECK(std::abs(inner_annulus(kPi / 2.0) - 1.0 / std::sqrt(2.0)) < 1e-5);

    // Round W = {rho < |z| < 1}: the returned annulus sits inside W.
    const double rho = std::exp(-kPi / 2.0);
    const double r = inner_annulus(std::log(1.0 / rho));
    CHECK(r == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(r > rho);

    // Containment for round W across moduli: r >= e^{-mod W}.
    for (const double mod_w : {0.1, 0.5, 1.0, 2.0, 4.0})
        CHECK(inner_annulus(mod_w) >= std::exp(-mod_w) - 1e-12);

    CHECK_THROWS_AS(inner_annulus(-1.0), Error);
}

TEST_CASE("derivative bound: identity and pure scaling") {
    const Annulus unit_e({0.0, 0.0}, 1.0, std::exp(1.0));
    const DerivativeBoundReport id_report =
        check_derivative_bound(Moebius::identity(), unit_e, unit_e);
    CHECK(id_report.pass);
    CHECK(id_report.max_derivative == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(id_report.bound == doctest::Approx(4.0).epsilon(1e-12));

    const Annulus scaled({0.0, 0.0}, 5.0, 5.0 * std::exp(1.0));
    const DerivativeBoundReport scale_report =
        check_derivative_bound(Moebius::scaling(5.0), unit_e, scaled);
    CHECK(scale_report.pass);
    CHECK(scale_report.max_derivative == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(scale_report.bound == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("derivative bound: hypothesis violations are detected") {
    const Annulus a1({0.0, 0.0}, 1.0, 2.0);
    const Annulus far({10.0, 0.0}, 1.0, 2.0);
    CHECK_THROWS_AS(check_derivative_bound(Moebius::translation(1.0), a1, a1), Error);
    try {
        check_derivative_bound(Moebius::scaling(3.0), a1, far);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisViolated);
    }
}

TEST_CASE("derivative bound: randomized annulus maps always pass") {
    oracle::Rng rng(0xC0FFEE);
    for (int trial = 0; trial < 200; ++trial) {
        const Complex a1 = rng.box(2.0);
        const Complex a2 = rng.box(2.0);
        const double core1 = rng.uniform(0.2, 1.5);
        const double m = rng.uniform(0.2, 2.0);
        const Annulus source(a1, core1 * std::exp(-m / 2.0), core1 * std::exp(m / 2.0));

        const bool invert = trial % 2 == 1;
        const Complex lambda = std::polar(rng.uniform(0.2, 5.0), rng.uniform(0.0, 2.0 * kPi));
        // T_{a2} o S o T_{-a1} with S a scaling or a scaled inversion maps
        // round annuli to round annuli, core to core.
        const Moebius f = Moebius::translation(a2) *
                          (invert ? Moebius(0.0, lambda, 1.0, 0.0) : Moebius::scaling(lambda)) *
                          Moebius::translation(-a1);
        const double core2 = invert ? std::abs(lambda) / core1 : std::abs(lambda) * core1;
        const double extra = rng.uniform(0.0, 1.0);
        const Annulus target(a2, core2 * std::exp(-(m + extra) / 2.0),
                             core2 * std::exp((m + extra) / 2.0));

        const DerivativeBoundReport report = check_derivative_bound(f, source, target, 128);
        CHECK(report.pass);
    }
}

TEST_CASE("collar map: identity profile gives the identity") {
    const CollarInterpolation result =
        collar_interpolation(BoundaryProfile::identity(), std::exp(1.0), 32);
    for (double t : {1.0, 1.5, 2.0, std::exp(1.0)})
        for (double theta : {0.0, 0.7, 3.1, 5.9}) {
            const Complex z = std::polar(t, theta);
            CHECK(std::abs(result.map(z) - z) < 1e-12);
        }
    CHECK(result.report.max_beltrami < 1e-6);
    CHECK(result.report.dilatation == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(result.report.jacobian_positive);
}

TEST_CASE("collar map: cosine profile matches the closed form") {
    const double r = std::exp(1.0);
    const CollarInterpolation result =
        collar_interpolation(BoundaryProfile::cosine(0.5), r, 64);
    for (int i = 0; i < 64; ++i) {
        const double t = 1.0 + (r - 1.0) * i / 63.0;
        for (int j = 0; j < 64; ++j) {
            const double theta = 2.0 * kPi * j / 64.0;
            const Complex computed = result.map.polar(t, theta);
            const Complex expected =
                std::polar(t, theta + (r - t) / (r - 1.0) * 0.5 * std::sin(theta));
            CHECK(std::abs(computed - expected) < 1e-9);
        }
    }
    CHECK(result.report.max_beltrami < 1.0);
    CHECK(result.report.jacobian_positive);

    // Boundary conditions: h on the unit circle, identity on |z| = r.
    for (int j = 0; j < 32; ++j) {
        const double theta = 2.0 * kPi * j / 32.0;
        const Complex inner = result.map.polar(1.0, theta);
        const Complex h_theta = std::polar(1.0, theta + 0.5 * std::sin(theta));
        CHECK(std::abs(inner - h_theta) < 1e-8);
        const Complex outer = result.map.polar(r, theta);
        CHECK(std::abs(outer - std::polar(r, theta)) < 1e-8);
    }
}

TEST_CASE("collar map: argument on the unit circle integrates the profile") {
    const CollarInterpolation result =
        collar_interpolation(BoundaryProfile::cosine(0.3, 2), 2.0, 32);
    for (int j = 1; j < 8; ++j) {
        const double theta = 2.0 * kPi * j / 8.0;
        const double expected = theta + 0.3 * std::sin(2.0 * theta) / 2.0; // int_0^theta rho
        CHECK(std::arg(result.map.polar(1.0, theta)) ==
              doctest::Approx(std::remainder(expected, 2.0 * kPi)).epsilon(1e-9));
    }
}

TEST_CASE("collar map: dilatation decreases with the profile amplitude") {
    double previous = std::numeric_limits<double>::infinity();
    for (const double amplitude : {0.4, 0.2, 0.1, 0.05}) {
        const CollarInterpolation result =
            collar_interpolation(BoundaryProfile::cosine(amplitude), std::exp(1.0), 32);
        CHECK(result.report.dilatation < previous);
        CHECK(result.report.jacobian_positive);
        previous = result.report.dilatation;
    }
    CHECK(previous < 1.2); // K -> 1 as the amplitude vanishes
}

TEST_CASE("collar map: jacobian positive on a 100x100 grid") {
    const CollarInterpolation result =
        collar_interpolation(BoundaryProfile::cosine(0.5), std::exp(1.0), 100);
    CHECK(result.report.jacobian_positive);
    CHECK(result.report.max_beltrami < 1.0);
}

TEST_CASE("collar map error paths") {
    CHECK_THROWS_AS(collar_interpolation(BoundaryProfile::cosine(1.2), 2.0), Error);
    try {
        collar_interpolation(BoundaryProfile::cosine(1.2), 2.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAHomeomorphism);
    }
    CHECK_THROWS_AS(collar_interpolation(BoundaryProfile::identity(), 1.0), Error);
    // A profile that fails to integrate to 2 pi cannot close up.
    CHECK_THROWS_AS(
        collar_interpolation(BoundaryProfile([](double) { return 1.1; }), 2.0), Error);
}
