#include "schottky/qcmod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schottky::qc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double agm(double a, double b) {
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-17 * a; ++i) {
        const double next_a = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next_a;
    }
    return 0.5 * (a + b);
}

/// Adaptive Simpson, local tolerance control.
double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
    struct Impl {
        const std::function<double(double)>& f;
        double run(double a, double b, double fa, double fm, double fb, double whole, double eps,
                   int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
                return left + right + (left + right - whole) / 15.0;
            return run(a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
                   run(m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
        }
    };
    if (a == b)
        return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Impl{f}.run(a, b, fa, fm, fb, whole, eps, 48);
}

} // namespace

Annulus::Annulus(Complex center_, double r1_, double r2_) : center(center_), r1(r1_), r2(r2_) {
    if (!(r1_ > 0.0) || !(r2_ > r1_))
        raise(ErrorKind::OutOfDomain, "annulus requires 0 < r1 < r2");
}

double Annulus::modulus() const { return std::log(r2 / r1); }

double Annulus::core_radius() const { return std::sqrt(r1 * r2); }

double elliptic_k(double k) {
    if (!(k >= 0.0) || k >= 1.0)
        raise(ErrorKind::OutOfDomain, "elliptic_k requires k in [0,1)");
    return kPi / (2.0 * agm(1.0, std::sqrt(1.0 - k * k)));
}

double mu(double r) {
    if (!(r > 0.0) || !(r < 1.0))
        raise(ErrorKind::OutOfDomain, "mu requires r in (0,1)");
    // mu(r) = (pi/2) K(r') / K(r) = (pi/2) AGM(1, r') / AGM(1, r).
    const double rp = std::sqrt((1.0 - r) * (1.0 + r));
    return kPi / 2.0 * agm(1.0, rp) / agm(1.0, r);
}

double mu_inv(double m) {
    if (!(m > 0.0))
        raise(ErrorKind::OutOfDomain, "mu_inv requires m > 0");
    // mu decreases from +inf (r -> 0) to 0 (r -> 1); bisect in log r.
    double lo = std::log(1e-15);
    double hi = -1e-15;
    if (mu(std::exp(lo)) < m)
        return std::exp(lo); // m beyond double resolution of the bracket
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mu(std::exp(mid)) > m)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double inner_annulus(double mod_w) {
    if (!(mod_w > 0.0))
        raise(ErrorKind::OutOfDomain, "inner_annulus requires a positive modulus");
    return mu_inv(mod_w);
}

DerivativeBoundReport check_derivative_bound(const Moebius& f, const Annulus& a1,
                                             const Annulus& a2, int samples) {
    if (samples < 8)
        raise(ErrorKind::OutOfDomain, "need at least 8 samples");

    DerivativeBoundReport report;
    report.mod_a1 = a1.modulus();
    report.mod_a2 = a2.modulus();
    const double core1 = a1.core_radius();
    const double core2 = a2.core_radius();
    const double tolerance = 1e-6 * std::max(1.0, core2);

    // Core circle maps onto the core circle.
    for (int i = 0; i < samples; ++i) {
        const double theta = 2.0 * kPi * i / samples;
        const Complex z = a1.center + std::polar(core1, theta);
        const SpherePoint w = f(z);
        if (w.is_infinity() || std::abs(std::abs(w.value() - a2.center) - core2) > tolerance)
            raise(ErrorKind::HypothesisViolated, "core circle does not map onto the core circle");
        report.max_derivative = std::max(report.max_derivative, f.derivative_modulus(z));
    }

    // f(A1) stays inside A2 (sampled on interior rings).
    const int rings = 7;
    for (int k = 0; k < rings; ++k) {
        const double u = (k + 0.5) / rings;
        const double radius = a1.r1 * std::pow(a1.r2 / a1.r1, u);
        for (int i = 0; i < samples; ++i) {
            const double theta = 2.0 * kPi * (i + 0.25) / samples;
            const Complex z = a1.center + std::polar(radius, theta);
            const SpherePoint w = f(z);
            if (w.is_infinity())
                raise(ErrorKind::HypothesisViolated, "image leaves the target annulus");
            const double rho = std::abs(w.value() - a2.center);
            if (rho < a2.r1 - tolerance || rho > a2.r2 + tolerance)
                raise(ErrorKind::HypothesisViolated, "image leaves the target annulus");
        }
    }

    report.bound = 4.0 * report.mod_a2 / report.mod_a1 * (core2 / core1);
    report.pass = report.max_derivative <= report.bound + 1e-9;
    return report;
}

BoundaryProfile BoundaryProfile::identity() {
    return BoundaryProfile([](double) { return 1.0; });
}

BoundaryProfile BoundaryProfile::cosine(double amplitude, int mode) {
    return BoundaryProfile(
        [amplitude, mode](double theta) { return 1.0 + amplitude * std::cos(mode * theta); });
}

CollarMap::CollarMap(BoundaryProfile profile, double r) : profile_(std::move(profile)), r_(r) {}

double CollarMap::angular_integral(double theta) const {
    return integrate([this](double s) { return profile_.rho(s) - 1.0; }, 0.0, theta, 1e-11);
}

Complex CollarMap::polar(double t, double theta) const {
    const double beta = (r_ - t) / (r_ - 1.0);
    return std::polar(t, theta + beta * angular_integral(theta));
}

Complex CollarMap::operator()(Complex z) const { return polar(std::abs(z), std::arg(z)); }

double beltrami_modulus(const CollarMap& map, Complex z, double step) {
    const Complex hx = (map(z + step) - map(z - step)) / (2.0 * step);
    const Complex hy = (map(z + Complex(0.0, step)) - map(z - Complex(0.0, step))) / (2.0 * step);
    const Complex fz = (hx - Complex(0.0, 1.0) * hy) / 2.0;
    const Complex fzbar = (hx + Complex(0.0, 1.0) * hy) / 2.0;
    return std::abs(fzbar) / std::abs(fz);
}

CollarInterpolation collar_interpolation(const BoundaryProfile& profile, double r, int grid) {
    if (!(r > 1.0 + 1e-6))
        raise(ErrorKind::OutOfDomain, "collar requires outer radius > 1 + 1e-6");
    if (grid < 8)
        raise(ErrorKind::OutOfDomain, "grid too small");

    // The angular integrand (r-t)/(r-1) (rho - 1) + 1 is an affine function
    // of t, so positivity on the collar reduces to rho > 0 on a grid.
    const int probes = std::max(512, 8 * grid);
    for (int i = 0; i < probes; ++i) {
        const double theta = 2.0 * kPi * i / probes;
        if (!(profile.rho(theta) > 1e-9))
            raise(ErrorKind::NotAHomeomorphism,
                  "profile derivative not bounded away from zero; interpolation degenerates");
    }

    CollarMap map(profile, r);

    // The profile must close up: arg H(e^{2 pi i}) = 2 pi.
    if (std::abs(map.angular_integral(2.0 * kPi)) > 1e-8)
        raise(ErrorKind::OutOfDomain, "profile derivative must integrate to 2 pi");

    CollarReport report;
    report.grid = grid;
    const double h = report.fd_step;

    double max_mu = 0.0;
    bool jacobian_positive = true;
#pragma omp parallel for schedule(static) reduction(max : max_mu) reduction(&& : jacobian_positive)
    for (int i = 0; i < grid; ++i) {
        const double t = 1.0 + (r - 1.0) * (i + 0.5) / grid;
        for (int j = 0; j < grid; ++j) {
            const double theta = 2.0 * kPi * j / grid;
            const Complex z = std::polar(t, theta);
            const Complex hx = (map(z + h) - map(z - h)) / (2.0 * h);
            const Complex hy = (map(z + Complex(0.0, h)) - map(z - Complex(0.0, h))) / (2.0 * h);
            const Complex fz = (hx - Complex(0.0, 1.0) * hy) / 2.0;
            const Complex fzbar = (hx + Complex(0.0, 1.0) * hy) / 2.0;
            max_mu = std::max(max_mu, std::abs(fzbar) / std::abs(fz));
            jacobian_positive = jacobian_positive && (std::norm(fz) - std::norm(fzbar) > 0.0);
        }
    }
    report.max_beltrami = max_mu;
    report.jacobian_positive = jacobian_positive;
    report.dilatation = max_mu < 1.0 ? (1.0 + max_mu) / (1.0 - max_mu)
                                     : std::numeric_limits<double>::infinity();
    return CollarInterpolation{map, report};
}

} // namespace schottky::qc
