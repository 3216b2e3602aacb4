#pragma once

#include <functional>

#include "schottky/moebius.hpp"

namespace schottky::qc {

/// Round annulus {r1 < |z - center| < r2}.
struct Annulus {
    Complex center;
    double r1 = 1.0;
    double r2 = 2.0;

    Annulus() = default;
    Annulus(Complex center_, double r1_, double r2_);

    double modulus() const;
    double core_radius() const; // sqrt(r1 r2); the core circle is concentric
};

/// Complete elliptic integral K(k) by arithmetic-geometric-mean iteration.
double elliptic_k(double k);

/// Conformal modulus of the Groetzsch extremal domain (unit disc slit along
/// [0, r]): mu(r) = (pi/2) K(sqrt(1-r^2)) / K(r). Strictly decreasing on
/// (0,1). Throws OutOfDomain outside (0,1).
double mu(double r);

/// Inverse of mu, solved by bisection in log r to 1e-12; round-trips with mu
/// to 1e-10. Throws OutOfDomain for m <= 0.
double mu_inv(double m);

/// Inner radius r such that the round annulus {r < |z| < 1} is contained in
/// every doubly connected domain W of the given modulus separating 0 from
/// the unit circle: r = mu_inv(mod W), so mod(A) = -log mu_inv(mod W).
double inner_annulus(double mod_w);

struct DerivativeBoundReport {
    double max_derivative = 0.0;
    double bound = 0.0;
    bool pass = false;
    double mod_a1 = 0.0; // m
    double mod_a2 = 0.0; // M
};

/// Checks |f'| <= (4 M / m)(r2 / r1) on the core circle of a1 for a Moebius
/// map with f(a1) inside a2 and core mapped to core (both verified by
/// sampling; tolerance 1e-6). r1, r2 are the core radii. Throws
/// HypothesisViolated when the sampling checks fail.
DerivativeBoundReport check_derivative_bound(const Moebius& f, const Annulus& a1,
                                             const Annulus& a2, int samples = 256);

/// Circle diffeomorphism h of the unit circle described by the modulus of
/// its derivative rho(theta) = |h'(e^{i theta})| > 0, normalized so that the
/// integral of rho over [0, 2 pi] is 2 pi and h(1) = 1.
class BoundaryProfile {
public:
    explicit BoundaryProfile(std::function<double(double)> rho) : rho_(std::move(rho)) {}

    static BoundaryProfile identity();
    /// rho(theta) = 1 + amplitude * cos(mode * theta); requires |amplitude| < 1.
    static BoundaryProfile cosine(double amplitude, int mode = 1);

    double rho(double theta) const { return rho_(theta); }

private:
    std::function<double(double)> rho_;
};

/// The interpolation H(t e^{i theta}) =
///   t exp(i integral_0^theta { (r-t)/(r-1) (rho(s) - 1) + 1 } ds)
/// on the collar {1 <= |z| <= r}: equals h on |z| = 1 and the identity on
/// |z| = r.
class CollarMap {
public:
    CollarMap(BoundaryProfile profile, double r);

    Complex polar(double t, double theta) const;
    Complex operator()(Complex z) const;

    double outer_radius() const { return r_; }
    /// P(theta) = integral_0^theta (rho - 1), by adaptive quadrature.
    double angular_integral(double theta) const;

private:
    BoundaryProfile profile_;
    double r_;
};

/// |Beltrami coefficient| of the collar map at z, by central finite
/// differences with the given step.
double beltrami_modulus(const CollarMap& map, Complex z, double step = 1e-4);

struct CollarReport {
    double max_beltrami = 0.0; // sampled max |mu_B|
    double dilatation = 1.0;   // K = (1 + max)/(1 - max)
    bool jacobian_positive = true;
    int grid = 0;
    double fd_step = 1e-4;
};

struct CollarInterpolation {
    CollarMap map;
    CollarReport report;
};

/// Builds the collar map and estimates its Beltrami coefficient by central
/// finite differences on a grid x grid sampling of the collar. Requires
/// r > 1 + 1e-6; throws NotAHomeomorphism when the angular integrand is not
/// positive (profile not bounded away from zero).
CollarInterpolation collar_interpolation(const BoundaryProfile& profile, double r, int grid = 64);

} // namespace schottky::qc
