#pragma once

#include <complex>
#include <optional>

#include "schottky/errors.hpp"

namespace schottky {

using Complex = std::complex<double>;

/// Tolerances shared by all modules.
namespace tol {
inline constexpr double normalization = 1e-12;
inline constexpr double geometric = 1e-9;
inline constexpr double classification = 1e-10;
} // namespace tol

/// A point of the extended plane: either a finite complex value or infinity.
class SpherePoint {
public:
    SpherePoint() : value_(0.0, 0.0), infinite_(false) {}

    static SpherePoint finite(Complex z);
    static SpherePoint infinity() {
        SpherePoint p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinity() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    /// Finite value; only meaningful when is_finite().
    Complex value() const { return value_; }

private:
    Complex value_;
    bool infinite_;
};

/// 2x2 complex matrix acting on the extended plane, kept normalized to
/// determinant 1. Composition is matrix product: (f * g)(z) = f(g(z)).
class Moebius {
public:
    Moebius() : a_(1), b_(0), c_(0), d_(1) {}

    /// Normalizes the entries so that ad - bc = 1.
    Moebius(Complex a, Complex b, Complex c, Complex d);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }

    Moebius inverse() const { return Moebius(d_, -b_, -c_, a_); }

    Complex trace() const { return a_ + d_; }
    Complex trace_squared() const { return trace() * trace(); }

    SpherePoint operator()(const SpherePoint& z) const;
    SpherePoint operator()(Complex z) const { return (*this)(SpherePoint::finite(z)); }

    /// |f'(z)| at a finite non-pole point.
    double derivative_modulus(Complex z) const;

    static Moebius identity() { return Moebius(); }
    static Moebius scaling(Complex lambda);
    static Moebius translation(Complex t) { return Moebius(1.0, t, 0.0, 1.0); }
    /// Sends p -> 0 and q -> infinity (p, q finite and distinct).
    static Moebius to_zero_infinity(Complex p, Complex q);

    /// Composition. Both operands carry determinant 1, so the product does
    /// too; the entries are renormalized only while the computed determinant
    /// is well conditioned. Long contracting products can grow entries past
    /// the point where ad - bc is numerically recoverable, and the action of
    /// the matrix is scale invariant, so those are left unscaled.
    friend Moebius operator*(const Moebius& f, const Moebius& g);

private:
    Complex a_, b_, c_, d_;
};

/// Euclidean circle whose designated interior is the bounded disc.
struct OrientedCircle {
    Complex center;
    double radius = 1.0;

    OrientedCircle() = default;
    OrientedCircle(Complex center_, double radius_);
};

enum class MoebiusClass { Identity, Parabolic, Elliptic, Loxodromic };

struct Classification {
    MoebiusClass type = MoebiusClass::Identity;
    Complex trace_squared;
    /// For loxodromic maps: |lambda| > 1 where the map is conjugate to z -> lambda z.
    double multiplier_modulus = 1.0;

    bool loxodromic() const { return type == MoebiusClass::Loxodromic; }
};

const char* moebius_class_name(MoebiusClass c);

/// Squared-trace classification with a tolerance band of tol::classification
/// around the boundary values; boundary cases resolve to the boundary class.
Classification classify(const Moebius& g);

/// Image of a circle under a Moebius map. Throws ImageIsLine when the image
/// passes through infinity (the pole of g lies on the circle within tolerance).
OrientedCircle apply_circle(const Moebius& g, const OrientedCircle& c);

struct FixedPoints {
    SpherePoint first;  // attracting for loxodromic maps
    SpherePoint second; // repelling for loxodromic maps
    bool single = false;
};

/// Fixed points of a non-identity map; loxodromic results are ordered
/// (attracting, repelling). Throws IsIdentity.
FixedPoints fixed_points(const Moebius& g);

/// Chordal metric on the extended plane: 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)),
/// extended projectively to infinity. Range [0, 2].
double chordal_distance(const SpherePoint& z, const SpherePoint& w);
inline double chordal_distance(Complex z, Complex w) {
    return chordal_distance(SpherePoint::finite(z), SpherePoint::finite(w));
}

/// Diameter of the circle in the chordal metric, in (0, 2]. The value is 2
/// exactly when the circle corresponds to a great circle on the sphere
/// (radius^2 = |center|^2 + 1).
double spherical_diameter(const OrientedCircle& c);

struct PlaneDistance {
    double inversive;  // >= 1 on success
    double hyperbolic; // arccosh(inversive)
};

/// Signed inversive distance (d^2 - r1^2 - r2^2) / (2 r1 r2). Moebius
/// invariant up to sign; > 1 for disjoint closed discs, < -1 for nested
/// circles, in [-1, 1] when the circles meet.
double inversive_distance_signed(const OrientedCircle& c1, const OrientedCircle& c2);

/// Distance in H^3 between the geodesic planes spanned by two circles.
/// Defined whenever the circles do not meet (|inversive| > 1); throws
/// DiscsOverlapOrNested for tangent or intersecting circles.
PlaneDistance plane_distance(const OrientedCircle& c1, const OrientedCircle& c2);

/// Canonical loxodromic pairing g with g(Ext c) = Int c_prime. The axis of g
/// is the common perpendicular of the two spanning planes, the translation
/// length equals plane_distance(c, c_prime).hyperbolic, and `twist`
/// post-composes a rotation by that angle about the axis. Requires the two
/// closed discs to be disjoint; throws DiscsOverlapOrNested otherwise.
Moebius pair_circles(const OrientedCircle& c, const OrientedCircle& c_prime, double twist = 0.0);

/// Endpoints of the common perpendicular geodesic of the two spanning planes
/// (both finite for disjoint closed discs; used by pair_circles).
std::pair<Complex, Complex> common_perpendicular_endpoints(const OrientedCircle& c1,
                                                           const OrientedCircle& c2);

} // namespace schottky
