#include "schottky/moebius.hpp"

#include <cmath>

namespace schottky {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::ImageIsLine: return "ImageIsLine";
    case ErrorKind::DiscsOverlapOrNested: return "DiscsOverlapOrNested";
    case ErrorKind::IsIdentity: return "IsIdentity";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InfeasibleMargin: return "InfeasibleMargin";
    case ErrorKind::BadLengths: return "BadLengths";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotAHomeomorphism: return "NotAHomeomorphism";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IoError: return "IoError";
    }
    return "UnknownError";
}

const char* moebius_class_name(MoebiusClass c) {
    switch (c) {
    case MoebiusClass::Identity: return "identity";
    case MoebiusClass::Parabolic: return "parabolic";
    case MoebiusClass::Elliptic: return "elliptic";
    case MoebiusClass::Loxodromic: return "loxodromic";
    }
    return "unknown";
}

SpherePoint SpherePoint::finite(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        raise(ErrorKind::OutOfDomain, "finite sphere point with non-finite coordinates");
    SpherePoint p;
    p.value_ = z;
    p.infinite_ = false;
    return p;
}

Moebius::Moebius(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    const Complex det = a_ * d_ - b_ * c_;
    if (std::abs(det) < 1e-300)
        raise(ErrorKind::OutOfDomain, "singular matrix is not a Moebius transformation");
    const Complex s = std::sqrt(det);
    a_ /= s;
    b_ /= s;
    c_ /= s;
    d_ /= s;
}

Moebius operator*(const Moebius& f, const Moebius& g) {
    Moebius out;
    out.a_ = f.a_ * g.a_ + f.b_ * g.c_;
    out.b_ = f.a_ * g.b_ + f.b_ * g.d_;
    out.c_ = f.c_ * g.a_ + f.d_ * g.c_;
    out.d_ = f.c_ * g.b_ + f.d_ * g.d_;
    const Complex det = out.a_ * out.d_ - out.b_ * out.c_;
    if (std::abs(det - 1.0) < 0.5) {
        const Complex s = std::sqrt(det);
        out.a_ /= s;
        out.b_ /= s;
        out.c_ /= s;
        out.d_ /= s;
    }
    return out;
}

Moebius Moebius::scaling(Complex lambda) {
    if (std::abs(lambda) < 1e-300)
        raise(ErrorKind::OutOfDomain, "scaling by zero");
    return Moebius(lambda, 0.0, 0.0, 1.0);
}

Moebius Moebius::to_zero_infinity(Complex p, Complex q) {
    return Moebius(1.0, -p, 1.0, -q);
}

SpherePoint Moebius::operator()(const SpherePoint& z) const {
    if (z.is_infinity()) {
        if (std::abs(c_) == 0.0)
            return SpherePoint::infinity();
        const Complex w = a_ / c_;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            return SpherePoint::infinity();
        return SpherePoint::finite(w);
    }
    const Complex num = a_ * z.value() + b_;
    const Complex den = c_ * z.value() + d_;
    if (std::abs(den) == 0.0)
        return SpherePoint::infinity();
    const Complex w = num / den;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        return SpherePoint::infinity();
    return SpherePoint::finite(w);
}

double Moebius::derivative_modulus(Complex z) const {
    const double den = std::norm(c_ * z + d_);
    return 1.0 / den;
}

OrientedCircle::OrientedCircle(Complex center_, double radius_) : center(center_), radius(radius_) {
    if (!(radius_ > 0.0) || !std::isfinite(radius_) || !std::isfinite(center_.real()) ||
        !std::isfinite(center_.imag()))
        raise(ErrorKind::OutOfDomain, "circle requires a finite center and positive radius");
}

Classification classify(const Moebius& g) {
    Classification result;
    result.trace_squared = g.trace_squared();

    const double ntol = tol::classification;
    if (std::abs(g.b()) <= ntol && std::abs(g.c()) <= ntol && std::abs(g.a() - g.d()) <= ntol) {
        result.type = MoebiusClass::Identity;
        return result;
    }

    const Complex x = result.trace_squared;
    if (std::abs(x - 4.0) <= ntol) {
        result.type = MoebiusClass::Parabolic;
        return result;
    }
    if (std::abs(x.imag()) <= ntol && x.real() >= -ntol && x.real() <= 4.0) {
        result.type = MoebiusClass::Elliptic;
        return result;
    }

    result.type = MoebiusClass::Loxodromic;
    // tr^2 - 2 = lambda + 1/lambda; pick the root with |lambda| > 1.
    const Complex s = x - 2.0;
    const Complex root = std::sqrt(s * s - 4.0);
    const Complex l1 = (s + root) / 2.0;
    const Complex l2 = (s - root) / 2.0;
    result.multiplier_modulus = std::max(std::abs(l1), std::abs(l2));
    return result;
}

OrientedCircle apply_circle(const Moebius& g, const OrientedCircle& c) {
    const double scale = std::abs(g.a()) + std::abs(g.b()) + std::abs(g.c()) + std::abs(g.d());
    if (std::abs(g.c()) <= 1e-15 * scale) {
        // Affine map z -> (a z + b) / d.
        const Complex w = (g.a() * c.center + g.b()) / g.d();
        const double r = std::abs(g.a() / g.d()) * c.radius;
        return OrientedCircle(w, r);
    }

    const Complex pole = -g.d() / g.c();
    const Complex offset = pole - c.center;
    const double dist = std::abs(offset);
    if (std::abs(dist - c.radius) <= tol::geometric * std::max(1.0, c.radius))
        raise(ErrorKind::ImageIsLine, "circle passes through the pole; image is a line");

    // The pole and its inversion in c are symmetric in c, so their images
    // (infinity and g(z_sym)) are symmetric in the image circle: g(z_sym) is
    // its center. A pole at the center inverts to infinity.
    const bool pole_at_center = dist <= 1e-14 * std::max(1.0, c.radius);
    const SpherePoint z_sym =
        pole_at_center
            ? SpherePoint::infinity()
            : SpherePoint::finite(c.center + (c.radius * c.radius) / std::conj(offset));
    const SpherePoint image_center = g(z_sym);
    if (image_center.is_infinity())
        raise(ErrorKind::ImageIsLine, "image center at infinity");

    // Radius from the image of the circle point farthest from the pole.
    const Complex far_point =
        pole_at_center ? c.center + c.radius : c.center - (c.radius / dist) * offset;
    const SpherePoint image_point = g(far_point);
    const double r = std::abs(image_point.value() - image_center.value());
    return OrientedCircle(image_center.value(), r);
}

FixedPoints fixed_points(const Moebius& g) {
    const Classification cls = classify(g);
    if (cls.type == MoebiusClass::Identity)
        raise(ErrorKind::IsIdentity, "identity fixes every point");

    FixedPoints result;
    const double scale = std::abs(g.a()) + std::abs(g.b()) + std::abs(g.c()) + std::abs(g.d());

    if (std::abs(g.c()) <= 1e-15 * scale) {
        // Infinity is fixed; the other root is b / (d - a).
        if (cls.type == MoebiusClass::Parabolic) {
            result.first = SpherePoint::infinity();
            result.second = result.first;
            result.single = true;
            return result;
        }
        const Complex z = g.b() / (g.d() - g.a());
        const bool infinity_attracting = std::abs(g.a()) > std::abs(g.d());
        if (infinity_attracting) {
            result.first = SpherePoint::infinity();
            result.second = SpherePoint::finite(z);
        } else {
            result.first = SpherePoint::finite(z);
            result.second = SpherePoint::infinity();
        }
        return result;
    }

    if (cls.type == MoebiusClass::Parabolic) {
        const Complex z = (g.a() - g.d()) / (2.0 * g.c());
        result.first = SpherePoint::finite(z);
        result.second = result.first;
        result.single = true;
        return result;
    }

    const Complex root = std::sqrt(g.trace_squared() - 4.0);
    const Complex z1 = (g.a() - g.d() + root) / (2.0 * g.c());
    const Complex z2 = (g.a() - g.d() - root) / (2.0 * g.c());
    // |g'(z)| = 1 / |cz + d|^2: the attracting fixed point has modulus < 1.
    const double m1 = std::abs(g.c() * z1 + g.d());
    const double m2 = std::abs(g.c() * z2 + g.d());
    if (m1 >= m2) {
        result.first = SpherePoint::finite(z1);
        result.second = SpherePoint::finite(z2);
    } else {
        result.first = SpherePoint::finite(z2);
        result.second = SpherePoint::finite(z1);
    }
    return result;
}

double chordal_distance(const SpherePoint& z, const SpherePoint& w) {
    if (z.is_infinity() && w.is_infinity())
        return 0.0;
    if (z.is_infinity())
        return 2.0 / std::sqrt(1.0 + std::norm(w.value()));
    if (w.is_infinity())
        return 2.0 / std::sqrt(1.0 + std::norm(z.value()));
    const double num = 2.0 * std::abs(z.value() - w.value());
    const double den = std::sqrt((1.0 + std::norm(z.value())) * (1.0 + std::norm(w.value())));
    return num / den;
}

double spherical_diameter(const OrientedCircle& c) {
    // Rotating the center onto the positive real axis, the extremal pair is
    // (|center| - r, |center| + r).
    const double m = std::abs(c.center);
    const double lo = m - c.radius;
    const double hi = m + c.radius;
    return 4.0 * c.radius / std::sqrt((1.0 + lo * lo) * (1.0 + hi * hi));
}

double inversive_distance_signed(const OrientedCircle& c1, const OrientedCircle& c2) {
    const double d2 = std::norm(c1.center - c2.center);
    return (d2 - c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * c1.radius * c2.radius);
}

PlaneDistance plane_distance(const OrientedCircle& c1, const OrientedCircle& c2) {
    const double signed_inv = inversive_distance_signed(c1, c2);
    const double inv = std::abs(signed_inv);
    if (inv < 1.0 + 1e-12)
        raise(ErrorKind::DiscsOverlapOrNested, "circles are tangent or intersecting");
    return PlaneDistance{inv, std::acosh(inv)};
}

std::pair<Complex, Complex> common_perpendicular_endpoints(const OrientedCircle& c1,
                                                           const OrientedCircle& c2) {
    // The composition of the two circle inversions is a Moebius map whose
    // axis is the common perpendicular of the spanning planes; its fixed
    // points are the endpoints. Inversion in (p, r) acts as
    // z -> (p conj(z) + r^2 - |p|^2) / (conj(z) - conj(p)).
    const Complex p1 = c1.center, p2 = c2.center;
    const Complex e1 = c1.radius * c1.radius - std::norm(p1);
    const Complex e2 = c2.radius * c2.radius - std::norm(p2);

    // M2 * conj(M1) where M_i = [p_i, e_i; 1, -conj(p_i)].
    const Complex a = p2 * std::conj(p1) + e2;
    const Complex b = p2 * std::conj(e1) - e2 * p1;
    const Complex c = std::conj(p1) - std::conj(p2);
    const Complex d = std::conj(e1) + std::conj(p2) * p1;

    if (std::abs(c) < 1e-15 * (std::abs(a) + std::abs(d)))
        raise(ErrorKind::DiscsOverlapOrNested,
              "no finite common perpendicular endpoints (concentric circles)");

    const Complex tr2 = (a + d) * (a + d) / (a * d - b * c);
    const Complex root = std::sqrt((a - d) * (a - d) + 4.0 * b * c);
    Complex z1 = (a - d + root) / (2.0 * c);
    Complex z2 = (a - d - root) / (2.0 * c);
    (void)tr2;
    if (z2.real() < z1.real() || (z2.real() == z1.real() && z2.imag() < z1.imag()))
        std::swap(z1, z2);
    return {z1, z2};
}

namespace {

/// Core of pair_circles; assumes the configuration is already centered near
/// the origin so the inversion algebra keeps full relative precision.
Moebius pair_circles_centered(const OrientedCircle& c, const OrientedCircle& c_prime,
                              double twist) {
    const auto [p, q] = common_perpendicular_endpoints(c, c_prime);
    const Moebius phi = Moebius::to_zero_infinity(p, q);

    // Both image circles are centered at 0 in exact arithmetic; the modulus
    // over symmetric sample points recovers the radii.
    const auto model_radius = [&phi](const OrientedCircle& circle) {
        const Complex offsets[4] = {Complex(circle.radius, 0.0), Complex(-circle.radius, 0.0),
                                    Complex(0.0, circle.radius), Complex(0.0, -circle.radius)};
        double log_sum = 0.0;
        for (const Complex& o : offsets)
            log_sum += std::log(std::abs(phi(circle.center + o).value()));
        return std::exp(log_sum / 4.0);
    };

    const double rho1 = model_radius(c);
    const double rho2 = model_radius(c_prime);

    // In model coordinates both circles are concentric around 0 and a pure
    // scaling by rho2/rho1 sends Ext(c) onto Int(c_prime); twist rotates
    // about the (0, infinity) axis.
    const Complex lambda = std::polar(rho2 / rho1, twist);
    return phi.inverse() * Moebius::scaling(lambda) * phi;
}

} // namespace

Moebius pair_circles(const OrientedCircle& c, const OrientedCircle& c_prime, double twist) {
    const double signed_inv = inversive_distance_signed(c, c_prime);
    if (signed_inv <= 1.0 + 1e-12)
        raise(ErrorKind::DiscsOverlapOrNested, "pairing requires disjoint closed discs");

    // Work in a frame centered between the circles: the construction is
    // translation-covariant and loses precision when small circles sit far
    // from the origin.
    const Complex shift = 0.5 * (c.center + c_prime.center);
    const Moebius local = pair_circles_centered(OrientedCircle(c.center - shift, c.radius),
                                                OrientedCircle(c_prime.center - shift, c_prime.radius),
                                                twist);
    return Moebius::translation(shift) * local * Moebius::translation(-shift);
}

} // namespace schottky
