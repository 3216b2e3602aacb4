#include "schottky/construct.hpp"

#include <algorithm>
#include <cmath>

namespace schottky::construct {

namespace {

struct Atom {
    double lo;
    double hi;
    bool degenerate() const { return hi == lo; }
};

/// Resolves the end-set spec to disjoint closed atoms on [0,1]: degenerate
/// atoms for explicit points, the retained stage-d intervals for a Cantor
/// truncation. The complementary gaps between consecutive atoms carry the
/// interval families.
std::vector<Atom> resolve_atoms(const EndSetSpec& spec) {
    std::vector<Atom> atoms;

    if (spec.cantor_depth > 0) {
        if (spec.cantor_depth > 20)
            raise(ErrorKind::SchemaError, "cantor_depth too large");
        std::vector<Atom> stage = {{0.0, 1.0}};
        for (int d = 0; d < spec.cantor_depth; ++d) {
            std::vector<Atom> next;
            for (const Atom& a : stage) {
                const double third = (a.hi - a.lo) / 3.0;
                next.push_back({a.lo, a.lo + third});
                next.push_back({a.hi - third, a.hi});
            }
            stage = std::move(next);
        }
        atoms = std::move(stage);
    }

    std::vector<double> pts = spec.points;
    std::sort(pts.begin(), pts.end());
    if (!pts.empty()) {
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i] - pts[i - 1] <= 1e-12)
                raise(ErrorKind::SchemaError, "end-set points must be distinct (gap > 1e-12)");
        if (pts.front() < 0.0 || pts.back() > 1.0) {
            // Affine normalization into [0,1].
            if (pts.size() == 1) {
                pts[0] = 0.5;
            } else {
                const double lo = pts.front(), hi = pts.back();
                for (double& p : pts)
                    p = (p - lo) / (hi - lo);
            }
        }
        for (double p : pts)
            atoms.push_back({p, p});
    }

    if (atoms.empty())
        return atoms;

    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.lo < b.lo; });
    // Merge points lying inside Cantor atoms; reject overlapping structure.
    std::vector<Atom> merged;
    for (const Atom& a : atoms) {
        if (!merged.empty() && a.lo <= merged.back().hi + 1e-12) {
            if (a.hi <= merged.back().hi + 1e-12)
                continue; // contained (a point inside a retained interval)
            raise(ErrorKind::SchemaError, "end-set atoms overlap");
        }
        merged.push_back(a);
    }
    return merged;
}

/// Interval family over the gap (alpha, beta): the
/// conjugator scales by 4 in model coordinates, the base circles sit at the
/// quarter points of the fundamental annulus {1 < |z| < 4} with radius set
/// by the margin. The modest multiplier keeps the translated circles within
/// double-precision comfort through the materialization depths in use.
ConjugatedFamily interval_family(double alpha, double beta, int range, double margin) {
    const double lambda = 4.0;
    const double u = std::pow(lambda, 0.25);
    const double v = std::pow(lambda, 0.75);
    const double rho = 0.999 * std::min({(u - 1.0) / (1.0 + margin),
                                         (v - u) / (2.0 + margin),
                                         (lambda - v) / (1.0 + margin)});
    if (!(rho > 1e-12))
        raise(ErrorKind::InfeasibleMargin, "margin leaves no room for circles");

    const Moebius phi = Moebius::to_zero_infinity({alpha, 0.0}, {beta, 0.0});
    const Moebius inv = phi.inverse();

    ConjugatedFamily family;
    family.conjugator = inv * Moebius::scaling(lambda) * phi;
    family.base.c = apply_circle(inv, OrientedCircle({-u, 0.0}, rho));
    family.base.c_prime = apply_circle(inv, OrientedCircle({-v, 0.0}, rho));
    family.base.map = pair_circles(family.base.c, family.base.c_prime, 0.0);
    family.range = range;
    return family;
}

/// Signed x-offset of the intersection of two real-centered circles, from
/// the first circle's center.
double intersection_offset(double m1, double r1, double m2, double r2) {
    const double d = m2 - m1;
    return (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
}

/// Foot points (in the upper half-plane) of the common perpendicular of two
/// disjoint geodesics spanned by real-centered circles.
struct PerpFeet {
    Complex on_first;
    Complex on_second;
};

PerpFeet perpendicular_feet(const OrientedCircle& a, const OrientedCircle& b) {
    const double m1 = a.center.real(), r1 = a.radius;
    const double m2 = b.center.real(), r2 = b.radius;
    // Circle orthogonal to both: (c - m)^2 = rho^2 + r^2 for each.
    const double c = (m2 * m2 - r2 * r2 - m1 * m1 + r1 * r1) / (2.0 * (m2 - m1));
    const double rho2 = (c - m1) * (c - m1) - r1 * r1;
    if (!(rho2 > 0.0))
        raise(ErrorKind::DiscsOverlapOrNested, "no common perpendicular for meeting circles");
    const double rho = std::sqrt(rho2);

    const auto foot = [&](double m, double r) {
        const double off = intersection_offset(m, r, c, rho);
        const double y2 = r * r - off * off;
        if (!(y2 > 0.0))
            raise(ErrorKind::OutOfDomain, "perpendicular does not cross the circle");
        return Complex(m + off, std::sqrt(y2));
    };
    return {foot(m1, r1), foot(m2, r2)};
}

/// Hyperbolic translation with axis the geodesic spanned by the real-centered
/// circle, chosen to move `from` to `to` (both on the circle, upper half).
Moebius translation_along(const OrientedCircle& axis, Complex from, Complex to) {
    const double m = axis.center.real(), r = axis.radius;
    const Moebius psi = Moebius::to_zero_infinity({m - r, 0.0}, {m + r, 0.0});
    const double p = std::abs(psi(from).value());
    const double f = std::abs(psi(to).value());
    return psi.inverse() * Moebius::scaling(f / p) * psi;
}

} // namespace

FamilySpec realize_end_space(const EndSetSpec& spec, int n, double margin) {
    if (n < 1)
        raise(ErrorKind::OutOfDomain, "realize_end_space requires N >= 1");
    if (!(margin >= 2.0))
        raise(ErrorKind::InfeasibleMargin, "margin must be at least 2");

    FamilySpec result;
    const std::vector<Atom> atoms = resolve_atoms(spec);
    if (atoms.empty())
        return result; // empty end set: finite-genus request, no families

    for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
        result.families.push_back(interval_family(atoms[i].hi, atoms[i + 1].lo, n, margin));

    // Extreme points are endpoints of no bounded complementary interval;
    // they get one-sided geometric tails pointing into their atoms.
    const bool lone = atoms.size() == 1;
    if (lone || !atoms.front().degenerate()) {
        const Atom& a = atoms.front();
        const double scale = a.degenerate() ? 0.25 : a.hi - a.lo;
        result.tails.push_back(TailFamily{{a.lo, 0.0}, +1.0, scale, n});
    }
    if (!lone && !atoms.back().degenerate()) {
        const Atom& a = atoms.back();
        result.tails.push_back(TailFamily{{a.hi, 0.0}, -1.0, a.hi - a.lo, n});
    }
    return result;
}

double CounterexampleRecipe::length(int i) const {
    if (!explicit_lengths.empty()) {
        if (i < 1 || static_cast<std::size_t>(i) > explicit_lengths.size())
            return 0.0;
        return explicit_lengths[static_cast<std::size_t>(i - 1)];
    }
    return ell_coeff * std::pow(ell_ratio, i);
}

double CounterexampleRecipe::tail_sum(int from) const {
    if (!explicit_lengths.empty()) {
        double sum = 0.0;
        for (std::size_t i = static_cast<std::size_t>(from); i <= explicit_lengths.size(); ++i)
            sum += explicit_lengths[i - 1];
        return sum;
    }
    return ell_coeff * std::pow(ell_ratio, from) / (1.0 - ell_ratio);
}

CounterexampleResult build_nested_counterexample(const CounterexampleRecipe& recipe) {
    const int n = recipe.count;
    if (n < 2)
        raise(ErrorKind::OutOfDomain, "counterexample requires at least 2 pairs");
    if (!(recipe.pair_gap > 0.0) || !(recipe.base_radius > 0.0))
        raise(ErrorKind::BadLengths, "pair gap and base radius must be positive");
    if (recipe.explicit_lengths.empty() &&
        (!(recipe.ell_coeff > 0.0) || !(recipe.ell_ratio > 0.0) || !(recipe.ell_ratio < 1.0)))
        raise(ErrorKind::BadLengths, "length rule must be positive with ratio in (0,1)");
    for (int i = 1; i < n; ++i)
        if (!(recipe.length(i) > 0.0))
            raise(ErrorKind::BadLengths, "orthogeodesic lengths must be positive");

    // Circles C_1, C'_1, C_2, C'_2, ... on the real axis, equal radii,
    // consecutive plane distances pair_gap within pairs and ell_i between.
    const double r = recipe.base_radius;
    std::vector<OrientedCircle> c(static_cast<std::size_t>(n));
    std::vector<OrientedCircle> cp(static_cast<std::size_t>(n));
    double center = 0.0;
    for (int i = 0; i < n; ++i) {
        c[static_cast<std::size_t>(i)] = OrientedCircle({center, 0.0}, r);
        center += 2.0 * r * std::cosh(recipe.pair_gap / 2.0);
        cp[static_cast<std::size_t>(i)] = OrientedCircle({center, 0.0}, r);
        if (i + 1 < n)
            center += 2.0 * r * std::cosh(recipe.length(i + 1) / 2.0);
    }

    // Orthogeodesic feet: delta_i runs from C'_i to C_{i+1}.
    std::vector<Complex> foot_out(static_cast<std::size_t>(n)); // on C'_i, start of delta_i
    std::vector<Complex> foot_in(static_cast<std::size_t>(n));  // on C_i, end of delta_{i-1}
    for (int i = 0; i + 1 < n; ++i) {
        const PerpFeet feet =
            perpendicular_feet(cp[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(i + 1)]);
        foot_out[static_cast<std::size_t>(i)] = feet.on_first;
        foot_in[static_cast<std::size_t>(i + 1)] = feet.on_second;
    }

    // Generators: canonical pairing Ext(C'_i) -> Int(C_i), post-composed for
    // 2 <= i <= n-1 with the translation along C_i that continues delta_{i-1}
    // by the image of delta_i.
    CounterexampleResult result;
    result.system.schottky_like_only = true;
    for (int i = 0; i < n; ++i) {
        const OrientedCircle& src = cp[static_cast<std::size_t>(i)];
        const OrientedCircle& dst = c[static_cast<std::size_t>(i)];
        Moebius g = pair_circles(src, dst, 0.0);
        if (i >= 1 && i + 1 < n) {
            const Complex landed = g(foot_out[static_cast<std::size_t>(i)]).value();
            g = translation_along(dst, landed, foot_in[static_cast<std::size_t>(i)]) * g;
        }
        result.system.pairs.push_back(CirclePair{src, dst, g, i});
    }

    // Nested chain {C_1, g_1(C_2), g_1 g_2(C_3), ...} with the ray heights.
    Moebius prefix;
    orbit::Word word;
    for (int i = 0; i < n; ++i) {
        orbit::TranslatedCircle tc;
        word.letters.push_back(2 * i);
        tc.word = word;
        tc.pair_index = i;
        tc.prime_side = true; // translate of the pair's c_prime slot
        tc.depth = i + 1;
        tc.circle = apply_circle(prefix, c[static_cast<std::size_t>(i)]);
        result.chain.circles.push_back(tc);
        prefix = prefix * result.system.pairs[static_cast<std::size_t>(i)].map;
    }

    // Height of the folded ray's crossing of the last chain circle, decayed
    // by the declared tail: every deeper chain circle still crosses the ray,
    // so its Euclidean radius is at least this bound.
    Moebius to_last;
    for (int i = 0; i + 1 < n; ++i)
        to_last = to_last * result.system.pairs[static_cast<std::size_t>(i)].map;
    const Complex last_cross = to_last(foot_in[static_cast<std::size_t>(n - 1)]).value();
    result.limit_radius_lower_bound =
        std::abs(last_cross.imag()) * std::exp(-recipe.tail_sum(n));
    return result;
}

CircleSystem build_fat_limit_set(int n, double delta) {
    if (n < 1)
        raise(ErrorKind::OutOfDomain, "build_fat_limit_set requires n >= 1");
    if (!(delta > 0.0))
        raise(ErrorKind::InfeasibleMargin, "delta must be positive");

    // Circles orthogonal to the unit circle at 2n equally spaced angles;
    // radius solves inversive(adjacent) = cosh(delta) exactly.
    const double pi = std::acos(-1.0);
    const double s = std::sin(pi / (2.0 * n));
    const double denom = (1.0 + std::cosh(delta)) / (2.0 * s * s) - 1.0;
    if (!(denom > 0.0))
        raise(ErrorKind::InfeasibleMargin, "n and delta leave no admissible radius");
    const double r = 1.0 / std::sqrt(denom);
    const double c = std::sqrt(1.0 + r * r);

    std::vector<OrientedCircle> circles;
    for (int m = 0; m < 2 * n; ++m) {
        const double theta = pi * m / n;
        circles.push_back(OrientedCircle(std::polar(c, theta), r));
    }

    CircleSystem sys;
    for (int m = 0; m < n; ++m) {
        const OrientedCircle& a = circles[static_cast<std::size_t>(m)];
        const OrientedCircle& b = circles[static_cast<std::size_t>(m + n)];
        sys.pairs.push_back(CirclePair{a, b, pair_circles(a, b, 0.0), m});
    }
    return sys;
}

double directed_hausdorff_chordal(const std::vector<SpherePoint>& from,
                                  const std::vector<SpherePoint>& to) {
    if (to.empty())
        return from.empty() ? 0.0 : 2.0;
    double worst = 0.0;
    for (const SpherePoint& f : from) {
        double best = 4.0;
        for (const SpherePoint& t : to)
            best = std::min(best, chordal_distance(f, t));
        worst = std::max(worst, best);
    }
    return worst;
}

std::vector<SpherePoint> circle_centers(const CircleSystem& sys) {
    std::vector<SpherePoint> centers;
    centers.reserve(2 * sys.pairs.size());
    for (const CirclePair& pair : sys.pairs) {
        centers.push_back(SpherePoint::finite(pair.c.center));
        centers.push_back(SpherePoint::finite(pair.c_prime.center));
    }
    return centers;
}

} // namespace schottky::construct
