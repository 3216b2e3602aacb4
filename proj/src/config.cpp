#include "schottky/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace schottky {

namespace {

struct FlatCircle {
    OrientedCircle circle;
    int index;
};

std::vector<FlatCircle> flatten(const CircleSystem& sys) {
    std::vector<FlatCircle> flat;
    flat.reserve(2 * sys.pairs.size());
    for (std::size_t i = 0; i < sys.pairs.size(); ++i) {
        flat.push_back({sys.pairs[i].c, static_cast<int>(2 * i)});
        flat.push_back({sys.pairs[i].c_prime, static_cast<int>(2 * i + 1)});
    }
    return flat;
}

/// Absolute discrepancy between the mapped circle and the expected circle;
/// infinity when the image degenerates to a line.
double pairing_discrepancy(const CirclePair& pair) {
    try {
        const OrientedCircle image = apply_circle(pair.map, pair.c);
        return std::max(std::abs(image.center - pair.c_prime.center),
                        std::abs(image.radius - pair.c_prime.radius));
    } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
    }
}

/// Evaluating a matrix on points of modulus ~|z| carries absolute rounding
/// noise of order eps * (entry magnitudes); the contract tolerance has to
/// admit that for legitimately extreme translates.
double pairing_tolerance(const CirclePair& pair) {
    const Moebius& m = pair.map;
    const double entries =
        std::abs(m.a()) + std::abs(m.b()) + std::abs(m.c()) + std::abs(m.d());
    const double at = 1.0 + std::abs(pair.c.center) + pair.c.radius;
    return tol::geometric * std::max(1.0, pair.c_prime.radius) + 32.0 * 2.2e-16 * entries * at;
}

bool orientation_ok(const CirclePair& pair) {
    const SpherePoint w = pair.map(SpherePoint::infinity());
    if (w.is_infinity())
        return false;
    return std::abs(w.value() - pair.c_prime.center) < pair.c_prime.radius;
}

double circle_point_distance(const OrientedCircle& c, const SpherePoint& target) {
    return chordal_distance(SpherePoint::finite(c.center), target) + 0.5 * spherical_diameter(c);
}

double circle_gap_bound(const OrientedCircle& a, const OrientedCircle& b) {
    return chordal_distance(SpherePoint::finite(a.center), SpherePoint::finite(b.center)) +
           0.5 * (spherical_diameter(a) + spherical_diameter(b));
}

/// Matrix comparison up to the projective sign.
bool same_map(const Moebius& f, const Moebius& g, double tolerance) {
    const double direct = std::max({std::abs(f.a() - g.a()), std::abs(f.b() - g.b()),
                                    std::abs(f.c() - g.c()), std::abs(f.d() - g.d())});
    const double flipped = std::max({std::abs(f.a() + g.a()), std::abs(f.b() + g.b()),
                                     std::abs(f.c() + g.c()), std::abs(f.d() + g.d())});
    return std::min(direct, flipped) < tolerance;
}

} // namespace

const char* violation_kind_name(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::Overlap: return "overlap";
    case ViolationKind::Containment: return "containment";
    case ViolationKind::PairingContract: return "pairing_contract";
    case ViolationKind::NotLoxodromic: return "not_loxodromic";
    }
    return "unknown";
}

ValidationReport validate(const CircleSystem& sys) {
    ValidationReport report;
    report.min_pair_gap = std::numeric_limits<double>::infinity();
    report.min_plane_distance = std::numeric_limits<double>::infinity();

    const std::vector<FlatCircle> flat = flatten(sys);
    const int m = static_cast<int>(flat.size());

    // Unordered circle pairs, flattened for a deterministic parallel scan.
    struct PairResult {
        bool has_violation = false;
        Violation violation{};
        double gap = std::numeric_limits<double>::infinity();
        double plane = std::numeric_limits<double>::infinity();
    };
    const int total = m * (m - 1) / 2;
    std::vector<PairResult> results(static_cast<std::size_t>(std::max(total, 0)));

#pragma omp parallel for schedule(static)
    for (int t = 0; t < total; ++t) {
        // Unrank t -> (i, j), i < j.
        int i = 0;
        int remaining = t;
        int row = m - 1;
        while (remaining >= row) {
            remaining -= row;
            --row;
            ++i;
        }
        const int j = i + 1 + remaining;

        const OrientedCircle& a = flat[i].circle;
        const OrientedCircle& b = flat[j].circle;
        PairResult& r = results[t];
        const double d = std::abs(a.center - b.center);
        r.gap = d - a.radius - b.radius;
        const double inv = inversive_distance_signed(a, b);
        if (inv <= -(1.0 + 1e-12)) {
            r.has_violation = true;
            r.violation = {ViolationKind::Containment, flat[i].index, flat[j].index,
                           d + std::min(a.radius, b.radius) - std::max(a.radius, b.radius)};
        } else if (inv <= 1.0 + 1e-12) {
            r.has_violation = true;
            r.violation = {ViolationKind::Overlap, flat[i].index, flat[j].index, r.gap};
        } else {
            r.plane = std::acosh(std::abs(inv));
        }
    }

    for (const PairResult& r : results) {
        report.min_pair_gap = std::min(report.min_pair_gap, r.gap);
        report.min_plane_distance = std::min(report.min_plane_distance, r.plane);
        if (r.has_violation)
            report.violations.push_back(r.violation);
    }

    // Per-pair checks: loxodromy and the pairing contract.
    for (std::size_t i = 0; i < sys.pairs.size(); ++i) {
        const CirclePair& pair = sys.pairs[i];
        const Classification cls = classify(pair.map);
        if (!cls.loxodromic()) {
            report.purely_loxodromic = false;
            report.violations.push_back({ViolationKind::NotLoxodromic, static_cast<int>(i),
                                         static_cast<int>(i), cls.multiplier_modulus});
        }
        const double disc = pairing_discrepancy(pair);
        if (disc > pairing_tolerance(pair))
            report.violations.push_back(
                {ViolationKind::PairingContract, static_cast<int>(i), static_cast<int>(i), disc});
        else if (!orientation_ok(pair))
            report.violations.push_back(
                {ViolationKind::PairingContract, static_cast<int>(i), static_cast<int>(i), 2.0});
    }

    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const Violation& x, const Violation& y) {
                         if (x.index_a != y.index_a)
                             return x.index_a < y.index_a;
                         if (x.index_b != y.index_b)
                             return x.index_b < y.index_b;
                         return static_cast<int>(x.kind) < static_cast<int>(y.kind);
                     });
    report.admissible = report.violations.empty();
    return report;
}

CircleSystem materialize(const FamilySpec& spec, std::optional<int> radius_override) {
    CircleSystem sys;
    sys.provenance = spec;
    int label = 0;

    for (const CirclePair& pair : spec.explicit_pairs) {
        CirclePair copy = pair;
        copy.label = label++;
        sys.pairs.push_back(copy);
    }

    for (const ConjugatedFamily& family : spec.families) {
        const int range = radius_override.value_or(family.range);
        // Conjugating the canonical pairing gives the canonical pairing of the
        // translated circles, which is far better conditioned to compute
        // directly when the translates get small. Non-canonical base maps are
        // conjugated as matrix products.
        const bool canonical_base =
            same_map(family.base.map, pair_circles(family.base.c, family.base.c_prime, 0.0), 1e-9);
        // Walk n from -range to range, maintaining h^n incrementally.
        Moebius h_pow = Moebius::identity();
        for (int n = 0; n < range; ++n)
            h_pow = h_pow * family.conjugator.inverse();
        for (int n = -range; n <= range; ++n) {
            CirclePair pair;
            pair.c = apply_circle(h_pow, family.base.c);
            pair.c_prime = apply_circle(h_pow, family.base.c_prime);
            pair.map = canonical_base ? pair_circles(pair.c, pair.c_prime, 0.0)
                                      : h_pow * family.base.map * h_pow.inverse();
            pair.label = label++;
            sys.pairs.push_back(pair);
            h_pow = family.conjugator * h_pow;
        }
    }

    for (const TailFamily& tail : spec.tails) {
        const int count = radius_override.value_or(tail.count);
        double step = 1.0;
        for (int n = 1; n <= count; ++n) {
            step *= 0.25; // 4^-n
            const double s = tail.scale * step;
            const Complex dir(tail.direction, 0.0);
            CirclePair pair;
            pair.c = OrientedCircle(tail.limit_point + dir * s, s / 4.0);
            pair.c_prime = OrientedCircle(tail.limit_point + dir * (2.0 * s), s / 4.0);
            pair.map = pair_circles(pair.c, pair.c_prime, 0.0);
            pair.label = label++;
            sys.pairs.push_back(pair);
        }
    }

    return sys;
}

std::vector<SpherePoint> accumulation_points(const FamilySpec& spec) {
    std::vector<SpherePoint> points;
    for (const ConjugatedFamily& family : spec.families) {
        const FixedPoints fp = fixed_points(family.conjugator);
        points.push_back(fp.first);
        if (!fp.single)
            points.push_back(fp.second);
    }
    for (const TailFamily& tail : spec.tails)
        points.push_back(SpherePoint::finite(tail.limit_point));

    std::sort(points.begin(), points.end(), [](const SpherePoint& a, const SpherePoint& b) {
        if (a.is_infinity() != b.is_infinity())
            return b.is_infinity();
        if (a.is_infinity())
            return false;
        if (a.value().real() != b.value().real())
            return a.value().real() < b.value().real();
        return a.value().imag() < b.value().imag();
    });
    std::vector<SpherePoint> dedup;
    for (const SpherePoint& p : points) {
        if (dedup.empty() || chordal_distance(dedup.back(), p) > 1e-9)
            dedup.push_back(p);
    }
    return dedup;
}

StarReport check_star_tail(const std::vector<OrientedCircle>& c,
                           const std::vector<OrientedCircle>& c_prime, const SpherePoint& target,
                           int family_index) {
    StarReport report;
    const int n = static_cast<int>(std::min(c.size(), c_prime.size()));
    if (n == 0)
        return report;

    const int start = std::max(0, n / 2 - 1); // outer half of the tail
    const double slack = 1e-12;
    for (int i = start + 1; i < n; ++i) {
        if (circle_gap_bound(c[i], c_prime[i]) >
            circle_gap_bound(c[i - 1], c_prime[i - 1]) + slack) {
            report.pass = false;
            report.witnesses.push_back({family_index, i, "pair gap not decreasing"});
            break;
        }
    }
    for (int i = start + 1; i < n; ++i) {
        const bool c_bad =
            circle_point_distance(c[i], target) > circle_point_distance(c[i - 1], target) + slack;
        const bool cp_bad = circle_point_distance(c_prime[i], target) >
                            circle_point_distance(c_prime[i - 1], target) + slack;
        if (c_bad || cp_bad) {
            report.pass = false;
            report.witnesses.push_back(
                {family_index, i,
                 c_bad ? "C tail not converging to accumulation point"
                       : "C' tail not converging to accumulation point"});
            break;
        }
    }
    return report;
}

StarReport check_star(const FamilySpec& spec, int depth) {
    StarReport report;
    report.checked_depth = depth;
    if (depth < 1)
        raise(ErrorKind::OutOfDomain, "check_star requires depth >= 1");

    const auto merge = [&report](const StarReport& sub) {
        if (!sub.pass) {
            report.pass = false;
            report.witnesses.insert(report.witnesses.end(), sub.witnesses.begin(),
                                    sub.witnesses.end());
        }
    };

    int family_index = 0;
    for (const ConjugatedFamily& family : spec.families) {
        const FixedPoints fp = fixed_points(family.conjugator);
        for (const int sign : {+1, -1}) {
            std::vector<OrientedCircle> c_tail, cp_tail;
            const Moebius step =
                sign > 0 ? family.conjugator : family.conjugator.inverse();
            Moebius h_pow = Moebius::identity();
            for (int i = 0; i <= depth; ++i) {
                c_tail.push_back(apply_circle(h_pow, family.base.c));
                cp_tail.push_back(apply_circle(h_pow, family.base.c_prime));
                h_pow = step * h_pow;
            }
            const SpherePoint target = sign > 0 ? fp.first : fp.second;
            merge(check_star_tail(c_tail, cp_tail, target, family_index));
        }
        ++family_index;
    }

    for (const TailFamily& tail : spec.tails) {
        std::vector<OrientedCircle> c_tail, cp_tail;
        double step = 1.0;
        for (int n = 1; n <= depth; ++n) {
            step *= 0.25;
            const double s = tail.scale * step;
            const Complex dir(tail.direction, 0.0);
            c_tail.push_back(OrientedCircle(tail.limit_point + dir * s, s / 4.0));
            cp_tail.push_back(OrientedCircle(tail.limit_point + dir * (2.0 * s), s / 4.0));
        }
        merge(check_star_tail(c_tail, cp_tail, SpherePoint::finite(tail.limit_point),
                              family_index));
        ++family_index;
    }

    return report;
}

HandlebodySummary handlebody_summary(const CircleSystem& sys) {
    const ValidationReport report = validate(sys);
    if (!report.admissible)
        raise(ErrorKind::NotAdmissible, "configuration failed validation");

    HandlebodySummary summary;
    if (sys.provenance && sys.provenance->infinite()) {
        summary.infinite_genus = true;
        summary.accumulation = accumulation_points(*sys.provenance);
    } else {
        summary.genus = sys.genus();
    }
    summary.end_count_at_truncation = static_cast<int>(summary.accumulation.size());
    return summary;
}

HandlebodySummary handlebody_summary(const FamilySpec& spec) {
    return handlebody_summary(materialize(spec));
}

} // namespace schottky
