#pragma once

#include <vector>

#include "schottky/config.hpp"
#include "schottky/orbit.hpp"

namespace schottky::construct {

/// Finite description of a closed subset of a Cantor set on the real line:
/// explicit points, a middle-thirds truncation at `cantor_depth`, or the
/// union of both. Explicit points outside [0,1] are affinely normalized
/// into [0,1].
struct EndSetSpec {
    std::vector<double> points;
    int cantor_depth = 0;

    bool empty() const { return points.empty() && cantor_depth == 0; }
};

/// Realizes the end set as the accumulation set of a circle family: one
/// conjugated family per bounded complementary interval (hyperbolic
/// conjugator fixing the interval endpoints, base circles orthogonal to R
/// inside a fundamental annulus), plus one-sided tail families for the
/// extreme points not covered by any bounded interval. `margin` makes the
/// spacing requirement quantitative: every gap (between the paired circles
/// and from them to the fundamental-domain boundary) is at least margin
/// times the circle radius, measured in the conjugator's model coordinates.
/// Requires margin >= 2; throws InfeasibleMargin otherwise.
FamilySpec realize_end_space(const EndSetSpec& spec, int n, double margin);

/// Recipe for the nested-geodesic counterexample: circle pairs orthogonal to
/// the real axis whose consecutive orthogeodesic gaps follow the declared
/// summable rule ell_i = ell_coeff * ell_ratio^i (or the explicit list when
/// given). The generators are aligned so the folded orthogeodesic segments
/// continue each other to a single geodesic ray of finite total length.
struct CounterexampleRecipe {
    int count = 8;        // number of circle pairs
    double ell_coeff = 1.0;
    double ell_ratio = 0.5;
    double pair_gap = 1.0;    // plane distance between C_i and C'_i
    double base_radius = 1.0; // Euclidean radius of the base circles
    std::vector<double> explicit_lengths; // overrides the rule when nonempty

    double length(int i) const; // ell_i, i >= 1
    double tail_sum(int from) const;
};

struct CounterexampleResult {
    CircleSystem system; // admissible finite truncation, flagged Schottky-like
    orbit::NestedChain chain; // {C_1, g_1(C_2), g_1 g_2(C_3), ...}
    /// Positive lower bound on the Euclidean radius of the limiting circle,
    /// from the height of the last ray crossing and the declared tail sum.
    double limit_radius_lower_bound = 0.0;
};

/// Example: nested translated circles converging to a circle of positive
/// radius, so the common exterior is not a fundamental domain even though
/// every finite truncation is a genuine Schottky group.
CounterexampleResult build_nested_counterexample(const CounterexampleRecipe& recipe);

/// Example: 2n circles orthogonal to the unit circle at equally spaced
/// angles, radii chosen so the minimum plane distance is exactly delta;
/// antipodal circles are paired canonically. The circles accumulate on the
/// whole unit circle as n grows.
CircleSystem build_fat_limit_set(int n, double delta);

/// max over `from` of the chordal distance to the nearest point of `to`.
double directed_hausdorff_chordal(const std::vector<SpherePoint>& from,
                                  const std::vector<SpherePoint>& to);

/// Centers of all configuration circles as sphere points.
std::vector<SpherePoint> circle_centers(const CircleSystem& sys);

} // namespace schottky::construct
