#pragma once

#include <optional>
#include <string>
#include <vector>

#include "schottky/moebius.hpp"

namespace schottky {

/// One generator of the configuration: map(Ext c) = Int c_prime.
struct CirclePair {
    OrientedCircle c;
    OrientedCircle c_prime;
    Moebius map;
    int label = 0;
};

/// Conjugated family g_n = h^n g h^-n, C_n = h^n(C), C'_n = h^n(C') for
/// n in [-range, range].
struct ConjugatedFamily {
    CirclePair base;
    Moebius conjugator;
    int range = 1;
};

/// One-sided geometric-decay family accumulating at a single point: for
/// n = 1..count the circles
///   C_n  = circle(p + dir * s * 4^-n,     s * 4^-n / 4)
///   C'_n = circle(p + dir * 2 s * 4^-n,   s * 4^-n / 4)
/// paired canonically. Realizes an accumulation point that is an endpoint of
/// no bounded complementary interval.
struct TailFamily {
    Complex limit_point;
    double direction = 1.0; // +1 decays from the right of p, -1 from the left
    double scale = 0.25;
    int count = 1;
};

struct FamilySpec {
    std::vector<ConjugatedFamily> families;
    std::vector<TailFamily> tails;
    std::vector<CirclePair> explicit_pairs;

    bool infinite() const { return !families.empty() || !tails.empty(); }
};

struct CircleSystem {
    std::vector<CirclePair> pairs;
    std::optional<FamilySpec> provenance;
    /// Set by constructions that are Schottky-like by design but known not to
    /// satisfy the fundamental-domain property in the infinite limit.
    bool schottky_like_only = false;

    int genus() const { return static_cast<int>(pairs.size()); }
};

enum class ViolationKind {
    Overlap,         // closed discs intersect or are tangent
    Containment,     // one disc contains another (base point separation fails)
    PairingContract, // map does not send Ext(c) onto Int(c_prime)
    NotLoxodromic,
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int index_a = 0; // flattened circle index (2*pair for C, 2*pair+1 for C'),
    int index_b = 0; // or pair label indices for per-pair violations
    double measured = 0.0;
};

struct ValidationReport {
    bool admissible = true;
    std::vector<Violation> violations;
    double min_pair_gap = 0.0;       // Euclidean gap between closest circles
    double min_plane_distance = 0.0; // hyperbolic distance between closest planes
    bool purely_loxodromic = true;
};

/// Checks the admissibility of the finite configuration: pairwise disjoint
/// closed discs, no containment (base point at infinity), pairing contract,
/// and loxodromy of every generator. Never throws on bad input; failures are
/// returned in the report, sorted by index.
ValidationReport validate(const CircleSystem& sys);

/// Expands a family spec to a finite circle system. Family indices run over
/// n in [-range, range] and tail indices over 1..count; `radius_override`
/// replaces every declared range/count when given.
CircleSystem materialize(const FamilySpec& spec,
                         std::optional<int> radius_override = std::nullopt);

/// Exact accumulation set of the infinite family: conjugator fixed points
/// for conjugated families, declared limit points for tails. Deduplicated
/// within chordal tolerance 1e-9 and sorted; explicit finite pairs
/// contribute nothing.
std::vector<SpherePoint> accumulation_points(const FamilySpec& spec);

struct StarWitness {
    int family = 0; // family index; tails follow families in numbering
    int index = 0;  // offending n along the tail
    std::string what;
};

struct StarReport {
    bool pass = true;
    std::vector<StarWitness> witnesses;
    /// Finite truncations can only check the condition along the declared
    /// tails; this records how far the tails were materialized.
    int checked_depth = 0;
};

/// Condition (*): along every tail of the family the paired circles converge
/// to the same accumulation point. Checks that the chordal gap between C_n
/// and C'_n and the distances of both circles to the target fixed point
/// decrease monotonically over the outer half of the materielized tail.
StarReport check_star(const FamilySpec& spec, int depth);

/// Tail building block used by check_star; exposed so a drifting sequence
/// can be checked directly.
StarReport check_star_tail(const std::vector<OrientedCircle>& c,
                           const std::vector<OrientedCircle>& c_prime, const SpherePoint& target,
                           int family_index);

struct HandlebodySummary {
    bool infinite_genus = false;
    int genus = 0; // valid when !infinite_genus
    int end_count_at_truncation = 0;
    std::vector<SpherePoint> accumulation;
};

/// Genus and end data of the quotient handlebody. Throws NotAdmissible when
/// validation of the (materialized) configuration fails.
HandlebodySummary handlebody_summary(const CircleSystem& sys);
HandlebodySummary handlebody_summary(const FamilySpec& spec);

} // namespace schottky
