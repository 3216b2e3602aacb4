#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "schottky/config.hpp"

namespace schottky::orbit {

/// Reduced word over the symmetric generators. Letter codes follow the
/// lexicographic generator order g_1, g_1^-1, g_2, g_2^-1, ...:
/// code 2i is g_{i+1}, code 2i+1 is its inverse.
struct Word {
    std::vector<int> letters;

    int length() const { return static_cast<int>(letters.size()); }
    bool reduced() const;
    std::string str() const;

    friend bool operator==(const Word&, const Word&) = default;
};

inline int inverse_letter(int letter) { return letter ^ 1; }

struct EnumOptions {
    std::int64_t budget = 10'000'000;
};

/// All nonempty reduced words of length 1..n over k generator pairs, ordered
/// by (length, lexicographic). Exactly 2k(2k-1)^(m-1) words of length m.
/// Throws BudgetExceeded when the total would exceed the budget.
std::vector<Word> enumerate_words(int k, int n, const EnumOptions& options = {});

/// One circle per Cayley-tree edge: the edge from w's parent to w carries the
/// translate prefix(w)(C) where C is the base circle selected by w's last
/// letter.
struct TranslatedCircle {
    Word word;
    int pair_index = 0;
    bool prime_side = false; // true: translate of C'_i, false: of C_i
    OrientedCircle circle;
    int depth = 0;
};

/// Edge circles of the radius-`depth` ball of the Cayley tree, ordered by
/// (depth, lexicographic word). Depth 0 is clamped to 1 (the 2k base
/// circles). Edge count equals the ball's vertex count minus one.
std::vector<TranslatedCircle> translated_circles(const CircleSystem& sys, int depth,
                                                 const EnumOptions& options = {});

/// Strictly nested circle sequence along a geodesic ray prefix.
struct NestedChain {
    std::vector<TranslatedCircle> circles;
    bool maximal = true;

    bool nested() const; // every closed disc strictly contains the next
};

/// One chain per reduced word of length `depth`, in lexicographic order; the
/// m-th circle of a chain is the edge circle of the word's length-m prefix.
std::vector<NestedChain> maximal_chains(const CircleSystem& sys, int depth,
                                        const EnumOptions& options = {});

struct DepthStats {
    int depth = 0;
    std::int64_t count = 0;
    double max_diameter = 0.0;
    double mean_diameter = 0.0;
};

struct ProfileOptions {
    double threshold = 1e-2;
    std::int64_t budget = 10'000'000;
};

struct DiameterProfile {
    std::vector<DepthStats> per_depth;
    /// Heuristic verdict: max diameter strictly decreasing over the last
    /// three depths and below `threshold` at the maximum depth. Finite data
    /// cannot prove the infinite statement.
    bool plausible_fundamental_domain = false;
    double threshold = 1e-2;
};

/// Spherical diameters of all chain circles by depth.
DiameterProfile diameter_profile(const CircleSystem& sys, int depth,
                                 const ProfileOptions& options = {});

/// Minimum hyperbolic plane distance over all unordered pairs of distinct
/// configuration circles. Throws NotAdmissible when validation fails.
double min_plane_distance(const CircleSystem& sys);

struct CensusRow {
    int depth = 0;
    std::int64_t count = 0;      // circles at this depth with diameter > M
    std::int64_t cumulative = 0; // running total over depths so far
};

struct Census {
    std::vector<CensusRow> per_depth;
    double threshold_m = 0.0;
    std::int64_t cumulative = 0;
};

/// Count of translated circles with spherical diameter greater than M,
/// per depth and cumulative.
Census census_large(const CircleSystem& sys, int depth, double m,
                    const EnumOptions& options = {});

/// Attracting fixed points of all reduced words of length exactly `depth`,
/// in lexicographic word order. Every sample lies in the limit set.
std::vector<SpherePoint> limit_set_sample(const CircleSystem& sys, int depth,
                                          const EnumOptions& options = {});

/// Straightforward single-threaded reference implementations; the parallel
/// kernels are tested against these.
namespace serial {
std::vector<Word> enumerate_words(int k, int n, const EnumOptions& options = {});
std::vector<TranslatedCircle> translated_circles(const CircleSystem& sys, int depth,
                                                 const EnumOptions& options = {});
std::vector<NestedChain> maximal_chains(const CircleSystem& sys, int depth,
                                        const EnumOptions& options = {});
DiameterProfile diameter_profile(const CircleSystem& sys, int depth,
                                 const ProfileOptions& options = {});
Census census_large(const CircleSystem& sys, int depth, double m,
                    const EnumOptions& options = {});
std::vector<SpherePoint> limit_set_sample(const CircleSystem& sys, int depth,
                                          const EnumOptions& options = {});
} // namespace serial

} // namespace schottky::orbit
