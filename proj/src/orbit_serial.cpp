#include <algorithm>
#include <cmath>

#include "orbit_detail.hpp"
#include "schottky/orbit.hpp"

// Reference implementations: plain single-threaded recursion in lexicographic
// order, no slot indexing. The parallel kernels are checked against these.

namespace schottky::orbit::serial {

namespace {

using detail::LetterTable;

int clamp_depth(int depth) {
    if (depth < 0)
        raise(ErrorKind::OutOfDomain, "depth must be >= 0");
    return std::max(depth, 1);
}

/// Recursive lexicographic walk; visit(word, letter, parent_product,
/// word_product) is called for every nonempty reduced word of length <= depth.
template <class Visit>
void walk(const LetterTable& lt, int depth, const Visit& visit) {
    Word word;
    const auto rec = [&](auto&& self, const Moebius& product, int last, int m) -> void {
        if (m == depth)
            return;
        for (int s = 0; s < lt.alphabet; ++s) {
            if (last >= 0 && s == inverse_letter(last))
                continue;
            word.letters.push_back(s);
            const Moebius next = product * lt.maps[s];
            visit(word, s, product, next);
            self(self, next, s, m + 1);
            word.letters.pop_back();
        }
    };
    rec(rec, Moebius::identity(), -1, 0);
}

} // namespace

std::vector<Word> enumerate_words(int k, int n, const EnumOptions& options) {
    if (k < 1 || n < 0)
        raise(ErrorKind::OutOfDomain, "enumerate_words requires k >= 1 and n >= 0");
    if (n == 0)
        return {};
    LetterTable lt;
    lt.alphabet = 2 * k;
    lt.maps.assign(static_cast<std::size_t>(lt.alphabet), Moebius::identity());
    detail::level_counts(lt.alphabet, n, options.budget);

    std::vector<std::vector<Word>> by_depth(static_cast<std::size_t>(n) + 1);
    walk(lt, n, [&](const Word& word, int, const Moebius&, const Moebius&) {
        by_depth[word.letters.size()].push_back(word);
    });
    std::vector<Word> out;
    for (int m = 1; m <= n; ++m)
        out.insert(out.end(), by_depth[m].begin(), by_depth[m].end());
    return out;
}

std::vector<TranslatedCircle> translated_circles(const CircleSystem& sys, int depth,
                                                 const EnumOptions& options) {
    const int effective_depth = clamp_depth(depth);
    if (sys.pairs.empty())
        return {};
    const LetterTable lt = detail::build_letters(sys);
    detail::level_counts(lt.alphabet, effective_depth, options.budget);

    std::vector<std::vector<TranslatedCircle>> by_depth(static_cast<std::size_t>(effective_depth) +
                                                        1);
    walk(lt, effective_depth, [&](const Word& word, int s, const Moebius& parent, const Moebius&) {
        TranslatedCircle tc;
        tc.word = word;
        tc.pair_index = lt.pair_of[s];
        tc.prime_side = lt.prime_of[s];
        tc.depth = word.length();
        tc.circle = apply_circle(parent, lt.edge_circle[s]);
        by_depth[word.letters.size()].push_back(tc);
    });
    std::vector<TranslatedCircle> out;
    for (int m = 1; m <= effective_depth; ++m)
        out.insert(out.end(), by_depth[m].begin(), by_depth[m].end());
    return out;
}

std::vector<NestedChain> maximal_chains(const CircleSystem& sys, int depth,
                                        const EnumOptions& options) {
    depth = clamp_depth(depth);
    if (sys.pairs.empty())
        return {};
    const LetterTable lt = detail::build_letters(sys);
    detail::level_counts(lt.alphabet, depth, options.budget);

    std::vector<NestedChain> chains;
    std::vector<TranslatedCircle> stack;
    walk(lt, depth, [&](const Word& word, int s, const Moebius& parent, const Moebius&) {
        TranslatedCircle tc;
        tc.word = word;
        tc.pair_index = lt.pair_of[s];
        tc.prime_side = lt.prime_of[s];
        tc.depth = word.length();
        tc.circle = apply_circle(parent, lt.edge_circle[s]);
        stack.resize(static_cast<std::size_t>(word.length() - 1));
        stack.push_back(tc);
        if (word.length() == depth) {
            NestedChain chain;
            chain.circles = stack;
            chains.push_back(std::move(chain));
        }
    });
    return chains;
}

DiameterProfile diameter_profile(const CircleSystem& sys, int depth,
                                 const ProfileOptions& options) {
    depth = clamp_depth(depth);
    const LetterTable lt = detail::build_letters(sys);
    detail::level_counts(lt.alphabet, depth, options.budget);

    std::vector<double> max_d(static_cast<std::size_t>(depth) + 1, 0.0);
    std::vector<double> sum_d(static_cast<std::size_t>(depth) + 1, 0.0);
    std::vector<std::int64_t> count(static_cast<std::size_t>(depth) + 1, 0);
    walk(lt, depth, [&](const Word& word, int s, const Moebius& parent, const Moebius&) {
        const double diam = spherical_diameter(apply_circle(parent, lt.edge_circle[s]));
        const std::size_t m = word.letters.size();
        max_d[m] = std::max(max_d[m], diam);
        sum_d[m] += diam;
        count[m] += 1;
    });

    DiameterProfile profile;
    profile.threshold = options.threshold;
    for (int m = 1; m <= depth; ++m)
        profile.per_depth.push_back(
            {m, count[m], max_d[m], count[m] > 0 ? sum_d[m] / count[m] : 0.0});
    bool decreasing = depth >= 3;
    for (int m = std::max(2, depth - 1); m <= depth && decreasing; ++m)
        decreasing = max_d[m] < max_d[m - 1];
    profile.plausible_fundamental_domain = decreasing && max_d[depth] < options.threshold;
    return profile;
}

Census census_large(const CircleSystem& sys, int depth, double m, const EnumOptions& options) {
    depth = clamp_depth(depth);
    if (!(m > 0.0))
        raise(ErrorKind::OutOfDomain, "census threshold must be positive");
    const LetterTable lt = detail::build_letters(sys);
    detail::level_counts(lt.alphabet, depth, options.budget);

    std::vector<std::int64_t> above(static_cast<std::size_t>(depth) + 1, 0);
    walk(lt, depth, [&](const Word& word, int s, const Moebius& parent, const Moebius&) {
        const double diam = spherical_diameter(apply_circle(parent, lt.edge_circle[s]));
        if (diam > m)
            above[word.letters.size()] += 1;
    });

    Census census;
    census.threshold_m = m;
    std::int64_t running = 0;
    for (int level = 1; level <= depth; ++level) {
        running += above[level];
        census.per_depth.push_back({level, above[level], running});
    }
    census.cumulative = running;
    return census;
}

std::vector<SpherePoint> limit_set_sample(const CircleSystem& sys, int depth,
                                          const EnumOptions& options) {
    depth = clamp_depth(depth);
    if (sys.pairs.empty())
        return {};
    const LetterTable lt = detail::build_letters(sys);
    detail::level_counts(lt.alphabet, depth, options.budget);

    std::vector<SpherePoint> out;
    walk(lt, depth, [&](const Word& word, int, const Moebius&, const Moebius& product) {
        if (word.length() == depth)
            out.push_back(fixed_points(product).first);
    });
    return out;
}

} // namespace schottky::orbit::serial
