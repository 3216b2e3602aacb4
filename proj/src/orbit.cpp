#include "schottky/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "orbit_detail.hpp"

namespace schottky::orbit {

using detail::LetterTable;

bool Word::reduced() const {
    for (std::size_t i = 1; i < letters.size(); ++i)
        if (letters[i] == inverse_letter(letters[i - 1]))
            return false;
    return true;
}

std::string Word::str() const {
    std::string out;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i > 0)
            out += ' ';
        out += 'g';
        out += std::to_string(letters[i] / 2 + 1);
        if (letters[i] % 2 == 1)
            out += "^-1";
    }
    return out;
}

bool NestedChain::nested() const {
    for (std::size_t i = 1; i < circles.size(); ++i) {
        const OrientedCircle& outer = circles[i - 1].circle;
        const OrientedCircle& inner = circles[i].circle;
        if (std::abs(outer.center - inner.center) + inner.radius >= outer.radius)
            return false;
    }
    return true;
}

namespace {

struct Node {
    Moebius product; // product of the whole word at this node
    int last = -1;
    std::int64_t rank = 0;
};

/// Breadth-first serial expansion of depths 1..prefix_depth. emit(m, rank,
/// letter, parent_product, word_product) is called once per node in
/// canonical order; returns the frontier at prefix_depth.
template <class Emit>
std::vector<Node> expand_prefix(const LetterTable& lt, int prefix_depth, const Emit& emit) {
    std::vector<Node> level = {Node{}};
    std::vector<Node> next;
    for (int m = 1; m <= prefix_depth; ++m) {
        next.clear();
        for (const Node& node : level) {
            for (int s = 0; s < lt.alphabet; ++s) {
                if (node.last >= 0 && s == inverse_letter(node.last))
                    continue;
                const std::int64_t rank =
                    node.last < 0
                        ? s
                        : detail::child_rank(node.rank, lt.alphabet,
                                             detail::child_position(s, node.last));
                const Moebius product = node.product * lt.maps[s];
                emit(m, rank, s, node.product, product);
                next.push_back({product, s, rank});
            }
        }
        std::swap(level, next);
    }
    return level;
}

/// Depth-first continuation below a frontier node, canonical child order.
template <class Emit>
void expand_subtree(const LetterTable& lt, const Node& from, int from_depth, int max_depth,
                    const Emit& emit) {
    const auto rec = [&](auto&& self, const Moebius& product, int last, std::int64_t rank,
                         int m) -> void {
        if (m == max_depth)
            return;
        for (int s = 0; s < lt.alphabet; ++s) {
            if (s == inverse_letter(last))
                continue;
            const std::int64_t child =
                detail::child_rank(rank, lt.alphabet, detail::child_position(s, last));
            const Moebius word = product * lt.maps[s];
            emit(m + 1, child, s, product, word);
            self(self, word, s, child, m + 1);
        }
    };
    rec(rec, from.product, from.last, from.rank, from_depth);
}

/// Runs the full walk: serial prefix stage, then one parallel task per
/// frontier node. The emit callable must be safe for concurrent calls on
/// distinct (depth, rank) slots. Output is scheduling-independent because
/// every node owns a canonical slot.
template <class Emit>
void walk_tree(const LetterTable& lt, int depth, const Emit& emit) {
    const int prefix_depth = std::min(2, depth);
    const std::vector<Node> frontier = expand_prefix(lt, prefix_depth, emit);
    if (depth <= prefix_depth)
        return;

    const int tasks = static_cast<int>(frontier.size());
    bool failed = false;
    std::string error_message;
    ErrorKind error_kind = ErrorKind::OutOfDomain;
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < tasks; ++t) {
        try {
            expand_subtree(lt, frontier[t], prefix_depth, depth, emit);
        } catch (const Error& e) {
#pragma omp critical
            {
                if (!failed) {
                    failed = true;
                    error_message = e.what();
                    error_kind = e.kind();
                }
            }
        }
    }
    if (failed)
        throw Error(error_kind, error_message);
}

std::vector<std::int64_t> block_offsets(const std::vector<std::int64_t>& counts) {
    std::vector<std::int64_t> offsets(counts.size(), 0);
    std::int64_t acc = 0;
    for (std::size_t m = 1; m < counts.size(); ++m) {
        offsets[m] = acc;
        acc += counts[m];
    }
    return offsets;
}

int clamp_depth(int depth) {
    if (depth < 0)
        raise(ErrorKind::OutOfDomain, "depth must be >= 0");
    return std::max(depth, 1);
}

/// Per-depth accumulator used by the profile and census kernels. Partials
/// are merged in canonical task order so floating sums are reproducible
/// across thread counts.
struct DepthPartial {
    std::vector<double> max_diameter;
    std::vector<double> sum_diameter;
    std::vector<std::int64_t> count;
    std::vector<std::int64_t> above;

    explicit DepthPartial(int depth)
        : max_diameter(static_cast<std::size_t>(depth) + 1, 0.0),
          sum_diameter(static_cast<std::size_t>(depth) + 1, 0.0),
          count(static_cast<std::size_t>(depth) + 1, 0),
          above(static_cast<std::size_t>(depth) + 1, 0) {}

    void add(int m, double diameter, double threshold) {
        max_diameter[m] = std::max(max_diameter[m], diameter);
        sum_diameter[m] += diameter;
        count[m] += 1;
        if (diameter > threshold)
            above[m] += 1;
    }

    void merge(const DepthPartial& other) {
        for (std::size_t m = 0; m < max_diameter.size(); ++m) {
            max_diameter[m] = std::max(max_diameter[m], other.max_diameter[m]);
            sum_diameter[m] += other.sum_diameter[m];
            count[m] += other.count[m];
            above[m] += other.above[m];
        }
    }
};

/// Shared driver for diameter_profile and census_large: walks the tree once
/// accumulating per-depth diameter statistics.
DepthPartial diameter_scan(const CircleSystem& sys, int depth, std::int64_t budget,
                           double census_threshold) {
    const LetterTable lt = detail::build_letters(sys);
    detail::level_counts(lt.alphabet, depth, budget);

    DepthPartial prefix_partial(depth);
    const int prefix_depth = std::min(2, depth);
    const auto prefix_emit = [&](int m, std::int64_t, int s, const Moebius& parent,
                                 const Moebius&) {
        prefix_partial.add(m, spherical_diameter(apply_circle(parent, lt.edge_circle[s])),
                           census_threshold);
    };
    const std::vector<Node> frontier = expand_prefix(lt, prefix_depth, prefix_emit);

    if (depth > prefix_depth) {
        const int tasks = static_cast<int>(frontier.size());
        std::vector<DepthPartial> partials(static_cast<std::size_t>(tasks),
                                           DepthPartial(depth));
        bool failed = false;
        std::string error_message;
        ErrorKind error_kind = ErrorKind::OutOfDomain;
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < tasks; ++t) {
            DepthPartial& local = partials[static_cast<std::size_t>(t)];
            const auto emit = [&](int m, std::int64_t, int s, const Moebius& parent,
                                  const Moebius&) {
                local.add(m, spherical_diameter(apply_circle(parent, lt.edge_circle[s])),
                          census_threshold);
            };
            try {
                expand_subtree(lt, frontier[t], prefix_depth, depth, emit);
            } catch (const Error& e) {
#pragma omp critical
                {
                    if (!failed) {
                        failed = true;
                        error_message = e.what();
                        error_kind = e.kind();
                    }
                }
            }
        }
        if (failed)
            throw Error(error_kind, error_message);
        for (const DepthPartial& partial : partials)
            prefix_partial.merge(partial);
    }
    return prefix_partial;
}

} // namespace

std::vector<Word> enumerate_words(int k, int n, const EnumOptions& options) {
    if (k < 1 || n < 0)
        raise(ErrorKind::OutOfDomain, "enumerate_words requires k >= 1 and n >= 0");
    if (n == 0)
        return {};

    // The word table does not need a circle system; a letter table with
    // identity maps drives the same walk.
    LetterTable lt;
    lt.alphabet = 2 * k;
    lt.maps.assign(static_cast<std::size_t>(lt.alphabet), Moebius::identity());

    const std::vector<std::int64_t> counts = detail::level_counts(lt.alphabet, n, options.budget);
    const std::vector<std::int64_t> offsets = block_offsets(counts);
    std::int64_t total = 0;
    for (int m = 1; m <= n; ++m)
        total += counts[m];

    std::vector<Word> out(static_cast<std::size_t>(total));
    walk_tree(lt, n, [&](int m, std::int64_t rank, int, const Moebius&, const Moebius&) {
        out[static_cast<std::size_t>(offsets[m] + rank)] = detail::decode_word(lt.alphabet, m, rank);
    });
    return out;
}

std::vector<TranslatedCircle> translated_circles(const CircleSystem& sys, int depth,
                                                 const EnumOptions& options) {
    const int effective_depth = clamp_depth(depth);
    if (sys.pairs.empty())
        return {};
    const LetterTable lt = detail::build_letters(sys);
    const std::vector<std::int64_t> counts =
        detail::level_counts(lt.alphabet, effective_depth, options.budget);
    const std::vector<std::int64_t> offsets = block_offsets(counts);
    std::int64_t total = 0;
    for (int m = 1; m <= effective_depth; ++m)
        total += counts[m];

    std::vector<TranslatedCircle> out(static_cast<std::size_t>(total));
    walk_tree(lt, effective_depth,
              [&](int m, std::int64_t rank, int s, const Moebius& parent, const Moebius&) {
                  TranslatedCircle& slot = out[static_cast<std::size_t>(offsets[m] + rank)];
                  slot.word = detail::decode_word(lt.alphabet, m, rank);
                  slot.pair_index = lt.pair_of[s];
                  slot.prime_side = lt.prime_of[s];
                  slot.depth = m;
                  slot.circle = apply_circle(parent, lt.edge_circle[s]);
              });
    return out;
}

std::vector<NestedChain> maximal_chains(const CircleSystem& sys, int depth,
                                        const EnumOptions& options) {
    depth = clamp_depth(depth);
    if (sys.pairs.empty())
        return {};
    const std::vector<TranslatedCircle> table = translated_circles(sys, depth, options);
    const LetterTable lt = detail::build_letters(sys);
    const std::vector<std::int64_t> counts =
        detail::level_counts(lt.alphabet, depth, options.budget);
    const std::vector<std::int64_t> offsets = block_offsets(counts);

    const std::int64_t leaves = counts[depth];
    std::vector<NestedChain> chains(static_cast<std::size_t>(leaves));
#pragma omp parallel for schedule(static)
    for (std::int64_t leaf = 0; leaf < leaves; ++leaf) {
        NestedChain& chain = chains[static_cast<std::size_t>(leaf)];
        chain.circles.resize(static_cast<std::size_t>(depth));
        std::int64_t divisor = 1;
        for (int m = depth; m >= 1; --m) {
            const std::int64_t rank = leaf / divisor;
            chain.circles[static_cast<std::size_t>(m - 1)] =
                table[static_cast<std::size_t>(offsets[m] + rank)];
            divisor *= lt.alphabet - 1;
        }
    }
    return chains;
}

DiameterProfile diameter_profile(const CircleSystem& sys, int depth,
                                 const ProfileOptions& options) {
    depth = clamp_depth(depth);
    const DepthPartial stats = diameter_scan(sys, depth, options.budget, options.threshold);

    DiameterProfile profile;
    profile.threshold = options.threshold;
    for (int m = 1; m <= depth; ++m) {
        DepthStats row;
        row.depth = m;
        row.count = stats.count[m];
        row.max_diameter = stats.max_diameter[m];
        row.mean_diameter = stats.count[m] > 0 ? stats.sum_diameter[m] / stats.count[m] : 0.0;
        profile.per_depth.push_back(row);
    }

    bool decreasing = depth >= 3;
    for (int m = std::max(2, depth - 1); m <= depth && decreasing; ++m)
        decreasing = stats.max_diameter[m] < stats.max_diameter[m - 1];
    profile.plausible_fundamental_domain =
        decreasing && stats.max_diameter[depth] < options.threshold;
    return profile;
}

double min_plane_distance(const CircleSystem& sys) {
    const ValidationReport report = validate(sys);
    if (!report.admissible)
        raise(ErrorKind::NotAdmissible, "configuration failed validation");
    return report.min_plane_distance;
}

Census census_large(const CircleSystem& sys, int depth, double m, const EnumOptions& options) {
    depth = clamp_depth(depth);
    if (!(m > 0.0))
        raise(ErrorKind::OutOfDomain, "census threshold must be positive");
    const DepthPartial stats = diameter_scan(sys, depth, options.budget, m);

    Census census;
    census.threshold_m = m;
    std::int64_t running = 0;
    for (int level = 1; level <= depth; ++level) {
        running += stats.above[level];
        census.per_depth.push_back({level, stats.above[level], running});
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
    const std::vector<std::int64_t> counts =
        detail::level_counts(lt.alphabet, depth, options.budget);

    std::vector<SpherePoint> out(static_cast<std::size_t>(counts[depth]));
    walk_tree(lt, depth,
              [&](int m, std::int64_t rank, int, const Moebius&, const Moebius& word) {
                  if (m != depth)
                      return;
                  out[static_cast<std::size_t>(rank)] = fixed_points(word).first;
              });
    return out;
}

} // namespace schottky::orbit
