// Benchmark: OpenMP orbit kernels against the serial reference on a fat
// limit-set configuration. Verifies that both produce identical results
// while timing them.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "schottky/construct.hpp"
#include "schottky/orbit.hpp"

using namespace schottky;

namespace {

template <class F>
double time_best_of(int reps, const F& f) {
    double best = 1e100;
    for (int i = 0; i < reps; ++i) {
        const auto start = std::chrono::steady_clock::now();
        f();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int n = 4;
    double delta = 1.0;
    int depth = 8;
    int reps = 3;
    std::int64_t budget = 50'000'000;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        const std::string value = argv[i + 1];
        if (key == "--n")
            n = std::atoi(value.c_str());
        else if (key == "--delta")
            delta = std::atof(value.c_str());
        else if (key == "--depth")
            depth = std::atoi(value.c_str());
        else if (key == "--reps")
            reps = std::atoi(value.c_str());
        else if (key == "--budget")
            budget = std::atoll(value.c_str());
    }

    const CircleSystem sys = construct::build_fat_limit_set(n, delta);
    const orbit::EnumOptions enum_options{budget};
    const orbit::ProfileOptions profile_options{1e-2, budget};

    std::int64_t nodes = 0;
    {
        std::int64_t level = 2 * n;
        for (int m = 1; m <= depth; ++m) {
            nodes += level;
            level *= 2 * n - 1;
        }
    }
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("fat limit set: n=%d delta=%g depth=%d nodes=%lld threads=%d reps=%d\n", n, delta,
                depth, static_cast<long long>(nodes), threads, reps);

    orbit::DiameterProfile profile_par, profile_ser;
    const double t_profile_ser = time_best_of(
        reps, [&] { profile_ser = orbit::serial::diameter_profile(sys, depth, profile_options); });
    const double t_profile_par = time_best_of(
        reps, [&] { profile_par = orbit::diameter_profile(sys, depth, profile_options); });

    orbit::Census census_par, census_ser;
    const double t_census_ser = time_best_of(
        reps, [&] { census_ser = orbit::serial::census_large(sys, depth, 1e-3, enum_options); });
    const double t_census_par = time_best_of(
        reps, [&] { census_par = orbit::census_large(sys, depth, 1e-3, enum_options); });

    const int sample_depth = std::min(depth, 7);
    std::vector<SpherePoint> pts_par, pts_ser;
    const double t_limit_ser = time_best_of(reps, [&] {
        pts_ser = orbit::serial::limit_set_sample(sys, sample_depth, enum_options);
    });
    const double t_limit_par = time_best_of(
        reps, [&] { pts_par = orbit::limit_set_sample(sys, sample_depth, enum_options); });

    // Cross-check the kernels against the reference before reporting.
    bool ok = profile_par.per_depth.size() == profile_ser.per_depth.size();
    for (std::size_t m = 0; ok && m < profile_par.per_depth.size(); ++m) {
        ok = profile_par.per_depth[m].count == profile_ser.per_depth[m].count &&
             profile_par.per_depth[m].max_diameter == profile_ser.per_depth[m].max_diameter &&
             std::abs(profile_par.per_depth[m].mean_diameter -
                      profile_ser.per_depth[m].mean_diameter) <
                 1e-12 * std::max(1.0, profile_ser.per_depth[m].mean_diameter);
    }
    for (std::size_t m = 0; ok && m < census_par.per_depth.size(); ++m)
        ok = census_par.per_depth[m].count == census_ser.per_depth[m].count;
    ok = ok && pts_par.size() == pts_ser.size();
    for (std::size_t i = 0; ok && i < pts_par.size(); ++i)
        ok = chordal_distance(pts_par[i], pts_ser[i]) == 0.0;
    if (!ok) {
        std::fprintf(stderr, "kernel outputs do not match the serial reference\n");
        return 1;
    }

    std::printf("%-18s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");
    std::printf("%-18s %12.4f %12.4f %8.2fx\n", "diameter_profile", t_profile_ser, t_profile_par,
                t_profile_ser / t_profile_par);
    std::printf("%-18s %12.4f %12.4f %8.2fx\n", "census_large", t_census_ser, t_census_par,
                t_census_ser / t_census_par);
    std::printf("%-18s %12.4f %12.4f %8.2fx  (depth %d)\n", "limit_set_sample", t_limit_ser,
                t_limit_par, t_limit_ser / t_limit_par, sample_depth);
    return 0;
}
