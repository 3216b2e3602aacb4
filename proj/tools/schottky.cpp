// Command-line front end: one JSON config document drives every subcommand.
// Exit codes: 0 ok, 2 validation failure, 3 budget exceeded, 4 I/O or schema
// error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>

#include "CLI11.hpp"

#include "schottky/config.hpp"
#include "schottky/construct.hpp"
#include "schottky/json_io.hpp"
#include "schottky/orbit.hpp"
#include "schottky/qcmod.hpp"
#include "schottky/svg.hpp"

namespace {

using namespace schottky;
using io::ConfigDocument;
using io::json;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::BudgetExceeded:
        return 3;
    case ErrorKind::ParseError:
    case ErrorKind::SchemaError:
    case ErrorKind::IoError:
        return 4;
    default:
        return 2;
    }
}

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::optional<int> depth;
    std::optional<std::int64_t> budget;
    std::optional<double> threshold;
    std::optional<double> census_m;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<double> mu_r;
    std::optional<double> amplitude;
    std::optional<double> collar_r;
    std::optional<int> grid;
    std::optional<int> samples;
    std::string emit_config_path;
    int limit_depth = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* config = cmd->add_option("--config", args.config_path, "JSON config document");
    if (config_required)
        config->required();
    cmd->add_option("--out", args.out_path, "output path (stdout when omitted)");
    cmd->add_option("--format", args.format, "output format: json|csv|svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    cmd->add_option("--depth", args.depth, "tree depth override");
    cmd->add_option("--budget", args.budget, "node budget override");
    cmd->add_option("--threshold", args.threshold, "profile verdict threshold");
    cmd->add_option("--census-m", args.census_m, "census diameter threshold");
    cmd->add_option("--seed", args.seed, "random seed for property runs");
    cmd->add_option("--trials", args.trials, "property-run trial count");
    cmd->add_option("--r", args.mu_r, "Groetzsch modulus argument");
    cmd->add_option("--amplitude", args.amplitude, "collar profile amplitude");
    cmd->add_option("--collar-r", args.collar_r, "collar outer radius");
    cmd->add_option("--grid", args.grid, "grid resolution");
    cmd->add_option("--samples", args.samples, "sample count");
}

ConfigDocument load(const CommonArgs& args) {
    ConfigDocument doc;
    if (!args.config_path.empty())
        doc = io::load_config(args.config_path);
    io::RunOptions& o = doc.options;
    if (args.depth)
        o.depth = *args.depth;
    if (args.budget)
        o.budget = *args.budget;
    if (args.threshold)
        o.threshold = *args.threshold;
    if (args.census_m)
        o.census_m = *args.census_m;
    if (args.seed)
        o.seed = *args.seed;
    if (args.trials)
        o.trials = *args.trials;
    if (args.mu_r)
        o.mu_r = *args.mu_r;
    if (args.amplitude)
        o.amplitude = *args.amplitude;
    if (args.collar_r)
        o.collar_r = *args.collar_r;
    if (args.grid)
        o.grid = *args.grid;
    if (args.samples)
        o.samples = *args.samples;
    return doc;
}

void emit(const CommonArgs& args, const std::string& content) {
    if (args.out_path.empty())
        std::cout << content;
    else
        io::write_file_atomic(args.out_path, content);
}

std::string wrap_report(const char* command, const io::RunOptions& options, json result) {
    const json root{
        {"version", 1}, {"command", command}, {"options", io::to_json(options)},
        {"result", std::move(result)}};
    return root.dump(2) + "\n";
}

json system_overview(const CircleSystem& sys) {
    return json{{"pairs", sys.pairs.size()},
                {"schottky_like_only", sys.schottky_like_only}};
}

void maybe_emit_config(const CommonArgs& args, const CircleSystem& sys) {
    if (args.emit_config_path.empty())
        return;
    ConfigDocument doc;
    doc.kind = ConfigDocument::Kind::Pairs;
    doc.family.explicit_pairs = sys.pairs;
    io::write_file_atomic(args.emit_config_path, io::serialize_config(doc));
}

int cmd_validate(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    const CircleSystem sys = io::resolve_system(doc);
    const ValidationReport report = validate(sys);
    json result = io::to_json(report);
    result["system"] = system_overview(sys);
    emit(args, wrap_report("validate", doc.options, result));
    return report.admissible ? 0 : 2;
}

int cmd_orbit(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    const CircleSystem sys = io::resolve_system(doc);
    const orbit::EnumOptions enum_options{doc.options.budget};
    const orbit::ProfileOptions profile_options{doc.options.threshold, doc.options.budget};

    const auto circles = orbit::translated_circles(sys, doc.options.depth, enum_options);
    const auto chains = orbit::maximal_chains(sys, doc.options.depth, enum_options);
    const auto profile = orbit::diameter_profile(sys, doc.options.depth, profile_options);

    if (args.format == "csv") {
        emit(args, io::profile_csv(profile));
        return 0;
    }

    json circle_rows = json::array();
    for (const auto& tc : circles)
        circle_rows.push_back(json{{"word", tc.word.str()},
                                   {"depth", tc.depth},
                                   {"pair", tc.pair_index},
                                   {"side", tc.prime_side ? "C'" : "C"},
                                   {"circle", io::to_json(tc.circle)}});
    bool all_nested = true;
    for (const auto& chain : chains)
        all_nested = all_nested && chain.nested();

    json result{{"translated_circles", circle_rows},
                {"chain_count", chains.size()},
                {"chains_all_nested", all_nested},
                {"profile", io::to_json(profile)},
                {"min_plane_distance", orbit::min_plane_distance(sys)}};
    emit(args, wrap_report("orbit", doc.options, result));
    return 0;
}

int cmd_census(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    const CircleSystem sys = io::resolve_system(doc);
    const orbit::Census census = orbit::census_large(sys, doc.options.depth, doc.options.census_m,
                                                     orbit::EnumOptions{doc.options.budget});
    if (args.format == "csv") {
        emit(args, io::census_csv(census));
        return 0;
    }
    emit(args, wrap_report("census", doc.options, io::to_json(census)));
    return 0;
}

int cmd_limitset(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    const CircleSystem sys = io::resolve_system(doc);
    const auto points =
        orbit::limit_set_sample(sys, doc.options.depth, orbit::EnumOptions{doc.options.budget});
    if (args.format == "csv") {
        std::string out = "index,x,y\n";
        char line[120];
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g\n", i, points[i].value().real(),
                          points[i].value().imag());
            out += line;
        }
        emit(args, out);
        return 0;
    }
    json rows = json::array();
    for (const SpherePoint& p : points)
        rows.push_back(io::to_json(p));
    emit(args, wrap_report("limitset", doc.options, json{{"points", rows}}));
    return 0;
}

int cmd_construct_ends(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    if (doc.kind != ConfigDocument::Kind::EndSet)
        raise(ErrorKind::SchemaError, "construct ends requires a system of type end_set");
    const FamilySpec fam =
        construct::realize_end_space(doc.end_set, doc.end_range, doc.margin);
    const CircleSystem sys = materialize(fam);
    const ValidationReport report = validate(sys);
    const StarReport star = check_star(fam, std::max(doc.options.depth, 2));
    const auto acc = accumulation_points(fam);

    json acc_rows = json::array();
    for (const SpherePoint& p : acc)
        acc_rows.push_back(io::to_json(p));
    json result{{"families", fam.families.size()},
                {"tails", fam.tails.size()},
                {"pairs_materialized", sys.pairs.size()},
                {"validation", io::to_json(report)},
                {"condition_star", io::to_json(star)},
                {"accumulation", acc_rows},
                {"hausdorff_to_accumulation",
                 construct::directed_hausdorff_chordal(acc, construct::circle_centers(sys))}};
    maybe_emit_config(args, sys);
    emit(args, wrap_report("construct ends", doc.options, result));
    return report.admissible && star.pass ? 0 : 2;
}

int cmd_construct_counterexample(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    if (doc.kind != ConfigDocument::Kind::Counterexample)
        raise(ErrorKind::SchemaError,
              "construct counterexample requires a system of type counterexample");
    const construct::CounterexampleResult result =
        construct::build_nested_counterexample(doc.recipe);
    const ValidationReport report = validate(result.system);

    json radii = json::array();
    for (const auto& tc : result.chain.circles)
        radii.push_back(tc.circle.radius);
    json body{{"pairs", result.system.pairs.size()},
              {"validation", io::to_json(report)},
              {"chain_nested", result.chain.nested()},
              {"chain_radii", radii},
              {"limit_radius_lower_bound", result.limit_radius_lower_bound},
              {"schottky_like_only", result.system.schottky_like_only}};
    maybe_emit_config(args, result.system);
    emit(args, wrap_report("construct counterexample", doc.options, body));
    return report.admissible ? 0 : 2;
}

int cmd_construct_fatset(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    if (doc.kind != ConfigDocument::Kind::FatLimitSet)
        raise(ErrorKind::SchemaError, "construct fatset requires a system of type fat_limit_set");
    const CircleSystem sys = construct::build_fat_limit_set(doc.fat_n, doc.fat_delta);
    const ValidationReport report = validate(sys);
    json body{{"pairs", sys.pairs.size()},
              {"validation", io::to_json(report)},
              {"min_plane_distance", report.min_plane_distance},
              {"delta", doc.fat_delta}};
    maybe_emit_config(args, sys);
    emit(args, wrap_report("construct fatset", doc.options, body));
    return report.admissible ? 0 : 2;
}

int cmd_qc_mu(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    const double r = doc.options.mu_r;
    const double value = qc::mu(r);
    json result{{"r", r},
                {"mu", value},
                {"mu_inv_round_trip", qc::mu_inv(value)},
                {"inner_annulus", qc::inner_annulus(value)}};
    emit(args, wrap_report("qc mu", doc.options, result));
    return 0;
}

int cmd_qc_bound(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    std::mt19937_64 rng(doc.options.seed);
    auto uniform = [&rng](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    constexpr double kTau = 6.283185307179586;

    int violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < doc.options.trials; ++trial) {
        const Complex a1(uniform(-2.0, 2.0), uniform(-2.0, 2.0));
        const Complex a2(uniform(-2.0, 2.0), uniform(-2.0, 2.0));
        const double core1 = uniform(0.2, 1.5);
        const double m = uniform(0.2, 2.0);
        const qc::Annulus source(a1, core1 * std::exp(-m / 2.0), core1 * std::exp(m / 2.0));
        const bool invert = trial % 2 == 1;
        const Complex lambda = std::polar(uniform(0.2, 5.0), uniform(0.0, kTau));
        const Moebius f = Moebius::translation(a2) *
                          (invert ? Moebius(0.0, lambda, 1.0, 0.0) : Moebius::scaling(lambda)) *
                          Moebius::translation(-a1);
        const double core2 = invert ? std::abs(lambda) / core1 : std::abs(lambda) * core1;
        const double extra = uniform(0.0, 1.0);
        const qc::Annulus target(a2, core2 * std::exp(-(m + extra) / 2.0),
                                 core2 * std::exp((m + extra) / 2.0));
        const qc::DerivativeBoundReport report =
            qc::check_derivative_bound(f, source, target, doc.options.samples);
        if (!report.pass)
            ++violations;
        worst_margin = std::min(worst_margin, report.bound - report.max_derivative);
    }
    json result{{"trials", doc.options.trials},
                {"violations", violations},
                {"worst_margin", worst_margin},
                {"seed", doc.options.seed}};
    emit(args, wrap_report("qc bound", doc.options, result));
    return violations == 0 ? 0 : 2;
}

int cmd_qc_collar(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    const qc::BoundaryProfile profile = qc::BoundaryProfile::cosine(doc.options.amplitude);
    const qc::CollarInterpolation collar =
        qc::collar_interpolation(profile, doc.options.collar_r, doc.options.grid);

    if (args.format == "csv") {
        // Dilatation grid dump.
        std::string out = "t,theta,abs_beltrami\n";
        char line[160];
        const int grid = doc.options.grid;
        const double r = doc.options.collar_r;
        constexpr double kTau = 6.283185307179586;
        for (int i = 0; i < grid; ++i) {
            const double t = 1.0 + (r - 1.0) * (i + 0.5) / grid;
            for (int j = 0; j < grid; ++j) {
                const double theta = kTau * j / grid;
                const double mu_abs =
                    qc::beltrami_modulus(collar.map, std::polar(t, theta));
                std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", t, theta, mu_abs);
                out += line;
            }
        }
        emit(args, out);
        return 0;
    }

    json result{{"amplitude", doc.options.amplitude},
                {"outer_radius", doc.options.collar_r},
                {"grid", collar.report.grid},
                {"max_beltrami", collar.report.max_beltrami},
                {"dilatation", collar.report.dilatation},
                {"jacobian_positive", collar.report.jacobian_positive}};
    emit(args, wrap_report("qc collar", doc.options, result));
    return 0;
}

int cmd_render(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    const CircleSystem sys = io::resolve_system(doc);
    svg::RenderExtras extras;
    if (doc.options.depth >= 1)
        extras.translated =
            orbit::translated_circles(sys, doc.options.depth, orbit::EnumOptions{doc.options.budget});
    if (args.limit_depth >= 1)
        extras.limit_samples =
            orbit::limit_set_sample(sys, args.limit_depth, orbit::EnumOptions{doc.options.budget});
    extras.accumulation = accumulation_points(io::resolve_family(doc));
    emit(args, svg::render_svg(sys, extras));
    return 0;
}

int cmd_summary(const CommonArgs& args) {
    const ConfigDocument doc = load(args);
    const FamilySpec fam = io::resolve_family(doc);
    const HandlebodySummary summary = handlebody_summary(fam);
    emit(args, wrap_report("summary", doc.options, io::to_json(summary)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"schottky: truncated infinitely generated classical Schottky groups"};
    app.require_subcommand(1);

    CommonArgs args;
    int (*handler)(const CommonArgs&) = nullptr;

    const auto make = [&](CLI::App* parent, const char* name, const char* desc,
                          int (*fn)(const CommonArgs&), bool config_required = true) {
        CLI::App* cmd = parent->add_subcommand(name, desc);
        add_common(cmd, args, config_required);
        cmd->callback([&handler, fn]() { handler = fn; });
        return cmd;
    };

    make(&app, "validate", "check admissibility of the configuration", cmd_validate);
    make(&app, "orbit", "translated circles, chains, and the diameter profile", cmd_orbit);
    make(&app, "census", "count translated circles with large spherical diameter", cmd_census);
    make(&app, "limitset", "attracting fixed points of depth-n words", cmd_limitset);

    CLI::App* construct_cmd =
        app.add_subcommand("construct", "build the named example configurations");
    construct_cmd->require_subcommand(1);
    CLI::App* ends =
        make(construct_cmd, "ends", "realize an end set as a circle-family accumulation set", cmd_construct_ends);
    ends->add_option("--emit-config", args.emit_config_path,
                     "write the materialized system as a pairs config");
    CLI::App* cex = make(construct_cmd, "counterexample", "nested-geodesic counterexample",
                         cmd_construct_counterexample);
    cex->add_option("--emit-config", args.emit_config_path,
                    "write the materialized system as a pairs config");
    CLI::App* fat = make(construct_cmd, "fatset", "circles accumulating on the unit circle",
                         cmd_construct_fatset);
    fat->add_option("--emit-config", args.emit_config_path,
                    "write the materialized system as a pairs config");

    CLI::App* qc_cmd = app.add_subcommand("qc", "quasiconformal toolkit");
    qc_cmd->require_subcommand(1);
    make(qc_cmd, "mu", "Groetzsch modulus and inverse", cmd_qc_mu, false);
    make(qc_cmd, "bound", "randomized annulus derivative-bound run", cmd_qc_bound, false);
    make(qc_cmd, "collar", "collar interpolation dilatation report", cmd_qc_collar, false);

    CLI::App* render = make(&app, "render", "emit an SVG diagram", cmd_render);
    render->add_option("--limit-depth", args.limit_depth, "overlay limit-set samples");
    make(&app, "summary", "handlebody genus and end data", cmd_summary);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        return handler ? handler(args) : 4;
    } catch (const schottky::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
