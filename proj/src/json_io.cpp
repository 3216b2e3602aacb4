#include "schottky/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace schottky::io {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    raise(ErrorKind::SchemaError, path.empty() ? what : path + ": " + what);
}

const json& get_field(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end())
        schema_error(path + "." + key, "missing required field");
    return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& path) {
    if (!obj.is_object())
        schema_error(path, "expected an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key)
                known = true;
        if (!known)
            schema_error(path + "." + item.key(), "unknown field");
    }
}

double as_double(const json& v, const std::string& path) {
    if (!v.is_number())
        schema_error(path, "expected a number");
    return v.get<double>();
}

std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        schema_error(path, "expected an integer");
    return v.get<std::int64_t>();
}

Complex parse_complex(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2)
        schema_error(path, "expected [re, im]");
    return {as_double(v[0], path + "[0]"), as_double(v[1], path + "[1]")};
}

OrientedCircle parse_circle(const json& v, const std::string& path) {
    reject_unknown(v, {"cx", "cy", "r"}, path);
    const double cx = as_double(get_field(v, "cx", path), path + ".cx");
    const double cy = as_double(get_field(v, "cy", path), path + ".cy");
    const double r = as_double(get_field(v, "r", path), path + ".r");
    if (!(r > 0.0))
        schema_error(path + ".r", "radius must be positive");
    return OrientedCircle({cx, cy}, r);
}

Moebius parse_moebius(const json& v, const std::string& path) {
    reject_unknown(v, {"a", "b", "c", "d"}, path);
    return Moebius(parse_complex(get_field(v, "a", path), path + ".a"),
                   parse_complex(get_field(v, "b", path), path + ".b"),
                   parse_complex(get_field(v, "c", path), path + ".c"),
                   parse_complex(get_field(v, "d", path), path + ".d"));
}

CirclePair parse_pair(const json& v, const std::string& path, int label) {
    reject_unknown(v, {"c", "c_prime", "map", "twist"}, path);
    CirclePair pair;
    pair.c = parse_circle(get_field(v, "c", path), path + ".c");
    pair.c_prime = parse_circle(get_field(v, "c_prime", path), path + ".c_prime");
    pair.label = label;
    double twist = 0.0;
    if (v.contains("twist"))
        twist = as_double(v["twist"], path + ".twist");
    const json& map = get_field(v, "map", path);
    if (map.is_string()) {
        if (map.get<std::string>() != "canonical")
            schema_error(path + ".map", "expected \"canonical\" or a matrix");
        pair.map = pair_circles(pair.c, pair.c_prime, twist);
    } else {
        pair.map = parse_moebius(map, path + ".map");
    }
    return pair;
}

std::vector<CirclePair> parse_pair_list(const json& v, const std::string& path) {
    if (!v.is_array())
        schema_error(path, "expected an array of pairs");
    std::vector<CirclePair> pairs;
    int label = 0;
    for (const json& item : v) {
        pairs.push_back(parse_pair(item, path + "[" + std::to_string(label) + "]", label));
        ++label;
    }
    return pairs;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

const char* kind_name(ConfigDocument::Kind kind) {
    switch (kind) {
    case ConfigDocument::Kind::Pairs: return "pairs";
    case ConfigDocument::Kind::Family: return "family";
    case ConfigDocument::Kind::EndSet: return "end_set";
    case ConfigDocument::Kind::Counterexample: return "counterexample";
    case ConfigDocument::Kind::FatLimitSet: return "fat_limit_set";
    }
    return "unknown";
}

ConfigDocument parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        raise(ErrorKind::ParseError, e.what());
    }

    reject_unknown(root, {"version", "system", "options"}, "");
    ConfigDocument doc;
    if (as_int(get_field(root, "version", ""), ".version") != 1)
        schema_error(".version", "unsupported config version (expected 1)");

    const json& system = get_field(root, "system", "");
    const std::string type =
        get_field(system, "type", ".system").is_string()
            ? system["type"].get<std::string>()
            : (schema_error(".system.type", "expected a string"), std::string());

    if (type == "pairs") {
        reject_unknown(system, {"type", "pairs"}, ".system");
        doc.kind = ConfigDocument::Kind::Pairs;
        doc.family.explicit_pairs = parse_pair_list(get_field(system, "pairs", ".system"),
                                                    ".system.pairs");
    } else if (type == "family") {
        reject_unknown(system, {"type", "families", "tails", "explicit_pairs"}, ".system");
        doc.kind = ConfigDocument::Kind::Family;
        if (system.contains("families")) {
            const json& families = system["families"];
            if (!families.is_array())
                schema_error(".system.families", "expected an array");
            int index = 0;
            for (const json& f : families) {
                const std::string path = ".system.families[" + std::to_string(index++) + "]";
                reject_unknown(f, {"base", "conjugator", "range"}, path);
                ConjugatedFamily family;
                family.base = parse_pair(get_field(f, "base", path), path + ".base", 0);
                family.conjugator =
                    parse_moebius(get_field(f, "conjugator", path), path + ".conjugator");
                family.range =
                    static_cast<int>(as_int(get_field(f, "range", path), path + ".range"));
                if (family.range < 1)
                    schema_error(path + ".range", "range must be >= 1");
                doc.family.families.push_back(family);
            }
        }
        if (system.contains("tails")) {
            const json& tails = system["tails"];
            if (!tails.is_array())
                schema_error(".system.tails", "expected an array");
            int index = 0;
            for (const json& t : tails) {
                const std::string path = ".system.tails[" + std::to_string(index++) + "]";
                reject_unknown(t, {"point", "direction", "scale", "count"}, path);
                TailFamily tail;
                tail.limit_point = parse_complex(get_field(t, "point", path), path + ".point");
                tail.direction = as_double(get_field(t, "direction", path), path + ".direction");
                tail.scale = as_double(get_field(t, "scale", path), path + ".scale");
                tail.count =
                    static_cast<int>(as_int(get_field(t, "count", path), path + ".count"));
                doc.family.tails.push_back(tail);
            }
        }
        if (system.contains("explicit_pairs"))
            doc.family.explicit_pairs =
                parse_pair_list(system["explicit_pairs"], ".system.explicit_pairs");
    } else if (type == "end_set") {
        reject_unknown(system, {"type", "points", "cantor_depth", "n", "margin"}, ".system");
        doc.kind = ConfigDocument::Kind::EndSet;
        if (system.contains("points")) {
            if (!system["points"].is_array())
                schema_error(".system.points", "expected an array of numbers");
            int index = 0;
            for (const json& p : system["points"])
                doc.end_set.points.push_back(
                    as_double(p, ".system.points[" + std::to_string(index++) + "]"));
        }
        if (system.contains("cantor_depth"))
            doc.end_set.cantor_depth = static_cast<int>(
                as_int(system["cantor_depth"], ".system.cantor_depth"));
        if (system.contains("n"))
            doc.end_range = static_cast<int>(as_int(system["n"], ".system.n"));
        if (system.contains("margin"))
            doc.margin = as_double(system["margin"], ".system.margin");
    } else if (type == "counterexample") {
        reject_unknown(system,
                       {"type", "count", "ell_coeff", "ell_ratio", "pair_gap", "base_radius",
                        "explicit_lengths"},
                       ".system");
        doc.kind = ConfigDocument::Kind::Counterexample;
        doc.recipe.count =
            static_cast<int>(as_int(get_field(system, "count", ".system"), ".system.count"));
        if (system.contains("ell_coeff"))
            doc.recipe.ell_coeff = as_double(system["ell_coeff"], ".system.ell_coeff");
        if (system.contains("ell_ratio"))
            doc.recipe.ell_ratio = as_double(system["ell_ratio"], ".system.ell_ratio");
        if (system.contains("pair_gap"))
            doc.recipe.pair_gap = as_double(system["pair_gap"], ".system.pair_gap");
        if (system.contains("base_radius"))
            doc.recipe.base_radius = as_double(system["base_radius"], ".system.base_radius");
        if (system.contains("explicit_lengths")) {
            int index = 0;
            for (const json& v : system["explicit_lengths"])
                doc.recipe.explicit_lengths.push_back(as_double(
                    v, ".system.explicit_lengths[" + std::to_string(index++) + "]"));
        }
    } else if (type == "fat_limit_set") {
        reject_unknown(system, {"type", "n", "delta"}, ".system");
        doc.kind = ConfigDocument::Kind::FatLimitSet;
        doc.fat_n = static_cast<int>(as_int(get_field(system, "n", ".system"), ".system.n"));
        doc.fat_delta = as_double(get_field(system, "delta", ".system"), ".system.delta");
    } else {
        schema_error(".system.type", "unknown system type '" + type + "'");
    }

    if (root.contains("options")) {
        const json& options = root["options"];
        reject_unknown(options,
                       {"depth", "budget", "threshold", "census_m", "seed", "trials", "mu_r",
                        "collar_r", "amplitude", "grid", "samples"},
                       ".options");
        RunOptions& o = doc.options;
        if (options.contains("depth"))
            o.depth = static_cast<int>(as_int(options["depth"], ".options.depth"));
        if (options.contains("budget"))
            o.budget = as_int(options["budget"], ".options.budget");
        if (options.contains("threshold"))
            o.threshold = as_double(options["threshold"], ".options.threshold");
        if (options.contains("census_m"))
            o.census_m = as_double(options["census_m"], ".options.census_m");
        if (options.contains("seed"))
            o.seed = static_cast<std::uint64_t>(as_int(options["seed"], ".options.seed"));
        if (options.contains("trials"))
            o.trials = static_cast<int>(as_int(options["trials"], ".options.trials"));
        if (options.contains("mu_r"))
            o.mu_r = as_double(options["mu_r"], ".options.mu_r");
        if (options.contains("collar_r"))
            o.collar_r = as_double(options["collar_r"], ".options.collar_r");
        if (options.contains("amplitude"))
            o.amplitude = as_double(options["amplitude"], ".options.amplitude");
        if (options.contains("grid"))
            o.grid = static_cast<int>(as_int(options["grid"], ".options.grid"));
        if (options.contains("samples"))
            o.samples = static_cast<int>(as_int(options["samples"], ".options.samples"));
    }

    return doc;
}

ConfigDocument load_config(const std::string& path) { return parse_config(read_file(path)); }

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const SpherePoint& p) {
    if (p.is_infinity())
        return json("infinity");
    return to_json(p.value());
}

json to_json(const OrientedCircle& c) {
    return json{{"cx", c.center.real()}, {"cy", c.center.imag()}, {"r", c.radius}};
}

json to_json(const Moebius& m) {
    return json{{"a", to_json(m.a())}, {"b", to_json(m.b())}, {"c", to_json(m.c())},
                {"d", to_json(m.d())}};
}

json to_json(const CirclePair& pair) {
    return json{{"c", to_json(pair.c)}, {"c_prime", to_json(pair.c_prime)},
                {"map", to_json(pair.map)}};
}

std::string serialize_config(const ConfigDocument& doc) {
    json system;
    switch (doc.kind) {
    case ConfigDocument::Kind::Pairs: {
        system["type"] = "pairs";
        json pairs = json::array();
        for (const CirclePair& pair : doc.family.explicit_pairs)
            pairs.push_back(to_json(pair));
        system["pairs"] = pairs;
        break;
    }
    case ConfigDocument::Kind::Family: {
        system["type"] = "family";
        json families = json::array();
        for (const ConjugatedFamily& f : doc.family.families)
            families.push_back(json{{"base", to_json(f.base)},
                                    {"conjugator", to_json(f.conjugator)},
                                    {"range", f.range}});
        system["families"] = families;
        json tails = json::array();
        for (const TailFamily& t : doc.family.tails)
            tails.push_back(json{{"point", to_json(t.limit_point)},
                                 {"direction", t.direction},
                                 {"scale", t.scale},
                                 {"count", t.count}});
        system["tails"] = tails;
        json explicit_pairs = json::array();
        for (const CirclePair& pair : doc.family.explicit_pairs)
            explicit_pairs.push_back(to_json(pair));
        system["explicit_pairs"] = explicit_pairs;
        break;
    }
    case ConfigDocument::Kind::EndSet: {
        system["type"] = "end_set";
        system["points"] = doc.end_set.points;
        system["cantor_depth"] = doc.end_set.cantor_depth;
        system["n"] = doc.end_range;
        system["margin"] = doc.margin;
        break;
    }
    case ConfigDocument::Kind::Counterexample: {
        system["type"] = "counterexample";
        system["count"] = doc.recipe.count;
        system["ell_coeff"] = doc.recipe.ell_coeff;
        system["ell_ratio"] = doc.recipe.ell_ratio;
        system["pair_gap"] = doc.recipe.pair_gap;
        system["base_radius"] = doc.recipe.base_radius;
        if (!doc.recipe.explicit_lengths.empty())
            system["explicit_lengths"] = doc.recipe.explicit_lengths;
        break;
    }
    case ConfigDocument::Kind::FatLimitSet: {
        system["type"] = "fat_limit_set";
        system["n"] = doc.fat_n;
        system["delta"] = doc.fat_delta;
        break;
    }
    }

    const json root{{"version", doc.version}, {"system", system},
                    {"options", to_json(doc.options)}};
    return root.dump(2) + "\n";
}

CircleSystem resolve_system(const ConfigDocument& doc) {
    switch (doc.kind) {
    case ConfigDocument::Kind::Pairs:
    case ConfigDocument::Kind::Family:
        return materialize(doc.family);
    case ConfigDocument::Kind::EndSet:
        return materialize(construct::realize_end_space(doc.end_set, doc.end_range, doc.margin));
    case ConfigDocument::Kind::Counterexample:
        return construct::build_nested_counterexample(doc.recipe).system;
    case ConfigDocument::Kind::FatLimitSet:
        return construct::build_fat_limit_set(doc.fat_n, doc.fat_delta);
    }
    raise(ErrorKind::SchemaError, "unresolvable document kind");
}

FamilySpec resolve_family(const ConfigDocument& doc) {
    switch (doc.kind) {
    case ConfigDocument::Kind::Pairs:
    case ConfigDocument::Kind::Family:
        return doc.family;
    case ConfigDocument::Kind::EndSet:
        return construct::realize_end_space(doc.end_set, doc.end_range, doc.margin);
    case ConfigDocument::Kind::Counterexample:
    case ConfigDocument::Kind::FatLimitSet: {
        FamilySpec spec;
        spec.explicit_pairs = resolve_system(doc).pairs;
        return spec;
    }
    }
    raise(ErrorKind::SchemaError, "unresolvable document kind");
}

json to_json(const ValidationReport& report) {
    json violations = json::array();
    for (const Violation& v : report.violations)
        violations.push_back(json{{"kind", violation_kind_name(v.kind)},
                                  {"index_a", v.index_a},
                                  {"index_b", v.index_b},
                                  {"measured", number_or_null(v.measured)}});
    return json{{"admissible", report.admissible},
                {"violations", violations},
                {"min_pair_gap", number_or_null(report.min_pair_gap)},
                {"min_plane_distance", number_or_null(report.min_plane_distance)},
                {"purely_loxodromic", report.purely_loxodromic}};
}

json to_json(const StarReport& report) {
    json witnesses = json::array();
    for (const StarWitness& w : report.witnesses)
        witnesses.push_back(json{{"family", w.family}, {"index", w.index}, {"what", w.what}});
    return json{{"pass", report.pass},
                {"witnesses", witnesses},
                {"truncation_limited", true},
                {"checked_depth", report.checked_depth}};
}

json to_json(const HandlebodySummary& summary) {
    json accumulation = json::array();
    for (const SpherePoint& p : summary.accumulation)
        accumulation.push_back(to_json(p));
    return json{{"genus", summary.infinite_genus ? json("infinity") : json(summary.genus)},
                {"end_count_at_truncation", summary.end_count_at_truncation},
                {"accumulation", accumulation}};
}

json to_json(const orbit::DiameterProfile& profile) {
    json rows = json::array();
    for (const orbit::DepthStats& row : profile.per_depth)
        rows.push_back(json{{"depth", row.depth},
                            {"count", row.count},
                            {"max_diam", row.max_diameter},
                            {"mean_diam", row.mean_diameter}});
    return json{{"per_depth", rows},
                {"plausible_fundamental_domain", profile.plausible_fundamental_domain},
                {"verdict_is_heuristic", true},
                {"threshold", profile.threshold}};
}

json to_json(const orbit::Census& census) {
    json rows = json::array();
    for (const orbit::CensusRow& row : census.per_depth)
        rows.push_back(
            json{{"depth", row.depth}, {"count", row.count}, {"cumulative", row.cumulative}});
    return json{{"per_depth", rows},
                {"threshold_m", census.threshold_m},
                {"cumulative", census.cumulative}};
}

json to_json(const RunOptions& options) {
    return json{{"depth", options.depth},
                {"budget", options.budget},
                {"threshold", options.threshold},
                {"census_m", options.census_m},
                {"seed", options.seed},
                {"trials", options.trials},
                {"mu_r", options.mu_r},
                {"collar_r", options.collar_r},
                {"amplitude", options.amplitude},
                {"grid", options.grid},
                {"samples", options.samples}};
}

std::string profile_csv(const orbit::DiameterProfile& profile) {
    std::string out = "depth,count,max_diam,mean_diam\n";
    char line[160];
    for (const orbit::DepthStats& row : profile.per_depth) {
        std::snprintf(line, sizeof(line), "%d,%lld,%.17g,%.17g\n", row.depth,
                      static_cast<long long>(row.count), row.max_diameter, row.mean_diameter);
        out += line;
    }
    return out;
}

std::string census_csv(const orbit::Census& census) {
    std::string out = "depth,count,cumulative\n";
    char line[120];
    for (const orbit::CensusRow& row : census.per_depth) {
        std::snprintf(line, sizeof(line), "%d,%lld,%lld\n", row.depth,
                      static_cast<long long>(row.count), static_cast<long long>(row.cumulative));
        out += line;
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            raise(ErrorKind::IoError, "cannot open " + tmp + " for writing");
        out << content;
        if (!out)
            raise(ErrorKind::IoError, "failed writing " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        raise(ErrorKind::IoError, "failed to move " + tmp + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(ErrorKind::IoError, "cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace schottky::io
