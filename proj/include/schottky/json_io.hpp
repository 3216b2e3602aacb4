#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "schottky/config.hpp"
#include "schottky/construct.hpp"
#include "schottky/orbit.hpp"

namespace schottky::io {

using nlohmann::json;

/// Options shared by the CLI subcommands; every report embeds the resolved
/// set for reproducibility.
struct RunOptions {
    int depth = 3;
    std::int64_t budget = 10'000'000;
    double threshold = 1e-2;  // diameter-profile verdict threshold
    double census_m = 1e-3;   // census diameter threshold
    std::uint64_t seed = 20240817;
    int trials = 1000; // property-run trials
    double mu_r = 0.5;
    double collar_r = 2.718281828459045;
    double amplitude = 0.5;
    int grid = 64;
    int samples = 200;
};

/// One config document drives every subcommand: an explicit pair list, a
/// family spec, an end-set spec, a counterexample recipe, or fat-limit-set
/// parameters, plus run options.
struct ConfigDocument {
    enum class Kind { Pairs, Family, EndSet, Counterexample, FatLimitSet };

    int version = 1;
    Kind kind = Kind::Pairs;

    FamilySpec family; // Pairs: explicit_pairs only; Family: as declared
    construct::EndSetSpec end_set;
    int end_range = 2;
    double margin = 3.0;
    construct::CounterexampleRecipe recipe;
    int fat_n = 4;
    double fat_delta = 1.0;

    RunOptions options;
};

const char* kind_name(ConfigDocument::Kind kind);

/// Parses and validates a document; unknown fields are rejected and schema
/// errors name the offending field path. Throws ParseError / SchemaError.
ConfigDocument parse_config(const std::string& text);

/// Reads a config file. Throws IoError on unreadable paths.
ConfigDocument load_config(const std::string& path);

/// Canonical serialization: "canonical" pairing maps are resolved to their
/// matrices at parse time, so serialize(parse(x)) is a fixed point of
/// parse-then-serialize.
std::string serialize_config(const ConfigDocument& doc);

/// Materializes whatever the document describes into a finite circle system.
CircleSystem resolve_system(const ConfigDocument& doc);

/// The family structure behind the document, when it has one (family,
/// end-set, or pair documents; end-set documents are realized first).
FamilySpec resolve_family(const ConfigDocument& doc);

// JSON views of the domain objects (used by the CLI reports).
json to_json(const Complex& z);
json to_json(const SpherePoint& p);
json to_json(const OrientedCircle& c);
json to_json(const Moebius& m);
json to_json(const CirclePair& pair);
json to_json(const ValidationReport& report);
json to_json(const StarReport& report);
json to_json(const HandlebodySummary& summary);
json to_json(const orbit::DiameterProfile& profile);
json to_json(const orbit::Census& census);
json to_json(const RunOptions& options);

/// CSV emission for the per-depth tables.
std::string profile_csv(const orbit::DiameterProfile& profile);
std::string census_csv(const orbit::Census& census);

/// Writes via a temp file and rename; throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

} // namespace schottky::io
