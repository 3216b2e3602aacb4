#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>

#include "schottky/json_io.hpp"
#include "schottky/svg.hpp"
#include "test_systems.hpp"

using namespace schottky;
using namespace schottky::io;

namespace {

const char* kMinimalDoc = R"({
  "version": 1,
  "system": {
    "type": "pairs",
    "pairs": [
      {"c": {"cx": -2.0, "cy": 0.0, "r": 1.0},
       "c_prime": {"cx": 2.0, "cy": 0.0, "r": 1.0},
       "map": "canonical"}
    ]
  }
})";

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

} // namespace

TEST_CASE("minimal explicit document parses and synthesizes the canonical map") {
    const ConfigDocument doc = parse_config(kMinimalDoc);
    CHECK(doc.kind == ConfigDocument::Kind::Pairs);
    REQUIRE(doc.family.explicit_pairs.size() == 1);

    const CirclePair& pair = doc.family.explicit_pairs[0];
    const Moebius expected = pair_circles(pair.c, pair.c_prime, 0.0);
    CHECK(std::abs(pair.map.a() - expected.a()) < 1e-12);
    CHECK(std::abs(pair.map.b() - expected.b()) < 1e-12);

    const CircleSystem sys = resolve_system(doc);
    CHECK(sys.pairs.size() == 1);
    CHECK(validate(sys).admissible);
}

TEST_CASE("schema errors name the offending field") {
    const char* missing_radius = R"({
      "version": 1,
      "system": {"type": "pairs", "pairs": [
        {"c": {"cx": 0.0, "cy": 0.0}, "c_prime": {"cx": 4.0, "cy": 0.0, "r": 1.0},
         "map": "canonical"}]}
    })";
    try {
        parse_config(missing_radius);
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK(std::string(e.what()).find(".r") != std::string::npos);
    }

    const char* unknown_field = R"({
      "version": 1,
      "system": {"type": "fat_limit_set", "n": 4, "delta": 1.0, "extra": true}
    })";
    try {
        parse_config(unknown_field);
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK(std::string(e.what()).find("extra") != std::string::npos);
    }

    const char* bad_version = R"({"version": 2, "system": {"type": "fat_limit_set", "n": 1, "delta": 1.0}})";
    CHECK_THROWS_AS(parse_config(bad_version), Error);
}

TEST_CASE("malformed JSON raises ParseError") {
    try {
        parse_config("{\"version\": 1,,}");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ParseError);
    }
}

TEST_CASE("parse -> serialize reaches a canonical fixed point") {
    const char* documents[] = {
        kMinimalDoc,
        R"({"version": 1, "system": {"type": "fat_limit_set", "n": 4, "delta": 0.5},
            "options": {"depth": 4, "census_m": 0.01}})",
        R"({"version": 1, "system": {"type": "end_set", "points": [0.0, 1.0], "n": 2, "margin": 3.0}})",
        R"({"version": 1, "system": {"type": "counterexample", "count": 6}})",
    };
    for (const char* doc_text : documents) {
        const std::string once = serialize_config(parse_config(doc_text));
        const std::string twice = serialize_config(parse_config(once));
        CHECK(once == twice);
    }
}

TEST_CASE("documents resolve to systems and families") {
    const ConfigDocument fat = parse_config(
        R"({"version": 1, "system": {"type": "fat_limit_set", "n": 3, "delta": 1.0}})");
    CHECK(resolve_system(fat).pairs.size() == 3);
    CHECK(accumulation_points(resolve_family(fat)).empty());

    const ConfigDocument ends = parse_config(
        R"({"version": 1, "system": {"type": "end_set", "points": [0.0, 1.0], "n": 2, "margin": 3.0}})");
    CHECK(resolve_system(ends).pairs.size() == 5);
    CHECK(accumulation_points(resolve_family(ends)).size() == 2);

    const ConfigDocument cex = parse_config(
        R"({"version": 1, "system": {"type": "counterexample", "count": 4}})");
    const CircleSystem cex_sys = resolve_system(cex);
    CHECK(cex_sys.pairs.size() == 4);
    CHECK(cex_sys.schottky_like_only);
}

TEST_CASE("family documents round trip through explicit matrices") {
    const ConfigDocument pairs_doc = parse_config(kMinimalDoc);
    ConfigDocument family_doc;
    family_doc.kind = ConfigDocument::Kind::Family;
    ConjugatedFamily family;
    family.base = pairs_doc.family.explicit_pairs[0];
    const Moebius phi = Moebius::to_zero_infinity({-5.0, 0.0}, {5.0, 0.0});
    family.conjugator = phi.inverse() * Moebius::scaling(9.0) * phi;
    family.range = 2;
    family_doc.family.families.push_back(family);

    const std::string text = serialize_config(family_doc);
    const ConfigDocument parsed = parse_config(text);
    REQUIRE(parsed.family.families.size() == 1);
    CHECK(parsed.family.families[0].range == 2);
    CHECK(serialize_config(parsed) == text);
}

TEST_CASE("atomic file round trip") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "schottky_io_test.json").string();
    write_file_atomic(path, "payload\n");
    CHECK(read_file(path) == "payload\n");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_file(path), Error);
}

TEST_CASE("svg: element counts match the configuration") {
    const CircleSystem one = testsys::one_pair_system();
    const std::string svg_one = svg::render_svg(one);
    CHECK(count_occurrences(svg_one, "<circle ") == 2);
    CHECK(count_occurrences(svg_one, "<text ") == 2);
    CHECK(svg_one.find("viewport:") != std::string::npos);

    const CircleSystem two = testsys::two_pair_system();
    svg::RenderExtras extras;
    extras.translated = orbit::translated_circles(two, 2);
    const std::string svg_two = svg::render_svg(two, extras);
    CHECK(count_occurrences(svg_two, "<circle ") == 4 + 16);
}

TEST_CASE("svg: samples and accumulation markers render") {
    const CircleSystem sys = testsys::two_pair_system();
    svg::RenderExtras extras;
    extras.limit_samples = orbit::limit_set_sample(sys, 2);
    extras.accumulation.push_back(SpherePoint::finite({0.0, 0.0}));
    extras.accumulation.push_back(SpherePoint::infinity()); // skipped, not drawn
    const std::string out = svg::render_svg(sys, extras);
    CHECK(count_occurrences(out, "fill=\"#d62728\"") == extras.limit_samples.size());
    CHECK(count_occurrences(out, "<path ") == 1);
}

TEST_CASE("svg output is byte-identical across runs") {
    const CircleSystem sys = testsys::two_pair_system();
    svg::RenderExtras extras;
    extras.translated = orbit::translated_circles(sys, 3);
    extras.limit_samples = orbit::limit_set_sample(sys, 3);
    const std::string a = svg::render_svg(sys, extras);
    const std::string b = svg::render_svg(sys, extras);
    CHECK(a == b);

    svg::RenderExtras extras2;
    extras2.translated = orbit::translated_circles(sys, 3);
    extras2.limit_samples = orbit::limit_set_sample(sys, 3);
    CHECK(svg::render_svg(sys, extras2) == a);
}
