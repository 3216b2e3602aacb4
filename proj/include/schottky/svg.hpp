#pragma once

#include <string>
#include <vector>

#include "schottky/config.hpp"
#include "schottky/orbit.hpp"

namespace schottky::svg {

struct RenderExtras {
    std::vector<orbit::TranslatedCircle> translated; // colored by depth
    std::vector<SpherePoint> limit_samples;          // dots
    std::vector<SpherePoint> accumulation;           // crosses
};

/// Deterministic SVG: base circles stroked and labeled C_i / C_i', translated
/// circles colored by depth, limit samples as dots, accumulation points as
/// crosses. The world-to-viewport mapping is stated in a header comment.
/// Byte-identical output for identical input.
std::string render_svg(const CircleSystem& sys, const RenderExtras& extras = {});

} // namespace schottky::svg
