#include "schottky/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace schottky::svg {

namespace {

constexpr int kSize = 900;
constexpr double kPad = 0.06;

const char* depth_color(int depth) {
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                    "#d62728", "#9467bd", "#8c564b"};
    return palette[(depth - 1) % 6];
}

struct Box {
    double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
    bool empty = true;

    void add(Complex p, double pad = 0.0) {
        if (empty) {
            x0 = p.real() - pad;
            x1 = p.real() + pad;
            y0 = p.imag() - pad;
            y1 = p.imag() + pad;
            empty = false;
        } else {
            x0 = std::min(x0, p.real() - pad);
            x1 = std::max(x1, p.real() + pad);
            y0 = std::min(y0, p.imag() - pad);
            y1 = std::max(y1, p.imag() + pad);
        }
    }

    void add(const OrientedCircle& c) { add(c.center, c.radius); }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer), pattern, a, b, c);
    return buffer;
}

} // namespace

std::string render_svg(const CircleSystem& sys, const RenderExtras& extras) {
    Box box;
    for (const CirclePair& pair : sys.pairs) {
        box.add(pair.c);
        box.add(pair.c_prime);
    }
    for (const auto& tc : extras.translated)
        box.add(tc.circle);
    for (const SpherePoint& p : extras.limit_samples)
        if (p.is_finite())
            box.add(p.value());
    for (const SpherePoint& p : extras.accumulation)
        if (p.is_finite())
            box.add(p.value());

    const double span = std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-9});
    const double scale = kSize * (1.0 - 2.0 * kPad) / span;
    const double cx = 0.5 * (box.x0 + box.x1);
    const double cy = 0.5 * (box.y0 + box.y1);
    const auto sx = [&](double x) { return kSize / 2.0 + scale * (x - cx); };
    const auto sy = [&](double y) { return kSize / 2.0 - scale * (y - cy); };

    std::string out;
    out += fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
               "viewBox=\"0 0 900 900\">\n",
               static_cast<double>(kSize), static_cast<double>(kSize));
    out += fmt("<!-- viewport: world center (%.9g, %.9g), scale %.9g px/unit, y up -->\n", cx, cy,
               scale);
    out += "<rect width=\"900\" height=\"900\" fill=\"white\"/>\n";

    // Translated circles first so the base configuration stays visible.
    for (const auto& tc : extras.translated) {
        out += fmt("<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\" fill=\"none\" ",
                   sx(tc.circle.center.real()), sy(tc.circle.center.imag()),
                   scale * tc.circle.radius);
        out += "stroke=\"";
        out += depth_color(tc.depth);
        out += "\" stroke-width=\"0.8\"/>\n";
    }

    for (const CirclePair& pair : sys.pairs) {
        const OrientedCircle* circles[2] = {&pair.c, &pair.c_prime};
        for (int side = 0; side < 2; ++side) {
            const OrientedCircle& c = *circles[side];
            out += fmt("<circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\" fill=\"none\" "
                       "stroke=\"#111111\" stroke-width=\"1.6\"/>\n",
                       sx(c.center.real()), sy(c.center.imag()), scale * c.radius);
            out += fmt("<text x=\"%.6f\" y=\"%.6f\" font-size=\"14\" "
                       "font-family=\"sans-serif\" text-anchor=\"middle\">",
                       sx(c.center.real()), sy(c.center.imag() + c.radius) - 4.0);
            out += "C" + std::to_string(pair.label + 1) + (side == 1 ? "'" : "");
            out += "</text>\n";
        }
    }

    for (const SpherePoint& p : extras.limit_samples) {
        if (!p.is_finite())
            continue;
        out += fmt("<circle cx=\"%.6f\" cy=\"%.6f\" r=\"1.6\" fill=\"#d62728\" "
                   "stroke=\"none\"/>\n",
                   sx(p.value().real()), sy(p.value().imag()));
    }

    for (const SpherePoint& p : extras.accumulation) {
        if (!p.is_finite())
            continue;
        const double x = sx(p.value().real());
        const double y = sy(p.value().imag());
        char buffer[200];
        std::snprintf(buffer, sizeof(buffer),
                      "<path d=\"M %.6f %.6f L %.6f %.6f M %.6f %.6f L %.6f %.6f\" "
                      "stroke=\"#2ca02c\" stroke-width=\"1.4\"/>\n",
                      x - 5.0, y - 5.0, x + 5.0, y + 5.0, x - 5.0, y + 5.0, x + 5.0, y - 5.0);
        out += buffer;
    }

    out += "</svg>\n";
    return out;
}

} // namespace schottky::svg
