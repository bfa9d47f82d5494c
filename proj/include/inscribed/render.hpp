#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "inscribed/curves2d.hpp"
#include "inscribed/profile2d.hpp"

namespace inscribed::render {

struct EmptyScene : std::runtime_error {
    explicit EmptyScene(const std::string& what) : std::runtime_error(what) {}
};

struct StyledRect {
    double x = 0.0;  // first-quadrant vertex; the rect spans [-x,x] x [-y,y]
    double y = 0.0;
    std::string style = "default";
};

struct StyledPolygon {
    std::vector<std::pair<double, double>> points;
    std::string style = "default";
};

/// A symmetric curve as a closed polyline (all four quadrants) plus inscribed
/// rectangles and optional polygons. Rendering is byte-deterministic.
struct Scene {
    std::vector<std::pair<double, double>> curve_points;
    std::vector<StyledRect> rectangles;
    std::vector<StyledPolygon> polygons;
};

namespace detail {

/// Mirrors first-quadrant samples (ordered from (A, 0) to (0, B)) into a
/// closed four-quadrant loop.
inline std::vector<std::pair<double, double>> mirror_quadrants(
    const std::vector<std::pair<double, double>>& q1) {
    std::vector<std::pair<double, double>> loop;
    loop.reserve(4 * q1.size());
    for (const auto& p : q1) loop.push_back(p);
    for (auto it = q1.rbegin(); it != q1.rend(); ++it) loop.push_back({-it->first, it->second});
    for (const auto& p : q1) loop.push_back({-p.first, -p.second});
    for (auto it = q1.rbegin(); it != q1.rend(); ++it) loop.push_back({it->first, -it->second});
    return loop;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline const char* stroke_for(const std::string& style) {
    if (style == "max") return "#d62728";
    if (style == "min") return "#1f77b4";
    if (style == "square") return "#2ca02c";
    if (style == "area") return "#ff7f0e";
    return "#555555";
}

}  // namespace detail

/// Curve samples for |x/A|^a + |y/B|^b = 1 from the exact parameterization
/// x = A cos(t)^{2/a}, y = B sin(t)^{2/b}.
inline Scene make_curve_scene(const curves2d::MixedCurve2D& c, int per_quadrant = 800) {
    std::vector<std::pair<double, double>> q1;
    q1.reserve(per_quadrant);
    for (int i = 0; i < per_quadrant; ++i) {
        const double t = 0.5 * std::numbers::pi * i / (per_quadrant - 1);
        const double x = c.A * std::pow(std::cos(t), 2.0 / c.alpha);
        const double y = c.B * std::pow(std::sin(t), 2.0 / c.beta);
        q1.push_back({x, y});
    }
    Scene s;
    s.curve_points = detail::mirror_quadrants(q1);
    return s;
}

inline Scene make_profile_scene(const profile2d::ProfileCurve& p, int per_quadrant = 800) {
    std::vector<std::pair<double, double>> q1;
    q1.reserve(per_quadrant);
    for (int i = 0; i < per_quadrant; ++i) {
        const double x = p.A * (1.0 - static_cast<double>(i) / (per_quadrant - 1));
        q1.push_back({x, p.f(x)});
    }
    Scene s;
    s.curve_points = detail::mirror_quadrants(q1);
    return s;
}

/// SVG 1.1 on a fixed 800x600 canvas, y axis flipped, 6-decimal coordinates,
/// axes through the origin, the curve as one path, each rectangle as one
/// rect element.
inline std::string render_scene(const Scene& scene) {
    if (scene.curve_points.empty()) throw EmptyScene("render_scene: no curve samples");

    double W = 0.0, H = 0.0;
    for (const auto& p : scene.curve_points) {
        W = std::max(W, std::abs(p.first));
        H = std::max(H, std::abs(p.second));
    }
    for (const auto& r : scene.rectangles) {
        W = std::max(W, std::abs(r.x));
        H = std::max(H, std::abs(r.y));
    }
    for (const auto& poly : scene.polygons) {
        for (const auto& p : poly.points) {
            W = std::max(W, std::abs(p.first));
            H = std::max(H, std::abs(p.second));
        }
    }
    W *= 1.05;
    H *= 1.05;
    if (W <= 0.0) W = 1.0;
    if (H <= 0.0) H = 1.0;
    const double scale = std::min(800.0 / (2.0 * W), 600.0 / (2.0 * H));
    const auto px = [&](double x) { return 400.0 + scale * x; };
    const auto py = [&](double y) { return 300.0 - scale * y; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out +=
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
        "height=\"600\" viewBox=\"0 0 800 600\">\n";

    out += "<line x1=\"" + detail::fmt(px(-W)) + "\" y1=\"" + detail::fmt(py(0.0)) + "\" x2=\"" +
           detail::fmt(px(W)) + "\" y2=\"" + detail::fmt(py(0.0)) +
           "\" stroke=\"#aaaaaa\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + detail::fmt(px(0.0)) + "\" y1=\"" + detail::fmt(py(-H)) + "\" x2=\"" +
           detail::fmt(px(0.0)) + "\" y2=\"" + detail::fmt(py(H)) +
           "\" stroke=\"#aaaaaa\" stroke-width=\"1\"/>\n";

    out += "<path d=\"";
    for (std::size_t i = 0; i < scene.curve_points.size(); ++i) {
        const auto& p = scene.curve_points[i];
        out += (i == 0 ? "M " : "L ");
        out += detail::fmt(px(p.first)) + " " + detail::fmt(py(p.second)) + " ";
    }
    out += "Z\" fill=\"none\" stroke=\"#222222\" stroke-width=\"2\"/>\n";

    for (const auto& r : scene.rectangles) {
        if (!(r.x > 0.0) || !(r.y > 0.0)) continue;  // degenerate, nothing to draw
        out += "<rect x=\"" + detail::fmt(px(-r.x)) + "\" y=\"" + detail::fmt(py(r.y)) +
               "\" width=\"" + detail::fmt(2.0 * scale * r.x) + "\" height=\"" +
               detail::fmt(2.0 * scale * r.y) + "\" fill=\"none\" stroke=\"" +
               detail::stroke_for(r.style) + "\" stroke-width=\"1.5\"/>\n";
    }

    for (const auto& poly : scene.polygons) {
        out += "<polygon points=\"";
        for (const auto& p : poly.points) {
            out += detail::fmt(px(p.first)) + "," + detail::fmt(py(p.second)) + " ";
        }
        out += std::string("\" fill=\"none\" stroke=\"") + detail::stroke_for(poly.style) +
               "\" stroke-width=\"1.5\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

}  // namespace inscribed::render
