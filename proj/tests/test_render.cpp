#include "inscribed/render.hpp"

#include <gtest/gtest.h>

#include <string>

namespace c2 = inscribed::curves2d;
namespace p2 = inscribed::profile2d;
namespace render = inscribed::render;

namespace {

int count_occurrences(const std::string& hay, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

}  // namespace

TEST(Scene, CurveSamplesLieOnCurve) {
    const auto c = c2::MixedCurve2D(3.0, 4.0, 3.0, 0.5);
    const auto scene = render::make_curve_scene(c, 200);
    EXPECT_EQ(scene.curve_points.size(), 800u);
    for (const auto& p : scene.curve_points) {
        EXPECT_LE(std::abs(c.residual(std::abs(p.first), std::abs(p.second))), 1e-9);
    }
}

TEST(Scene, ProfileSamplesSpanQuadrants) {
    const auto scene = render::make_profile_scene(p2::example2_profile(), 100);
    EXPECT_EQ(scene.curve_points.size(), 400u);
    EXPECT_NEAR(scene.curve_points.front().first, 4.0, 1e-12);
    EXPECT_NEAR(scene.curve_points.front().second, 0.0, 1e-12);
}

TEST(Render, EllipseWithRectangleAndRhombus) {
    const auto ellipse = c2::MixedCurve2D::ellipse(4.0, 3.0);
    auto scene = render::make_curve_scene(ellipse);
    const auto best = c2::optimal_perimeter_rects(ellipse);
    scene.rectangles.push_back({best.global_max->rect.x, best.global_max->rect.y, "max"});
    scene.polygons.push_back(
        {{{4.0, 0.0}, {0.0, 3.0}, {-4.0, 0.0}, {0.0, -3.0}}, "default"});

    const auto svg = render::render_scene(scene);
    EXPECT_EQ(count_occurrences(svg, "<path"), 1);
    EXPECT_EQ(count_occurrences(svg, "<rect"), 1);
    EXPECT_EQ(count_occurrences(svg, "<polygon"), 1);
    EXPECT_EQ(count_occurrences(svg, "<line"), 2);  // the two axes
    EXPECT_NE(svg.find("svg"), std::string::npos);
}

TEST(Render, TwoRectanglesForMixedCurve) {
    const auto c = c2::MixedCurve2D(3.0, 4.0, 3.0, 0.5);
    auto scene = render::make_curve_scene(c);
    const auto rep = c2::optimal_perimeter_rects(c);
    scene.rectangles.push_back({rep.global_max->rect.x, rep.global_max->rect.y, "max"});
    scene.rectangles.push_back({rep.global_min->rect.x, rep.global_min->rect.y, "min"});
    const auto svg = render::render_scene(scene);
    EXPECT_EQ(count_occurrences(svg, "<rect"), 2);
}

TEST(Render, NoRectanglesMeansCurveOnly) {
    const auto scene = render::make_curve_scene(c2::MixedCurve2D::ellipse(2.0, 1.0));
    const auto svg = render::render_scene(scene);
    EXPECT_EQ(count_occurrences(svg, "<rect"), 0);
    EXPECT_EQ(count_occurrences(svg, "<path"), 1);
}

TEST(Render, DegeneratePointRectangleDrawsNothing) {
    auto scene = render::make_curve_scene(c2::MixedCurve2D::ellipse(2.0, 1.0));
    scene.rectangles.push_back({0.0, 0.0, "max"});
    const auto svg = render::render_scene(scene);
    EXPECT_EQ(count_occurrences(svg, "<rect"), 0);
    EXPECT_EQ(count_occurrences(svg, "<path"), 1);
}

TEST(Render, ByteDeterministic) {
    const auto c = c2::MixedCurve2D::superellipse(1.0, 2.0, 3.0);
    auto scene = render::make_curve_scene(c);
    const auto rep = c2::optimal_perimeter_rects(c);
    scene.rectangles.push_back({rep.global_max->rect.x, rep.global_max->rect.y, "max"});
    EXPECT_EQ(render::render_scene(scene), render::render_scene(scene));
}

TEST(Render, EverythingInsideViewport) {
    const auto c = c2::MixedCurve2D::ellipse(4.0, 3.0);
    auto scene = render::make_curve_scene(c);
    scene.rectangles.push_back({3.9, 2.9, "max"});
    const auto svg = render::render_scene(scene);
    // with the symmetric viewport and 5% margin no emitted coordinate may be
    // negative or beyond the canvas
    EXPECT_EQ(svg.find("\"-"), std::string::npos);
    EXPECT_EQ(count_occurrences(svg, " -"), 0);
}

TEST(Render, EmptySceneThrows) {
    render::Scene scene;
    EXPECT_THROW(render::render_scene(scene), render::EmptyScene);
}
