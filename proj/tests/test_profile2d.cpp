#include "inscribed/profile2d.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "inscribed/oracle.hpp"
#include "inscribed/profile_json.hpp"

namespace c2 = inscribed::curves2d;
namespace p2 = inscribed::profile2d;
namespace oracle = inscribed::oracle;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

p2::ProfileCurve linear_profile() {
    p2::ProfileCurve p;
    p.A = 1.0;
    p.B = 1.0;
    p.kind = p2::ProfileKind::analytic_formula;
    p.f = [](double x) { return 1.0 - x; };
    p.df = [](double) { return -1.0; };
    p.d2f = [](double) { return 0.0; };
    return p;
}

}  // namespace

TEST(Example2, EndpointAndBreakpointValues) {
    const auto p = p2::example2_profile();
    EXPECT_EQ(p.A, 4.0);
    EXPECT_EQ(p.B, 4.0);
    EXPECT_LE(std::abs(p.f(0.0) - 4.0), 1e-12);
    EXPECT_LE(std::abs(p.f(4.0)), 1e-12);
    EXPECT_LE(std::abs(p.f(9.0 / 25.0) - 0.64), 1e-12);
    EXPECT_LE(std::abs(p.f(16.0 / 25.0) - 0.36), 1e-12);
}

TEST(Example2, JunctionsAreC1) {
    const auto p = p2::example2_profile();
    const auto& pieces = p.pieces->pieces;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        const double xb = pieces[i].hi;
        EXPECT_LE(std::abs(pieces[i].value(xb) - pieces[i + 1].value(xb)), 1e-9) << xb;
        EXPECT_LE(std::abs(pieces[i].d1(xb) - pieces[i + 1].d1(xb)), 1e-9) << xb;
    }
}

TEST(Example2, StrictlyDecreasingWithNegativeSlope) {
    const auto p = p2::example2_profile();
    EXPECT_NO_THROW(p2::validate_profile(p));
    for (int i = 1; i < 4000; ++i) {
        const double x = 4.0 * i / 4000.0;
        if (x >= 4.0) break;
        EXPECT_LT(p.df(x), 0.0) << x;
    }
}

// The middle piece is the unique cubic joining the outer branches with C^1
// contact, and that cubic inflects at x = 226/375; convexity therefore holds
// on (0, 226/375) and again past the junction, but not on (226/375, 16/25).
TEST(Example2, ConvexityAwayFromCubicInflection) {
    const auto p = p2::example2_profile();
    const double inflection = 226.0 / 375.0;
    for (int i = 1; i < 2000; ++i) {
        const double x = inflection * i / 2000.0;
        if (x <= 1e-6) continue;
        EXPECT_GT(p.d2f(x), 0.0) << x;
    }
    for (int i = 1; i < 2000; ++i) {
        const double x = 16.0 / 25.0 + (4.0 - 16.0 / 25.0) * i / 2000.0;
        if (x >= 4.0 - 1e-6) break;
        EXPECT_GT(p.d2f(x), 0.0) << x;
    }
    EXPECT_LT(p.d2f(0.62), 0.0);  // inside the inflection window
}

TEST(Example2, ExactlyTwoMaxAreaRectangles) {
    const auto report = p2::max_area_rects(p2::example2_profile());
    ASSERT_EQ(report.critical_points.size(), 2u);
    EXPECT_EQ(report.existence_note, p2::ExistenceNote::multiple_max);
    const auto& lo = report.critical_points[0];
    const auto& hi = report.critical_points[1];
    EXPECT_LE(std::abs(lo.rect.x - 0.25), 1e-6);
    EXPECT_LE(std::abs(lo.rect.y - 1.0), 1e-6);
    EXPECT_LE(std::abs(hi.rect.x - 1.0), 1e-6);
    EXPECT_LE(std::abs(hi.rect.y - 0.25), 1e-6);
    EXPECT_LE(rel_err(lo.objective_value, hi.objective_value), 1e-9);
    EXPECT_LE(rel_err(lo.objective_value, 1.0), 1e-9);
}

TEST(MaxArea, EllipseProfileMatchesClosedForm) {
    const auto p = p2::profile_from_curve(c2::MixedCurve2D::ellipse(4.0, 3.0));
    const auto report = p2::max_area_rects(p);
    ASSERT_EQ(report.critical_points.size(), 1u);
    EXPECT_EQ(report.existence_note, p2::ExistenceNote::unique_max_no_min);
    EXPECT_LE(std::abs(report.global_max->rect.x - 4.0 / std::sqrt(2.0)), 1e-6);
    EXPECT_LE(rel_err(report.global_max->objective_value, 24.0), 1e-9);
}

TEST(MaxArea, LinearProfile) {
    const auto report = p2::max_area_rects(linear_profile());
    ASSERT_EQ(report.critical_points.size(), 1u);
    EXPECT_LE(std::abs(report.global_max->rect.x - 0.5), 1e-6);
}

TEST(MaxArea, RandomCurveProfilesAgreeWithClosedForm) {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> axis(0.5, 4.0);
    std::uniform_real_distribution<double> expo(0.5, 4.0);
    for (int i = 0; i < 10; ++i) {
        const c2::MixedCurve2D c(axis(rng), axis(rng), expo(rng), expo(rng));
        const auto closed = c2::max_area_rect(c).first;
        const auto report = p2::max_area_rects(p2::profile_from_curve(c));
        ASSERT_TRUE(report.global_max.has_value());
        EXPECT_LE(std::abs(report.global_max->rect.x - closed.x), 1e-6);
    }
}

TEST(Uniqueness, CertificateCases) {
    const auto ellipse = p2::profile_from_curve(c2::MixedCurve2D::ellipse(4.0, 3.0));
    EXPECT_EQ(p2::uniqueness_certificate(ellipse), p2::Certificate::certified_unique);

    EXPECT_EQ(p2::uniqueness_certificate(p2::example2_profile()),
              p2::Certificate::not_certified);

    EXPECT_EQ(p2::uniqueness_certificate(linear_profile()), p2::Certificate::certified_unique);

    p2::ProfileCurve bare;
    bare.A = 1.0;
    bare.B = 1.0;
    bare.f = [](double x) { return 1.0 - x; };
    EXPECT_THROW(p2::uniqueness_certificate(bare), p2::MissingDerivatives);
}

TEST(Perimeter, EllipseProfileUniqueMax) {
    const auto p = p2::profile_from_curve(c2::MixedCurve2D::ellipse(4.0, 3.0));
    const auto result = p2::perimeter_rects(p);
    EXPECT_EQ(result.curvature_case, p2::PerimeterCase::concave_unique_max);
    EXPECT_EQ(result.report.existence_note, p2::ExistenceNote::unique_max_no_min);
    ASSERT_TRUE(result.report.global_max.has_value());
    EXPECT_LE(std::abs(result.report.global_max->rect.x - 3.2), 1e-6);
    EXPECT_LE(rel_err(result.report.global_max->objective_value, 20.0), 1e-9);
}

TEST(Perimeter, CubeRootProfileUniqueMin) {
    const auto p =
        p2::profile_from_curve(c2::MixedCurve2D::superellipse(1.0, 8.0, 1.0 / 3.0));
    const auto result = p2::perimeter_rects(p);
    EXPECT_EQ(result.curvature_case, p2::PerimeterCase::convex_unique_min);
    EXPECT_EQ(result.report.existence_note, p2::ExistenceNote::unique_min_no_max);
    ASSERT_TRUE(result.report.global_min.has_value());
    EXPECT_LE(std::abs(result.report.global_min->rect.x - 0.40324948994391248), 1e-6);
    EXPECT_LE(rel_err(result.report.global_min->objective_value, 2.18327885747436395), 1e-8);
}

TEST(Perimeter, LinearProfileAllEqual) {
    const auto result = p2::perimeter_rects(linear_profile());
    EXPECT_EQ(result.report.existence_note, p2::ExistenceNote::degenerate_all_equal);
}

TEST(BestRatio, FixedPointCases) {
    const auto circle = p2::profile_from_curve(c2::MixedCurve2D::ellipse(2.0, 2.0));
    EXPECT_LE(std::abs(p2::best_ratio_rect(circle).x - 2.0 / std::sqrt(2.0)), 1e-12);

    const auto ellipse = p2::profile_from_curve(c2::MixedCurve2D::ellipse(4.0, 3.0));
    EXPECT_LE(std::abs(p2::best_ratio_rect(ellipse).x - 2.4), 1e-12);

    const auto p = p2::example2_profile();
    const auto sq = p2::best_ratio_rect(p);
    EXPECT_GT(sq.x, 9.0 / 25.0);
    EXPECT_LT(sq.x, 16.0 / 25.0);
    EXPECT_LE(std::abs(p.f(sq.x) - sq.x), 1e-11);
    const auto m = c2::RectMetrics::of({sq.x, sq.x});
    EXPECT_LE(std::abs(m.ratio - 0.0625), 1e-15);
    // no inscribed rectangle does better
    const auto best = oracle::grid_best_rect(p, oracle::RectObjective::ratio);
    EXPECT_LE(best.value, 0.0625 + 1e-9);
}

TEST(BestRatio, DominatesRandomRectangles) {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> axis(0.3, 4.0);
    std::uniform_real_distribution<double> expo(0.4, 4.0);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const c2::MixedCurve2D c(axis(rng), axis(rng), expo(rng), expo(rng));
        const auto p = p2::profile_from_curve(c);
        const auto sq = p2::best_ratio_rect(p);
        const double best = c2::RectMetrics::of({sq.x, sq.x}).ratio;
        for (int i = 0; i < 50000; ++i) {
            const double x = p.A * std::clamp(uni(rng), 1e-9, 1.0 - 1e-9);
            const double y = p.f(x);
            if (!(y > 0.0)) continue;
            const double r = c2::RectMetrics::of({x, y}).ratio;
            ASSERT_LE(r, best + 1e-12);
        }
    }
}

TEST(Construct, SinglePoint) {
    const auto spec = p2::make_construction_spec({{1.0, 1.0}});
    EXPECT_EQ(spec.m, 1.0);
    EXPECT_EQ(spec.M, 1.0);
    EXPECT_TRUE(spec.gaps.empty());
    EXPECT_LE(std::abs(spec.eps_tail - 0.25), 1e-15);
    EXPECT_LE(std::abs(spec.A_out - 3.0), 1e-12);

    const auto p = p2::construct_profile(spec);
    EXPECT_EQ(p.kind, p2::ProfileKind::constructed);
    EXPECT_LE(std::abs(p.f(3.0)), 1e-12);
    EXPECT_LE(std::abs(p.f(1.0) - 1.0), 1e-15);
    EXPECT_LE(std::abs(p.B - 3.0), 1e-15);

    const auto report = p2::max_area_rects(p, 1e-8, 100000, 1e-15);
    ASSERT_EQ(report.critical_points.size(), 1u);
    EXPECT_LE(std::abs(report.critical_points[0].rect.x - 1.0), 2e-5);
    EXPECT_LE(std::abs(report.critical_points[0].objective_value - 4.0), 1e-11);
}

TEST(Construct, TwoPoints) {
    const auto spec = p2::make_construction_spec({{1.0, 1.0}, {2.0, 2.0}});
    ASSERT_EQ(spec.gaps.size(), 1u);
    EXPECT_LE(std::abs(spec.eps_gaps[0] - 0.125), 1e-15);  // min(1/4, 16) / 2
    EXPECT_LE(std::abs(spec.A_out - 6.0), 1e-12);

    const auto p = p2::construct_profile(spec);
    const auto report = p2::max_area_rects(p, 1e-8, 100000, 1e-15);
    ASSERT_EQ(report.critical_points.size(), 2u);
    EXPECT_LE(std::abs(report.critical_points[0].rect.x - 1.0), 2e-5);
    EXPECT_LE(std::abs(report.critical_points[1].rect.x - 2.0), 2e-5);
    // strictly below the prescribed level between the two points
    for (double x : {1.2, 1.5, 1.8}) {
        EXPECT_LT(4.0 * x * p.f(x), 4.0 - 1e-4);
    }
}

TEST(Construct, Interval) {
    const auto p = p2::construct_profile({{1.0, 2.0}});
    const auto report = p2::max_area_rects(p, 1e-8, 100000, 1e-15);
    ASSERT_GE(report.critical_points.size(), 100u);
    for (const auto& cp : report.critical_points) {
        EXPECT_GE(cp.rect.x, 1.0 - 2e-5);
        EXPECT_LE(cp.rect.x, 2.0 + 2e-5);
    }
    EXPECT_LE(std::abs(report.critical_points.front().rect.x - 1.0), 1e-4);
    EXPECT_LE(std::abs(report.critical_points.back().rect.x - 2.0), 1e-4);
}

TEST(Construct, ProductStaysBelowOne) {
    const auto p = p2::construct_profile({{1.0, 1.0}, {1.5, 2.0}});
    double worst = 0.0;
    for (int i = 1; i < 200000; ++i) {
        const double x = p.A * i / 200000.0;
        const double v = x * p.f(x);
        worst = std::max(worst, v);
        // equality only within a hair of E
        if (v > 1.0 - 1e-12) {
            const bool near_E = std::abs(x - 1.0) < 1e-4 || (x > 1.5 - 1e-4 && x < 2.0 + 1e-4);
            EXPECT_TRUE(near_E) << x;
        }
    }
    EXPECT_LE(worst, 1.0 + 1e-12);
}

TEST(Construct, ConvexAndDecreasing) {
    for (const auto& E : {std::vector<p2::Interval>{{1.0, 1.0}},
                          std::vector<p2::Interval>{{1.0, 1.0}, {2.0, 2.0}},
                          std::vector<p2::Interval>{{0.5, 0.8}, {1.5, 1.5}, {2.0, 2.5}}}) {
        const auto p = p2::construct_profile(E);
        EXPECT_NO_THROW(p2::validate_profile(p));
        for (int i = 1; i < 5000; ++i) {
            const double x = p.A * i / 5000.0;
            EXPECT_GT(p.d2f(x), 0.0) << x;
            EXPECT_LT(p.df(x), 0.0) << x;
        }
    }
}

TEST(Construct, FailsForOversizeTailEpsilon) {
    auto spec = p2::make_construction_spec({{1.0, 1.0}});
    spec.eps_tail = 1.0;  // above the admissible bound, tail never reaches zero
    const double M3 = spec.M * spec.M * spec.M;
    spec.A_out = (2.0 * spec.eps_tail * M3 + 1.0) / (2.0 * spec.eps_tail * spec.M * spec.M);
    EXPECT_THROW(p2::construct_profile(spec), p2::ConstructionFailed);
}

TEST(Construct, RejectsBadInput) {
    EXPECT_THROW(p2::make_construction_spec({}), std::invalid_argument);
    EXPECT_THROW(p2::make_construction_spec({{0.0, 1.0}}), std::invalid_argument);
    EXPECT_THROW(p2::make_construction_spec({{-2.0, -1.0}}), std::invalid_argument);
}

TEST(Json, RoundTripExample2) {
    const auto p = p2::example2_profile();
    const auto j = p2::profile_to_json(p);
    EXPECT_EQ(j.at("type"), "piecewise_profile");
    const auto q = p2::profile_from_json(j);
    EXPECT_EQ(q.kind, p2::ProfileKind::piecewise_polynomial);
    for (int i = 0; i <= 100; ++i) {
        const double x = 4.0 * i / 100.0;
        EXPECT_LE(std::abs(p.f(x) - q.f(x)), 1e-15);
    }
}

TEST(Json, RoundTripConstructed) {
    const auto p = p2::construct_profile({{1.0, 1.0}, {2.0, 2.0}});
    const auto q = p2::profile_from_json(p2::profile_to_json(p));
    EXPECT_EQ(q.kind, p2::ProfileKind::constructed);
    EXPECT_EQ(q.A, p.A);
    for (int i = 0; i <= 100; ++i) {
        const double x = p.A * i / 100.0;
        EXPECT_LE(std::abs(p.f(x) - q.f(x)), 1e-15);
    }
}

TEST(Json, AnalyticProfilesAreNotSerializable) {
    const auto p = p2::profile_from_curve(c2::MixedCurve2D::ellipse(2.0, 1.0));
    EXPECT_THROW(p2::profile_to_json(p), std::invalid_argument);
}

TEST(Validation, CatchesBrokenProfiles) {
    p2::ProfileCurve p;
    p.A = 1.0;
    p.B = 2.0;
    p.f = [](double x) { return 1.0 - x; };  // f(0) != B
    EXPECT_THROW(p2::validate_profile(p), std::invalid_argument);

    p2::ProfileCurve q;
    q.A = 1.0;
    q.B = 1.0;
    q.f = [](double x) { return 1.0 + 0.5 * x - 1.5 * x * x; };  // rises before falling
    EXPECT_THROW(p2::validate_profile(q), std::invalid_argument);
}
