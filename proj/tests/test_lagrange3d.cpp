#include "inscribed/lagrange3d.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "inscribed/oracle.hpp"

namespace l3 = inscribed::lagrange3d;
namespace s3 = inscribed::surfaces3d;
namespace oracle = inscribed::oracle;

namespace {

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// residuals of the three stationarity lines with the reported multiplier
double stationarity_residual(const s3::Superellipsoid3D& s, const l3::InteriorOptimum& opt) {
    const auto& b = opt.box;
    const double r1 =
        b.y + b.z - s.alpha * opt.lambda * std::pow(b.x, s.alpha - 1.0) / std::pow(s.A, s.alpha);
    const double r2 =
        b.x + b.z - s.beta * opt.lambda * std::pow(b.y, s.beta - 1.0) / std::pow(s.B, s.beta);
    const double r3 =
        b.x + b.y - s.gamma * opt.lambda * std::pow(b.z, s.gamma - 1.0) / std::pow(s.C, s.gamma);
    return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3);
}

}  // namespace

TEST(SurfaceArea, MixedCubesExample) {
    const s3::Superellipsoid3D s(1.0, 2.0, 3.0, 3.0, 3.0, 3.0);
    const auto report = l3::max_surface_area_box(s);
    ASSERT_EQ(report.global, l3::GlobalKind::interior);
    ASSERT_EQ(report.interior_optima.size(), 1u);
    const auto& opt = report.interior_optima.front();
    EXPECT_LE(rel_err(opt.box.x, 0.584234104567139825), 1e-8);
    EXPECT_LE(rel_err(opt.box.y, 1.44688592759197637), 1e-8);
    EXPECT_LE(rel_err(opt.box.z, 2.25014315341519941), 1e-8);
    EXPECT_LE(rel_err(opt.surface_area, 21.6625237537791551), 1e-10);
    EXPECT_LE(stationarity_residual(s, opt), 1e-9);
    // equal exponents: alpha * lambda = 2 (xy + xz + yz) = S/2
    EXPECT_LE(rel_err(3.0 * opt.lambda, 0.5 * opt.surface_area), 1e-9);
    EXPECT_TRUE(l3::verify_uniqueness_equal_exponents(s, report));
    EXPECT_GT(opt.surface_area, report.boundary_supremum);
}

TEST(SurfaceArea, RoundSquareExample) {
    const s3::Superellipsoid3D s(1.0, 1.0, 1.0, 2.0, 2.0, 3.0);
    const auto report = l3::max_surface_area_box(s);
    ASSERT_EQ(report.global, l3::GlobalKind::interior);
    ASSERT_EQ(report.interior_optima.size(), 1u);
    const auto& opt = report.interior_optima.front();
    EXPECT_LE(rel_err(opt.box.x, 0.611045482784007624), 1e-7);
    EXPECT_LE(rel_err(opt.box.y, 0.611045482784007624), 1e-7);
    EXPECT_LE(rel_err(opt.box.z, 0.632675974460396387), 1e-7);
    EXPECT_LE(rel_err(opt.surface_area, 4.58625669820292693), 1e-9);
    EXPECT_LE(stationarity_residual(s, opt), 1e-9);
}

TEST(SurfaceArea, EllipsoidMatchesClosedForm) {
    const auto report = l3::max_surface_area_box(s3::Superellipsoid3D::ellipsoid(2.0, 1.0, 1.0));
    ASSERT_EQ(report.global, l3::GlobalKind::interior);
    EXPECT_LE(rel_err(report.interior_optima.front().surface_area, 1.0 + std::sqrt(33.0)),
              1e-10);
}

TEST(SurfaceArea, SphereGivesCube) {
    const s3::Superellipsoid3D s = s3::Superellipsoid3D::ellipsoid(1.0, 1.0, 1.0);
    const auto report = l3::max_surface_area_box(s);
    ASSERT_EQ(report.interior_optima.size(), 1u);
    EXPECT_TRUE(l3::verify_uniqueness_equal_exponents(s, report));
    const auto& b = report.interior_optima.front().box;
    EXPECT_LE(std::abs(b.x - 1.0 / std::sqrt(3.0)), 1e-9);
    EXPECT_LE(std::abs(b.y - b.x), 1e-9);
    EXPECT_LE(std::abs(b.z - b.x), 1e-9);
}

TEST(SurfaceArea, EqualExponentsUniqueOnRandomSurfaces) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> axis(0.3, 3.0);
    std::uniform_real_distribution<double> expo(1.1, 4.0);
    for (int i = 0; i < 50; ++i) {
        const double a = expo(rng);
        const s3::Superellipsoid3D s(axis(rng), axis(rng), axis(rng), a, a, a);
        const auto report = l3::max_surface_area_box(s);
        ASSERT_EQ(report.global, l3::GlobalKind::interior) << i;
        EXPECT_TRUE(l3::verify_uniqueness_equal_exponents(s, report)) << i;
        const auto& opt = report.interior_optima.front();
        EXPECT_GT(opt.surface_area, report.boundary_supremum);
        EXPECT_LE(stationarity_residual(s, opt), 1e-9);
        EXPECT_LE(rel_err(s.alpha * opt.lambda,
                          2.0 * (opt.box.x * opt.box.y + opt.box.x * opt.box.z +
                                 opt.box.y * opt.box.z)),
                  1e-9);
    }
}

TEST(SurfaceArea, BelowThresholdBoundaryWins) {
    const double alpha = s3::symmetric_area_threshold() - 0.1;
    const auto report = l3::max_surface_area_box(s3::Superellipsoid3D::symmetric(alpha));
    EXPECT_EQ(report.global, l3::GlobalKind::boundary);
    const double boundary = 4.0 * std::pow(2.0, -2.0 / alpha);
    EXPECT_LE(rel_err(report.boundary_supremum, boundary), 1e-10);
    for (const auto& opt : report.interior_optima) {
        EXPECT_LT(opt.surface_area, report.boundary_supremum);
    }
}

TEST(SurfaceArea, AcceptedStepsNeverDecrease) {
    std::map<int, std::vector<double>> traces;
    const s3::Superellipsoid3D s(1.0, 2.0, 3.0, 3.0, 3.0, 3.0);
    l3::max_surface_area_box(s, 16, [&](int seed, double v) { traces[seed].push_back(v); });
    ASSERT_FALSE(traces.empty());
    for (const auto& [seed, trace] : traces) {
        for (std::size_t k = 1; k < trace.size(); ++k) {
            EXPECT_GE(trace[k], trace[k - 1]) << "seed " << seed << " step " << k;
        }
    }
}

TEST(SurfaceArea, SeedCountHonored) {
    const s3::Superellipsoid3D s = s3::Superellipsoid3D::ellipsoid(1.0, 1.0, 1.0);
    EXPECT_THROW(l3::max_surface_area_box(s, 4), std::invalid_argument);
    const auto report = l3::max_surface_area_box(s, 24);
    EXPECT_GE(report.multistart_count, 24);
}

TEST(SurfaceArea, UniquenessCheckerRejectsWrongHypotheses) {
    const auto report = l3::max_surface_area_box(s3::Superellipsoid3D::ellipsoid(1, 1, 1));
    EXPECT_THROW(
        l3::verify_uniqueness_equal_exponents(s3::Superellipsoid3D(1, 1, 1, 2, 2, 3), report),
        std::invalid_argument);
    EXPECT_THROW(
        l3::verify_uniqueness_equal_exponents(s3::Superellipsoid3D(1, 1, 1, 0.5, 0.5, 0.5),
                                              report),
        std::invalid_argument);
}

TEST(SurfaceArea, AgreesWithGridOracle) {
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> axis(0.5, 3.0);
    std::uniform_real_distribution<double> expo(1.2, 4.0);
    for (int i = 0; i < 10; ++i) {
        const s3::Superellipsoid3D s(axis(rng), axis(rng), axis(rng), expo(rng), expo(rng),
                                     expo(rng));
        const auto report = l3::max_surface_area_box(s);
        ASSERT_EQ(report.global, l3::GlobalKind::interior);
        const auto best =
            oracle::grid_best_box(s, oracle::BoxObjective::surface_area, {400, 2});
        EXPECT_LE(rel_err(best.value, report.interior_optima.front().surface_area), 1e-4) << i;
    }
}
