#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "inscribed/curves2d.hpp"
#include "inscribed/profile2d.hpp"
#include "inscribed/surfaces3d.hpp"

namespace inscribed::oracle {

struct GridSpec {
    int resolution = 2000;
    int refinement_rounds = 3;
};

enum class RectObjective { area, perimeter, ratio, minus_perimeter };
enum class BoxObjective { volume, surface_area, edge_sum, v_over_s32, v_over_l3, s_over_l2 };

struct RectBest {
    curves2d::Rectangle rect;
    double value = -std::numeric_limits<double>::infinity();
};

struct BoxBest {
    surfaces3d::Box box;
    double value = -std::numeric_limits<double>::infinity();
};

namespace detail {

inline double rect_objective(RectObjective obj, double x, double y) {
    switch (obj) {
        case RectObjective::area: return 4.0 * x * y;
        case RectObjective::perimeter: return 4.0 * (x + y);
        case RectObjective::minus_perimeter: return -4.0 * (x + y);
        case RectObjective::ratio:
        default: {
            const double p = x + y;
            return p > 0.0 ? x * y / (4.0 * p * p) : 0.0;
        }
    }
}

template <class YFromX>
RectBest grid_best_rect_impl(double A, YFromX&& y_from_x, RectObjective obj,
                             const GridSpec& grid) {
    RectBest best;
    double wlo = 0.0, whi = A;
    for (int round = 0; round <= grid.refinement_rounds; ++round) {
        const double span = whi - wlo;
        for (int i = 0; i < grid.resolution; ++i) {
            const double x = wlo + span * (i + 0.5) / grid.resolution;
            if (x <= 0.0 || x >= A) continue;
            const double y = y_from_x(x);
            if (!(y > 0.0)) continue;
            const double v = rect_objective(obj, x, y);
            if (v > best.value) {
                best.value = v;
                best.rect = {x, y};
            }
        }
        const double next = span / 10.0;
        wlo = std::max(0.0, best.rect.x - 0.5 * next);
        whi = std::min(A, best.rect.x + 0.5 * next);
    }
    return best;
}

}  // namespace detail

/// Exhaustive scan of first-quadrant vertices (y taken from the curve),
/// refined around the incumbent by shrinking the window tenfold per round.
inline RectBest grid_best_rect(const curves2d::MixedCurve2D& c, RectObjective obj,
                               const GridSpec& grid = {}) {
    return detail::grid_best_rect_impl(
        c.A, [&](double x) { return c.y_from_x(x); }, obj, grid);
}

inline RectBest grid_best_rect(const profile2d::ProfileCurve& p, RectObjective obj,
                               const GridSpec& grid = {}) {
    return detail::grid_best_rect_impl(
        p.A, [&](double x) { return p.f(x); }, obj, grid);
}

inline double box_objective(BoxObjective obj, const surfaces3d::Box& b) {
    const auto m = surfaces3d::BoxMetrics::of(b);
    switch (obj) {
        case BoxObjective::volume: return m.volume;
        case BoxObjective::surface_area: return m.surface_area;
        case BoxObjective::edge_sum: return m.edge_sum;
        case BoxObjective::v_over_s32: return surfaces3d::ratio_v_s32(m);
        case BoxObjective::v_over_l3: return surfaces3d::ratio_v_l3(m);
        case BoxObjective::s_over_l2:
        default: return surfaces3d::ratio_s_l2(m);
    }
}

/// 2D scan over (x, y) with z recovered from the surface, two-stage
/// refinement by default.
inline BoxBest grid_best_box(const surfaces3d::Superellipsoid3D& s, BoxObjective obj,
                             const GridSpec& grid = {700, 2}) {
    BoxBest best;
    double xlo = 0.0, xhi = s.A, ylo = 0.0, yhi = s.B;
    for (int round = 0; round <= grid.refinement_rounds; ++round) {
        const double sx = xhi - xlo, sy = yhi - ylo;
        for (int i = 0; i < grid.resolution; ++i) {
            const double x = xlo + sx * (i + 0.5) / grid.resolution;
            if (x <= 0.0 || x >= s.A) continue;
            for (int j = 0; j < grid.resolution; ++j) {
                const double y = ylo + sy * (j + 0.5) / grid.resolution;
                if (y <= 0.0 || y >= s.B) continue;
                const double z = s.z_from_xy(x, y);
                if (!(z > 0.0)) continue;
                const double v = box_objective(obj, {x, y, z});
                if (v > best.value) {
                    best.value = v;
                    best.box = {x, y, z};
                }
            }
        }
        const double nx = sx / 10.0, ny = sy / 10.0;
        xlo = std::max(0.0, best.box.x - 0.5 * nx);
        xhi = std::min(s.A, best.box.x + 0.5 * nx);
        ylo = std::max(0.0, best.box.y - 0.5 * ny);
        yhi = std::min(s.B, best.box.y + 0.5 * ny);
    }
    return best;
}

/// Quadrilateral inscribed in the ellipse (a cos t, b sin t), stored as four
/// strictly increasing parameter angles.
struct Quadrilateral {
    std::array<double, 4> angles{};
    double perimeter = 0.0;
    double area = 0.0;
    double ratio = 0.0;
};

struct ExplorerReport {
    Quadrilateral best_perimeter_quad;
    Quadrilateral best_ratio_quad;
    double best_perimeter = 0.0;
    double best_ratio = 0.0;
    double perimeter_bound = 0.0;  // 4 sqrt(a^2 + b^2)
    double ratio_bound = 0.0625;   // 1/16
    bool perimeter_violation = false;
    bool ratio_violation = false;
    double rhombus_perimeter = 0.0;
    long samples_evaluated = 0;
};

namespace detail {

struct QuadEval {
    double a, b;

    void metrics(const std::array<double, 4>& t, double& perimeter, double& area) const {
        std::array<double, 4> px, py;
        for (int i = 0; i < 4; ++i) {
            px[i] = a * std::cos(t[i]);
            py[i] = b * std::sin(t[i]);
        }
        perimeter = 0.0;
        area = 0.0;
        for (int i = 0; i < 4; ++i) {
            const int j = (i + 1) & 3;
            perimeter += std::hypot(px[j] - px[i], py[j] - py[i]);
            area += px[i] * py[j] - px[j] * py[i];
        }
        area = 0.5 * std::abs(area);
    }

    Quadrilateral make(const std::array<double, 4>& t) const {
        Quadrilateral q;
        q.angles = t;
        metrics(t, q.perimeter, q.area);
        q.ratio = q.perimeter > 0.0 ? q.area / (q.perimeter * q.perimeter) : 0.0;
        return q;
    }
};

template <class Score>
Quadrilateral polish(const QuadEval& ev, Quadrilateral q, int passes, Score&& score) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    double step = 0.3;
    for (int pass = 0; pass < passes; ++pass) {
        for (int i = 0; i < 4; ++i) {
            for (double dir : {step, -step}) {
                auto t = q.angles;
                // wrap into [0, 2pi) so the sorted angles stay in cyclic
                // order and the polygon stays simple
                t[i] = std::fmod(t[i] + dir + kTwoPi, kTwoPi);
                std::sort(t.begin(), t.end());
                bool ok = true;
                for (int k = 0; k < 3; ++k) {
                    if (t[k + 1] - t[k] < 1e-7) ok = false;
                }
                if (!ok) continue;
                const Quadrilateral cand = ev.make(t);
                if (score(cand) > score(q)) q = cand;
            }
        }
        step *= 0.55;
    }
    return q;
}

}  // namespace detail

/// Random quadrilaterals with coordinate-ascent polishing of each sample,
/// once toward the perimeter and once toward the ratio. The rhombus through
/// the axis endpoints and the best-perimeter rectangle are seeded as
/// witnesses. Deterministic for a fixed rng_seed.
inline ExplorerReport explore_quadrilaterals(double a, double b, int samples, int local_steps,
                                             std::uint64_t rng_seed) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("explore_quadrilaterals: semi-axes must be positive");
    }
    const detail::QuadEval ev{a, b};
    const auto perim_score = [](const Quadrilateral& q) { return q.perimeter; };
    const auto ratio_score = [](const Quadrilateral& q) { return q.ratio; };

    ExplorerReport report;
    report.perimeter_bound = 4.0 * std::hypot(a, b);

    constexpr double kPi = std::numbers::pi;
    const Quadrilateral rhombus = ev.make({0.0, 0.5 * kPi, kPi, 1.5 * kPi});
    report.rhombus_perimeter = rhombus.perimeter;

    // seeded witnesses: rhombus and the stationary rectangle of the perimeter
    const double tr = std::atan2(b, a);  // vertex (a^2, b^2)/sqrt(a^2+b^2)
    const Quadrilateral rect = ev.make({tr, kPi - tr, kPi + tr, 2.0 * kPi - tr});

    auto consider = [&](const Quadrilateral& q) {
        if (q.perimeter > report.best_perimeter) {
            report.best_perimeter = q.perimeter;
            report.best_perimeter_quad = q;
        }
        if (q.ratio > report.best_ratio) {
            report.best_ratio = q.ratio;
            report.best_ratio_quad = q;
        }
    };
    consider(rhombus);
    consider(rect);
    consider(detail::polish(ev, rhombus, local_steps, perim_score));
    consider(detail::polish(ev, rect, local_steps, ratio_score));

    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * kPi);
    for (int n = 0; n < samples; ++n) {
        std::array<double, 4> t;
        for (auto& v : t) v = uni(rng);
        std::sort(t.begin(), t.end());
        bool ok = true;
        for (int k = 0; k < 3; ++k) {
            if (t[k + 1] - t[k] < 1e-9) ok = false;
        }
        if (!ok) continue;
        const Quadrilateral q = ev.make(t);
        consider(q);
        consider(detail::polish(ev, q, local_steps, perim_score));
        consider(detail::polish(ev, q, local_steps, ratio_score));
        ++report.samples_evaluated;
    }

    report.perimeter_violation = report.best_perimeter > report.perimeter_bound + 1e-9;
    report.ratio_violation = report.best_ratio > report.ratio_bound + 1e-9;
    return report;
}

}  // namespace inscribed::oracle
