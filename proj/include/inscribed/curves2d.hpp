#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "inscribed/numerics.hpp"

namespace inscribed::curves2d {

struct ExponentMismatch : std::runtime_error {
    explicit ExponentMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// The curve |x/A|^alpha + |y/B|^beta = 1. Equal exponents give a
/// superellipse, alpha = beta = 2 the ellipse with semi-axes (A, B).
struct MixedCurve2D {
    double A, B, alpha, beta;

    MixedCurve2D(double A_, double B_, double alpha_, double beta_)
        : A(A_), B(B_), alpha(alpha_), beta(beta_) {
        if (!(A > 0.0) || !(B > 0.0) || !(alpha > 0.0) || !(beta > 0.0)) {
            throw std::invalid_argument("MixedCurve2D: all parameters must be positive");
        }
    }

    static MixedCurve2D ellipse(double a, double b) { return MixedCurve2D(a, b, 2.0, 2.0); }
    static MixedCurve2D superellipse(double A_, double B_, double alpha_) {
        return MixedCurve2D(A_, B_, alpha_, alpha_);
    }

    double delta() const { return 1.0 / beta; }

    double residual(double x, double y) const {
        return std::pow(x / A, alpha) + std::pow(y / B, beta) - 1.0;
    }

    /// y >= 0 on the curve for x in [0, A].
    double y_from_x(double x) const {
        const double u = std::pow(x / A, alpha);
        if (u >= 1.0) return 0.0;
        return B * std::exp(delta() * std::log1p(-u));
    }

    double x_from_y(double y) const {
        const double v = std::pow(y / B, beta);
        if (v >= 1.0) return 0.0;
        return A * std::exp((1.0 / alpha) * std::log1p(-v));
    }
};

/// First-quadrant vertex; the full rectangle spans [-x, x] x [-y, y].
struct Rectangle {
    double x = 0.0;
    double y = 0.0;
};

struct RectMetrics {
    double area = 0.0;       // S = 4xy
    double perimeter = 0.0;  // P = 4(x+y)
    double ratio = 0.0;      // R = S / P^2, at most 1/16

    static RectMetrics of(const Rectangle& r) {
        RectMetrics m;
        m.area = 4.0 * r.x * r.y;
        m.perimeter = 4.0 * (r.x + r.y);
        m.ratio = m.area / (m.perimeter * m.perimeter);
        return m;
    }
};

enum class PointKind { interior_max, interior_min, boundary };

inline const char* to_string(PointKind k) {
    switch (k) {
        case PointKind::interior_max: return "interior_max";
        case PointKind::interior_min: return "interior_min";
        default: return "boundary";
    }
}

/// multiplier is the Lagrange multiplier of the unscaled objective
/// (x+y for perimeter, xy for area); objective_value is the reported
/// rectangle metric (P, S or R).
struct CriticalPoint {
    Rectangle rect;
    double multiplier = 0.0;
    double objective_value = 0.0;
    PointKind kind = PointKind::interior_max;
};

enum class ExistenceNote {
    unique_max_no_min,
    unique_min_no_max,
    both_exist,
    degenerate_all_equal,
    multiple_max,
    none_exist
};

inline const char* to_string(ExistenceNote n) {
    switch (n) {
        case ExistenceNote::unique_max_no_min: return "unique_max_no_min";
        case ExistenceNote::unique_min_no_max: return "unique_min_no_max";
        case ExistenceNote::both_exist: return "both_exist";
        case ExistenceNote::degenerate_all_equal: return "degenerate_all_equal";
        case ExistenceNote::multiple_max: return "multiple_max";
        default: return "none_exist";
    }
}

struct SolveReport {
    std::vector<CriticalPoint> critical_points;
    std::optional<CriticalPoint> global_max;
    std::optional<CriticalPoint> global_min;
    ExistenceNote existence_note = ExistenceNote::none_exist;
};

/// Unique maximum-area rectangle: x = A (beta/(alpha+beta))^{1/alpha},
/// y = B (alpha/(alpha+beta))^{1/beta}.
inline std::pair<Rectangle, RectMetrics> max_area_rect(const MixedCurve2D& c) {
    Rectangle r;
    r.x = c.A * std::pow(c.beta / (c.alpha + c.beta), 1.0 / c.alpha);
    r.y = c.B * std::pow(c.alpha / (c.alpha + c.beta), 1.0 / c.beta);
    return {r, RectMetrics::of(r)};
}

enum class StationaryClass { max, min, degenerate };

/// Bordered Hessian sign test for the equal-exponent perimeter problem:
/// H = alpha^3 (alpha-1) (xy)^{alpha-2} (x^a B^a + y^a A^a) / (A B)^{2a}.
inline StationaryClass classify_perimeter_stationary(const MixedCurve2D& c, const Rectangle& r) {
    if (c.alpha != c.beta) {
        throw ExponentMismatch("classify_perimeter_stationary: requires alpha == beta");
    }
    const double a = c.alpha;
    const double Aa = std::pow(c.A, a);
    const double Ba = std::pow(c.B, a);
    const double H = a * a * a * (a - 1.0) * std::pow(r.x * r.y, a - 2.0) *
                     (std::pow(r.x, a) * Ba + std::pow(r.y, a) * Aa) / (Aa * Aa * Ba * Ba);
    if (H > 0.0) return StationaryClass::max;
    if (H < 0.0) return StationaryClass::min;
    return StationaryClass::degenerate;
}

namespace detail {

/// F(u) = A u + B (1-u^alpha)^delta on (0,1): the perimeter/4 as a function
/// of u = x/A. Derivatives are evaluated in log space; near u = 1 the factor
/// (1-u^alpha)^{delta-1} over- or underflows otherwise.
struct PerimeterReduced {
    double A, B, alpha, delta;

    double one_minus_ua(double u) const { return -std::expm1(alpha * std::log(u)); }

    double F(double u) const {
        const double w = one_minus_ua(u);
        if (w <= 0.0) return A * u;
        return A * u + B * std::exp(delta * std::log(w));
    }
    double Fp(double u) const {
        const double w = one_minus_ua(u);
        if (w <= 0.0) {
            // limit value; delta>1 kills the singular factor, delta<1 blows up
            return delta > 1.0 ? A : -std::numeric_limits<double>::infinity();
        }
        const double t =
            std::exp((alpha - 1.0) * std::log(u) + (delta - 1.0) * std::log(w));
        return A - B * alpha * delta * t;
    }
    double Fpp(double u) const {
        const double w = one_minus_ua(u);
        if (w <= 0.0) return 0.0;
        const double t =
            std::exp((alpha - 2.0) * std::log(u) + (delta - 2.0) * std::log(w));
        const double bracket = (alpha - 1.0) * w + (1.0 - delta) * alpha * (1.0 - w);
        return -B * alpha * delta * t * bracket;
    }
};

inline CriticalPoint perimeter_point(const MixedCurve2D& c, double x, double y,
                                     PointKind kind) {
    CriticalPoint p;
    p.rect.x = x;
    p.rect.y = y;
    p.kind = kind;
    p.objective_value = 4.0 * (x + y);
    // lambda for objective x + y: 1 = lambda * alpha * x^{alpha-1} / A^alpha
    p.multiplier = std::pow(c.A, c.alpha) * std::pow(x, 1.0 - c.alpha) / c.alpha;
    return p;
}

}  // namespace detail

/// Stationary rectangles of the perimeter. Equal exponents use the closed
/// formulas; mixed exponents enumerate the zeros of F'(u) on (0,1), split at
/// the single zero of F'' when it lies inside, and classify by the sign of
/// F''. The degenerate alpha = beta = 1 family is reported through the
/// existence note.
inline SolveReport optimal_perimeter_rects(const MixedCurve2D& c) {
    SolveReport report;

    if (c.alpha == c.beta) {
        const double a = c.alpha;
        if (a == 1.0) {
            if (c.A == c.B) {
                report.existence_note = ExistenceNote::degenerate_all_equal;
                return report;
            }
            // taxicab family: suprema only at the degenerate rectangles
            CriticalPoint px;
            px.rect = {c.A, 0.0};
            px.objective_value = 4.0 * c.A;
            px.kind = PointKind::boundary;
            CriticalPoint py;
            py.rect = {0.0, c.B};
            py.objective_value = 4.0 * c.B;
            py.kind = PointKind::boundary;
            report.critical_points = {px, py};
            report.existence_note = ExistenceNote::none_exist;
            return report;
        }
        const double s = a / (a - 1.0);
        const double As = std::pow(c.A, s);
        const double Bs = std::pow(c.B, s);
        const double den = std::pow(As + Bs, 1.0 / a);
        CriticalPoint p;
        p.rect = {As / den, Bs / den};
        p.objective_value = 4.0 * std::pow(As + Bs, (a - 1.0) / a);
        p.multiplier = std::pow(c.A, a) * std::pow(p.rect.x, 1.0 - a) / a;
        const StationaryClass cls = classify_perimeter_stationary(c, p.rect);
        p.kind = cls == StationaryClass::max ? PointKind::interior_max : PointKind::interior_min;
        report.critical_points = {p};
        if (cls == StationaryClass::max) {
            report.global_max = p;
            report.existence_note = ExistenceNote::unique_max_no_min;
        } else {
            report.global_min = p;
            report.existence_note = ExistenceNote::unique_min_no_max;
        }
        return report;
    }

    const detail::PerimeterReduced fr{c.A, c.B, c.alpha, c.delta()};
    constexpr double kOffset = 1e-9;

    std::vector<double> splits = {kOffset};
    const double denom = c.alpha * c.delta() - 1.0;
    if (denom != 0.0) {
        const double ua = (c.alpha - 1.0) / denom;
        if (ua > 0.0 && ua < 1.0) {
            const double ustar = std::pow(ua, 1.0 / c.alpha);
            if (ustar > kOffset && ustar < 1.0 - kOffset) splits.push_back(ustar);
        }
    }
    splits.push_back(1.0 - kOffset);

    std::vector<CriticalPoint> found;
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        const double lo = splits[i], hi = splits[i + 1];
        double flo = fr.Fp(lo), fhi = fr.Fp(hi);
        if (std::isinf(flo)) flo = flo > 0 ? 1e300 : -1e300;
        if (std::isinf(fhi)) fhi = fhi > 0 ? 1e300 : -1e300;
        if (flo == 0.0 || fhi == 0.0 || (flo < 0.0) == (fhi < 0.0)) continue;
        const auto rr = numerics::find_root([&](double u) { return fr.Fp(u); },
                                            numerics::Bracket{lo, hi, flo, fhi}, 1e-13);
        // Newton polish; where F'' is steep a width-converged bracket still
        // leaves F' large enough to spoil the stationarity residual
        double u = rr.root;
        for (int k = 0; k < 3; ++k) {
            const double fp = fr.Fp(u);
            const double fpp = fr.Fpp(u);
            if (fpp == 0.0 || !std::isfinite(fp) || !std::isfinite(fpp)) break;
            const double un = u - fp / fpp;
            if (!(un > lo) || !(un < hi)) break;
            u = un;
        }
        double w = fr.one_minus_ua(u);
        double x = c.A * u;
        double y = c.y_from_x(x);
        if (w < 1e-6 && w > 0.0) {
            // So close to the degenerate corner that u cannot resolve the
            // root; t = log(1 - u^alpha) can, so re-solve there.
            const double de = fr.delta;
            const auto G = [&](double t) {
                return c.A - c.B * c.alpha * de *
                             std::exp((c.alpha - 1.0) / c.alpha * std::log1p(-std::exp(t)) +
                                      (de - 1.0) * t);
            };
            try {
                const double t_lo = std::log(fr.one_minus_ua(hi));
                const double t_hi = std::log(fr.one_minus_ua(lo));
                const auto rr2 =
                    numerics::find_root(G, numerics::make_bracket(G, t_lo, t_hi), 1e-13);
                w = std::exp(rr2.root);
                x = c.A * std::exp(std::log1p(-w) / c.alpha);
                y = c.B * std::exp(de * std::log(w));
            } catch (const numerics::NoSignChange&) {
                // marginal sign at the transformed ends; keep the u result
            }
        }
        const PointKind kind =
            fr.Fpp(u) < 0.0 ? PointKind::interior_max : PointKind::interior_min;
        found.push_back(detail::perimeter_point(c, x, y, kind));
    }

    int n_max = 0, n_min = 0;
    for (const auto& p : found) {
        if (p.kind == PointKind::interior_max) {
            ++n_max;
            if (!report.global_max || p.objective_value > report.global_max->objective_value) {
                report.global_max = p;
            }
        } else {
            ++n_min;
            if (!report.global_min || p.objective_value < report.global_min->objective_value) {
                report.global_min = p;
            }
        }
    }
    report.critical_points = std::move(found);
    if (n_max >= 1 && n_min >= 1) {
        report.existence_note = ExistenceNote::both_exist;
    } else if (n_max == 1) {
        report.existence_note = ExistenceNote::unique_max_no_min;
    } else if (n_min == 1) {
        report.existence_note = ExistenceNote::unique_min_no_max;
    } else if (n_max > 1) {
        report.existence_note = ExistenceNote::multiple_max;
    } else {
        report.existence_note = ExistenceNote::none_exist;
    }
    return report;
}

/// The best-ratio rectangle is the inscribed square: the unique s > 0 with
/// (s/A)^alpha + (s/B)^beta = 1. R = 1/16 regardless of the curve.
inline std::pair<Rectangle, RectMetrics> best_ratio_rect(const MixedCurve2D& c) {
    const double hi = std::min(c.A, c.B);
    const auto g = [&](double s) { return c.residual(s, s); };
    double lo = hi * 1e-3;
    while (g(lo) >= 0.0 && lo > 1e-300) lo *= 1e-6;
    const auto rr = numerics::find_root(g, numerics::make_bracket(g, lo, hi), 1e-15);
    Rectangle r{rr.root, rr.root};
    return {r, RectMetrics::of(r)};
}

/// Best inscribed-rectangle area over the area enclosed by the equal-exponent
/// curve: alpha / (2^{2/alpha} Beta(1/alpha, 1/alpha + 1)). Independent of
/// the semi-axes.
inline double fill_ratio(double alpha) {
    if (!(alpha > 0.0)) throw numerics::DomainError("fill_ratio: alpha must be positive");
    const double inv = 1.0 / alpha;
    return alpha / (std::pow(2.0, 2.0 * inv) * numerics::beta_fn(inv, inv + 1.0));
}

}  // namespace inscribed::curves2d
