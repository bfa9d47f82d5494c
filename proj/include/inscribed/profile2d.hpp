#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "inscribed/curves2d.hpp"
#include "inscribed/numerics.hpp"

namespace inscribed::profile2d {

using curves2d::CriticalPoint;
using curves2d::ExistenceNote;
using curves2d::PointKind;
using curves2d::Rectangle;
using curves2d::SolveReport;

struct MissingDerivatives : std::runtime_error {
    explicit MissingDerivatives(const std::string& what) : std::runtime_error(what) {}
};

struct ConstructionFailed : std::runtime_error {
    explicit ConstructionFailed(const std::string& what) : std::runtime_error(what) {}
};

enum class ProfileKind { analytic_formula, piecewise_polynomial, constructed };

inline const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::analytic_formula: return "analytic_formula";
        case ProfileKind::piecewise_polynomial: return "piecewise_polynomial";
        default: return "constructed";
    }
}

enum class PieceBasis { x, sqrt_x };

/// One closed-form piece on [lo, hi]: inv/x + sum_k coeffs[k] * v^k where
/// v = x or v = sqrt(x).
struct PolyPiece {
    double lo = 0.0;
    double hi = 0.0;
    PieceBasis basis = PieceBasis::x;
    std::vector<double> coeffs;
    double inv = 0.0;

    double poly(double v) const {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * v + coeffs[k];
        return acc;
    }
    double poly_d1(double v) const {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * v + coeffs[k] * static_cast<double>(k);
        return acc;
    }
    double poly_d2(double v) const {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 2;)
            acc = acc * v + coeffs[k] * static_cast<double>(k) * static_cast<double>(k - 1);
        return acc;
    }

    double value(double x) const {
        const double v = basis == PieceBasis::sqrt_x ? std::sqrt(x) : x;
        double out = poly(v);
        if (inv != 0.0) out += inv / x;
        return out;
    }
    double d1(double x) const {
        double out;
        if (basis == PieceBasis::sqrt_x) {
            const double v = std::sqrt(x);
            out = poly_d1(v) / (2.0 * v);
        } else {
            out = poly_d1(x);
        }
        if (inv != 0.0) out -= inv / (x * x);
        return out;
    }
    double d2(double x) const {
        double out;
        if (basis == PieceBasis::sqrt_x) {
            const double v = std::sqrt(x);
            // d2/dx2 p(sqrt x) = p''(v)/(4x) - p'(v)/(4 x v)
            out = poly_d2(v) / (4.0 * x) - poly_d1(v) / (4.0 * x * v);
        } else {
            out = poly_d2(x);
        }
        if (inv != 0.0) out += 2.0 * inv / (x * x * x);
        return out;
    }
};

/// Contiguous ascending pieces covering [0, A].
struct PiecewisePoly {
    std::vector<PolyPiece> pieces;

    const PolyPiece& piece_at(double x) const {
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
            if (x <= pieces[i].hi) return pieces[i];
        }
        return pieces.back();
    }
    double value(double x) const { return piece_at(x).value(x); }
    double d1(double x) const { return piece_at(x).d1(x); }
    double d2(double x) const { return piece_at(x).d2(x); }
};

/// A strictly decreasing profile f on [0, A] with f(0) = B and f(A) = 0,
/// defining the symmetric curve |y| = f(|x|). Derivatives are optional.
struct ProfileCurve {
    double A = 0.0;
    double B = 0.0;
    ProfileKind kind = ProfileKind::analytic_formula;
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;
    std::optional<PiecewisePoly> pieces;

    bool has_derivatives() const { return static_cast<bool>(df) && static_cast<bool>(d2f); }
};

/// Endpoint and monotonicity checks on a dense grid; throws on violation.
inline void validate_profile(const ProfileCurve& p, int grid = 10000) {
    if (!(p.A > 0.0) || !(p.B > 0.0) || !p.f) {
        throw std::invalid_argument("ProfileCurve: needs A > 0, B > 0 and an evaluator");
    }
    if (std::abs(p.f(0.0) - p.B) > 1e-9 * std::max(1.0, p.B)) {
        throw std::invalid_argument("ProfileCurve: f(0) != B");
    }
    if (std::abs(p.f(p.A)) > 1e-9 * std::max(1.0, p.B)) {
        throw std::invalid_argument("ProfileCurve: f(A) != 0");
    }
    double prev = p.f(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double x = p.A * static_cast<double>(i) / grid;
        const double v = p.f(x);
        if (!(v < prev)) throw std::invalid_argument("ProfileCurve: not strictly decreasing");
        prev = v;
    }
}

/// Profile view of a mixed-exponent curve: f(x) = B (1 - (x/A)^alpha)^{1/beta}.
inline ProfileCurve profile_from_curve(const curves2d::MixedCurve2D& c) {
    ProfileCurve p;
    p.A = c.A;
    p.B = c.B;
    p.kind = ProfileKind::analytic_formula;
    const double A = c.A, B = c.B, al = c.alpha, de = 1.0 / c.beta;
    p.f = [c](double x) { return c.y_from_x(x); };
    p.df = [A, B, al, de](double x) {
        const double u = std::pow(x / A, al);
        const double w = 1.0 - u;
        if (w <= 0.0 || x <= 0.0) return -std::numeric_limits<double>::infinity();
        return -(B * al * de / A) * std::pow(x / A, al - 1.0) * std::pow(w, de - 1.0);
    };
    p.d2f = [A, B, al, de](double x) {
        const double u = std::pow(x / A, al);
        const double w = 1.0 - u;
        if (w <= 0.0 || x <= 0.0) return std::numeric_limits<double>::quiet_NaN();
        const double bracket = (al - 1.0) * w - (de - 1.0) * al * u;
        return -(B * al * de / (A * A)) * std::pow(x / A, al - 2.0) * std::pow(w, de - 2.0) *
               bracket;
    };
    return p;
}

inline ProfileCurve profile_from_pieces(PiecewisePoly poly, ProfileKind kind) {
    ProfileCurve p;
    p.kind = kind;
    p.A = poly.pieces.back().hi;
    p.B = poly.value(0.0);
    auto shared = std::make_shared<PiecewisePoly>(std::move(poly));
    p.pieces = *shared;
    p.f = [shared](double x) { return shared->value(x); };
    p.df = [shared](double x) { return shared->d1(x); };
    p.d2f = [shared](double x) { return shared->d2(x); };
    return p;
}

/// The built-in strictly decreasing profile on [0, 4] with exactly two
/// maximum-area rectangles, at vertices (1/4, 1) and (1, 1/4). The middle
/// cubic joins 4(1-sqrt(x))^2 and (2-sqrt(x))^2/4 with matching values and
/// slopes at 9/25 and 16/25.
inline ProfileCurve example2_profile() {
    PiecewisePoly poly;
    PolyPiece left;
    left.lo = 0.0;
    left.hi = 9.0 / 25.0;
    left.basis = PieceBasis::sqrt_x;
    left.coeffs = {4.0, -8.0, 4.0};  // 4 (1 - v)^2
    PolyPiece mid;
    mid.lo = 9.0 / 25.0;
    mid.hi = 16.0 / 25.0;
    mid.basis = PieceBasis::x;
    mid.coeffs = {851.0 / 245.0, -17401.0 / 1176.0, 14125.0 / 588.0, -15625.0 / 1176.0};
    PolyPiece right;
    right.lo = 16.0 / 25.0;
    right.hi = 4.0;
    right.basis = PieceBasis::sqrt_x;
    right.coeffs = {1.0, -1.0, 0.25};  // (2 - v)^2 / 4
    poly.pieces = {left, mid, right};
    return profile_from_pieces(std::move(poly), ProfileKind::piecewise_polynomial);
}

namespace detail {

struct ScanOptimum {
    double x = 0.0;
    double value = 0.0;
    bool at_boundary = false;
};

/// Golden-section refinement of a maximum of g inside [lo, hi].
template <class G>
ScanOptimum golden_refine(G&& g, double lo, double hi, int steps) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = g(c), fd = g(d);
    for (int i = 0; i < steps; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = g(d);
        }
    }
    return fc >= fd ? ScanOptimum{c, fc} : ScanOptimum{d, fd};
}

/// Dense scan of g over (0, A), then local refinement of every near-best
/// cluster. Kept candidates are grouped into spatial runs; a run reports all
/// of its machine-flat core when that core is wide (an exact plateau) and
/// only its best point otherwise, so a single flat-tangency maximum never
/// fans out into a swath of near-ties.
template <class G>
std::vector<ScanOptimum> scan_global_maxima(G&& g, double A, int n, int refine_steps,
                                            double tie_rel) {
    std::vector<double> vals(static_cast<std::size_t>(n));
    const double step = A / (n + 1);
    double best0 = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        vals[i] = g(step * (i + 1));
        best0 = std::max(best0, vals[i]);
    }
    const double band = 1e-6 * std::max(1.0, std::abs(best0));

    std::vector<ScanOptimum> candidates;
    int i = 0;
    while (i < n) {
        if (vals[i] < best0 - band) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && vals[j + 1] >= best0 - band) ++j;
        int peak = i;
        for (int k = i; k <= j; ++k) {
            if (vals[k] > vals[peak]) peak = k;
            candidates.push_back({step * (k + 1), vals[k], k == 0 || k == n - 1});
        }
        // x_{peak-1} .. x_{peak+1} with x_i = step (i+1)
        auto opt = golden_refine(g, step * peak, step * std::min(peak + 2, n + 1), refine_steps);
        opt.at_boundary = (i == 0 || j == n - 1);
        candidates.push_back(opt);
        i = j + 1;
    }

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& cnd : candidates) best = std::max(best, cnd.value);
    const double scale = std::max(1.0, std::abs(best));
    const double keep = best - tie_rel * scale;
    std::vector<ScanOptimum> kept;
    for (const auto& cnd : candidates) {
        if (cnd.value >= keep) kept.push_back(cnd);
    }
    std::sort(kept.begin(), kept.end(), [](const auto& p, const auto& q) { return p.x < q.x; });

    const double core_band = std::min(tie_rel, 1e-13) * scale;
    std::vector<ScanOptimum> out;
    std::size_t r = 0;
    while (r < kept.size()) {
        std::size_t s = r;
        while (s + 1 < kept.size() && kept[s + 1].x - kept[s].x <= 2.5 * step) ++s;
        double run_best = -std::numeric_limits<double>::infinity();
        bool touches_boundary = false;
        for (std::size_t k = r; k <= s; ++k) {
            run_best = std::max(run_best, kept[k].value);
            touches_boundary = touches_boundary || kept[k].at_boundary;
        }
        std::vector<ScanOptimum> core;
        for (std::size_t k = r; k <= s; ++k) {
            if (kept[k].value >= run_best - core_band) core.push_back(kept[k]);
        }
        const double core_span = core.back().x - core.front().x;
        if (core.size() >= 2 && core_span >= 4.0 * step) {
            for (auto& c : core) {
                c.at_boundary = c.at_boundary || touches_boundary;
                out.push_back(c);
            }
        } else {
            ScanOptimum pick = core.front();
            for (const auto& c : core) {
                if (c.value > pick.value) pick = c;
            }
            pick.at_boundary = touches_boundary;
            out.push_back(pick);
        }
        r = s + 1;
    }
    return out;
}

}  // namespace detail

/// All global maximizers of the rectangle area 4 x f(x) on (0, A), located by
/// a dense scan plus golden-section refinement. Points within tie_rel
/// relative of the best are all reported; exact plateaus report their grid
/// points. tol sets the refinement target in x.
inline SolveReport max_area_rects(const ProfileCurve& p, double tol = 1e-8,
                                  int grid_points = 100000, double tie_rel = 1e-9) {
    const int steps =
        std::clamp(static_cast<int>(std::ceil(std::log(p.A / (grid_points * tol)) /
                                              std::log(1.0 / 0.6180339887498949))),
                   40, 80);
    const auto g = [&](double x) { return 4.0 * x * p.f(x); };
    const auto maxima = detail::scan_global_maxima(g, p.A, grid_points, steps, tie_rel);

    SolveReport report;
    for (const auto& m : maxima) {
        CriticalPoint cp;
        cp.rect = {m.x, p.f(m.x)};
        cp.multiplier = m.x;  // objective xy against y - f(x) = 0 gives lambda = x
        cp.objective_value = m.value;
        cp.kind = PointKind::interior_max;
        report.critical_points.push_back(cp);
        if (!report.global_max || cp.objective_value > report.global_max->objective_value) {
            report.global_max = cp;
        }
    }
    report.existence_note = report.critical_points.size() == 1
                                ? ExistenceNote::unique_max_no_min
                                : ExistenceNote::multiple_max;
    return report;
}

enum class Certificate { certified_unique, not_certified };

/// Sufficient uniqueness test for the maximum-area rectangle: constant sign
/// of h(t) = 2 f'(t) + t f''(t) on a dense grid, bounded away from zero.
inline Certificate uniqueness_certificate(const ProfileCurve& p) {
    if (!p.has_derivatives()) {
        throw MissingDerivatives("uniqueness_certificate: profile lacks derivatives");
    }
    constexpr int kGrid = 10000;
    constexpr double kFloor = 1e-8;
    int sign = 0;
    for (int i = 1; i <= kGrid; ++i) {
        const double t = p.A * static_cast<double>(i) / (kGrid + 1);
        const double h = 2.0 * p.df(t) + t * p.d2f(t);
        if (!std::isfinite(h)) continue;
        if (std::abs(h) < kFloor) return Certificate::not_certified;
        const int s = h > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) return Certificate::not_certified;
    }
    return sign != 0 ? Certificate::certified_unique : Certificate::not_certified;
}

enum class PerimeterCase { concave_unique_max, convex_unique_min, unclassified };

inline const char* to_string(PerimeterCase c) {
    switch (c) {
        case PerimeterCase::concave_unique_max: return "concave_unique_max";
        case PerimeterCase::convex_unique_min: return "convex_unique_min";
        default: return "unclassified";
    }
}

struct ProfilePerimeterResult {
    SolveReport report;
    PerimeterCase curvature_case = PerimeterCase::unclassified;
};

/// Interior optima of the perimeter 4 (x + f(x)) by the same grid + refine
/// scheme; optima whose basin touches the scan boundary are reported as
/// boundary points. When derivatives exist, the curvature/endpoint-slope
/// classification is attached: concave with f'(0+) > -1 > f'(A-) certifies a
/// unique maximum, convex with f'(0+) < -1 < f'(A-) a unique minimum.
inline ProfilePerimeterResult perimeter_rects(const ProfileCurve& p, double tol = 1e-8) {
    (void)tol;
    const auto pf = [&](double x) { return 4.0 * (x + p.f(x)); };
    constexpr int kN = 100000;

    // all-equal detection first
    double lo_val = std::numeric_limits<double>::infinity();
    double hi_val = -lo_val;
    for (int i = 1; i <= 512; ++i) {
        const double v = pf(p.A * static_cast<double>(i) / 513.0);
        lo_val = std::min(lo_val, v);
        hi_val = std::max(hi_val, v);
    }
    ProfilePerimeterResult out;
    if (hi_val - lo_val <= 1e-12 * std::max(1.0, std::abs(hi_val))) {
        out.report.existence_note = ExistenceNote::degenerate_all_equal;
        return out;
    }

    const auto maxima = detail::scan_global_maxima(pf, p.A, kN, 40, 1e-9);
    const auto neg = [&](double x) { return -pf(x); };
    const auto minima = detail::scan_global_maxima(neg, p.A, kN, 40, 1e-9);

    int n_max = 0, n_min = 0;
    for (const auto& m : maxima) {
        CriticalPoint cp;
        cp.rect = {m.x, p.f(m.x)};
        cp.multiplier = 1.0;  // objective x + y against y - f(x) = 0
        cp.objective_value = m.value;
        cp.kind = m.at_boundary ? PointKind::boundary : PointKind::interior_max;
        if (!m.at_boundary) {
            ++n_max;
            if (!out.report.global_max ||
                cp.objective_value > out.report.global_max->objective_value) {
                out.report.global_max = cp;
            }
        }
        out.report.critical_points.push_back(cp);
    }
    for (const auto& m : minima) {
        CriticalPoint cp;
        cp.rect = {m.x, p.f(m.x)};
        cp.multiplier = 1.0;
        cp.objective_value = -m.value;
        cp.kind = m.at_boundary ? PointKind::boundary : PointKind::interior_min;
        if (!m.at_boundary) {
            ++n_min;
            if (!out.report.global_min ||
                cp.objective_value < out.report.global_min->objective_value) {
                out.report.global_min = cp;
            }
        }
        out.report.critical_points.push_back(cp);
    }

    if (n_max >= 1 && n_min >= 1) {
        out.report.existence_note = ExistenceNote::both_exist;
    } else if (n_max == 1) {
        out.report.existence_note = ExistenceNote::unique_max_no_min;
    } else if (n_min == 1) {
        out.report.existence_note = ExistenceNote::unique_min_no_max;
    } else if (n_max > 1) {
        out.report.existence_note = ExistenceNote::multiple_max;
    } else {
        out.report.existence_note = ExistenceNote::none_exist;
    }

    if (p.has_derivatives()) {
        const double eps = p.A * 1e-7;
        const double slope0 = p.df(eps);
        const double slopeA = p.df(p.A - eps);
        int concave = 0, convex = 0;
        constexpr int kCurvGrid = 2048;
        for (int i = 1; i <= kCurvGrid; ++i) {
            const double t = p.A * static_cast<double>(i) / (kCurvGrid + 1);
            const double c = p.d2f(t);
            if (!std::isfinite(c)) continue;
            if (c < 0.0) ++concave;
            if (c > 0.0) ++convex;
        }
        if (convex == 0 && concave > 0 && slope0 > -1.0 && slopeA < -1.0) {
            out.curvature_case = PerimeterCase::concave_unique_max;
        } else if (concave == 0 && convex > 0 && slope0 < -1.0 && slopeA > -1.0) {
            out.curvature_case = PerimeterCase::convex_unique_min;
        }
    }
    return out;
}

/// The best-ratio rectangle is the square through the fixed point f(x) = x.
inline Rectangle best_ratio_rect(const ProfileCurve& p) {
    const auto g = [&](double x) { return p.f(x) - x; };
    const auto rr = numerics::find_root(g, numerics::make_bracket(g, 0.0, p.A), 1e-14);
    return Rectangle{rr.root, rr.root};
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Construction data for a profile whose maximum-area vertices are exactly a
/// prescribed closed set E (a finite union of points and closed intervals in
/// (0, inf)). Gaps are the open components of [m, M] \ E.
struct ProfileConstructionSpec {
    std::vector<Interval> components;  // sorted, disjoint, closed
    double m = 0.0;
    double M = 0.0;
    std::vector<Interval> gaps;
    std::vector<double> eps_gaps;
    double eps_tail = 0.0;
    double A_out = 0.0;
};

inline ProfileConstructionSpec make_construction_spec(std::vector<Interval> E) {
    if (E.empty()) throw std::invalid_argument("construction: E must be nonempty");
    for (auto& iv : E) {
        if (iv.hi < iv.lo) std::swap(iv.lo, iv.hi);
        if (!(iv.lo > 0.0)) throw std::invalid_argument("construction: E must lie in (0, inf)");
    }
    std::sort(E.begin(), E.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& iv : E) {
        if (!merged.empty() && iv.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        } else {
            merged.push_back(iv);
        }
    }

    ProfileConstructionSpec spec;
    spec.components = merged;
    spec.m = merged.front().lo;
    spec.M = merged.back().hi;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        spec.gaps.push_back({merged[i].hi, merged[i + 1].lo});
    }
    // widest gap first for the decaying epsilon schedule
    std::vector<std::size_t> order(spec.gaps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return (spec.gaps[i].hi - spec.gaps[i].lo) > (spec.gaps[j].hi - spec.gaps[j].lo);
    });
    spec.eps_gaps.resize(spec.gaps.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        const auto& gap = spec.gaps[order[rank]];
        const double len = gap.hi - gap.lo;
        spec.eps_gaps[order[rank]] =
            std::min(0.25, 16.0 / (len * len * len * len)) * std::pow(2.0, -(double)(rank + 1));
    }
    const double M3 = spec.M * spec.M * spec.M;
    spec.eps_tail = 1.0 / (4.0 * M3);
    const double disc = std::max(0.0, 1.0 - 4.0 * spec.eps_tail * M3);
    spec.A_out = (2.0 * spec.eps_tail * M3 + 1.0 + std::sqrt(disc)) /
                 (2.0 * spec.eps_tail * spec.M * spec.M);
    return spec;
}

namespace detail {

inline PolyPiece hyperbola_piece(double lo, double hi) {
    PolyPiece p;
    p.lo = lo;
    p.hi = hi;
    p.inv = 1.0;
    return p;
}

inline PolyPiece gap_piece(const Interval& gap, double eps) {
    // 1/x - eps (x-a)^2 (x-b)^2
    const double s = gap.lo + gap.hi;
    const double pr = gap.lo * gap.hi;
    PolyPiece p;
    p.lo = gap.lo;
    p.hi = gap.hi;
    p.inv = 1.0;
    p.coeffs = {-eps * pr * pr, 2.0 * eps * s * pr, -eps * (s * s + 2.0 * pr), 2.0 * eps * s,
                -eps};
    return p;
}

inline bool gap_piece_ok(const PolyPiece& piece) {
    constexpr int kCheck = 2000;
    const double span = piece.hi - piece.lo;
    for (int i = 1; i < kCheck; ++i) {
        const double x = piece.lo + span * static_cast<double>(i) / kCheck;
        if (!(piece.d1(x) < 0.0) || !(piece.d2(x) > 0.0)) return false;
    }
    return true;
}

}  // namespace detail

/// Builds the piecewise profile: 1/x on E, 1/x - eps_n (x-a_n)^2 (x-b_n)^2
/// across each gap, a quadratic left tail on [0, m) and a quadratic right
/// tail on (M, A]. Gap epsilons are halved until the gap stays strictly
/// decreasing and convex.
inline ProfileCurve construct_profile(ProfileConstructionSpec spec) {
    PiecewisePoly poly;

    {
        // 3/m - 3x/m^2 + x^2/m^3, the expanded left tail
        PolyPiece left;
        left.lo = 0.0;
        left.hi = spec.m;
        const double m = spec.m;
        left.coeffs = {3.0 / m, -3.0 / (m * m), 1.0 / (m * m * m)};
        poly.pieces.push_back(left);
    }

    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto& comp = spec.components[i];
        if (comp.hi > comp.lo) {
            poly.pieces.push_back(detail::hyperbola_piece(comp.lo, comp.hi));
        }
        if (i < spec.gaps.size()) {
            double eps = spec.eps_gaps[i];
            PolyPiece gp = detail::gap_piece(spec.gaps[i], eps);
            int halvings = 0;
            while (!detail::gap_piece_ok(gp)) {
                eps *= 0.5;
                if (++halvings > 80) {
                    throw ConstructionFailed("construct_profile: no epsilon passed validation");
                }
                gp = detail::gap_piece(spec.gaps[i], eps);
            }
            spec.eps_gaps[i] = eps;
            poly.pieces.push_back(gp);
        }
    }

    {
        // 1/M - (x-M)/M^2 + eps (x-M)^2, expanded
        const double M = spec.M, eps = spec.eps_tail;
        PolyPiece right;
        right.lo = M;
        right.hi = spec.A_out;
        right.coeffs = {2.0 / M + eps * M * M, -1.0 / (M * M) - 2.0 * eps * M, eps};
        poly.pieces.push_back(right);
    }

    ProfileCurve out = profile_from_pieces(std::move(poly), ProfileKind::constructed);
    try {
        validate_profile(out);
    } catch (const std::invalid_argument& e) {
        throw ConstructionFailed(std::string("construct_profile: ") + e.what());
    }
    return out;
}

inline ProfileCurve construct_profile(std::vector<Interval> E) {
    return construct_profile(make_construction_spec(std::move(E)));
}

}  // namespace inscribed::profile2d
