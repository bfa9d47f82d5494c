#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "inscribed/curves2d.hpp"
#include "inscribed/numerics.hpp"

namespace inscribed::surfaces3d {

struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

struct HypothesisViolation : std::runtime_error {
    explicit HypothesisViolation(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateGradient : std::runtime_error {
    explicit DegenerateGradient(const std::string& what) : std::runtime_error(what) {}
};

/// The surface |x/A|^alpha + |y/B|^beta + |z/C|^gamma = 1; the ellipsoid is
/// the case alpha = beta = gamma = 2.
struct Superellipsoid3D {
    double A, B, C, alpha, beta, gamma;

    Superellipsoid3D(double A_, double B_, double C_, double alpha_, double beta_, double gamma_)
        : A(A_), B(B_), C(C_), alpha(alpha_), beta(beta_), gamma(gamma_) {
        if (!(A > 0.0) || !(B > 0.0) || !(C > 0.0) || !(alpha > 0.0) || !(beta > 0.0) ||
            !(gamma > 0.0)) {
            throw std::invalid_argument("Superellipsoid3D: all parameters must be positive");
        }
    }

    static Superellipsoid3D ellipsoid(double a, double b, double c) {
        return Superellipsoid3D(a, b, c, 2.0, 2.0, 2.0);
    }
    static Superellipsoid3D symmetric(double alpha) {
        return Superellipsoid3D(1.0, 1.0, 1.0, alpha, alpha, alpha);
    }

    bool equal_exponents() const { return alpha == beta && beta == gamma; }

    double residual(double x, double y, double z) const {
        return std::pow(x / A, alpha) + std::pow(y / B, beta) + std::pow(z / C, gamma) - 1.0;
    }

    /// z >= 0 on the surface for feasible (x, y); negative share means the
    /// point is outside.
    double constraint_share(double x, double y) const {
        return 1.0 - std::pow(x / A, alpha) - std::pow(y / B, beta);
    }
    double z_from_xy(double x, double y) const {
        const double w = constraint_share(x, y);
        if (w <= 0.0) return 0.0;
        return C * std::pow(w, 1.0 / gamma);
    }
};

/// First-octant vertex; the full box spans [-x, x] x [-y, y] x [-z, z].
struct Box {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// surface_area follows the 4(xy+xz+yz) convention used by the closed-form
/// results; the ratio helpers below use the full box area 8(xy+xz+yz).
struct BoxMetrics {
    double volume = 0.0;        // V = 8xyz
    double surface_area = 0.0;  // S = 4(xy + xz + yz)
    double edge_sum = 0.0;      // L = 8(x + y + z)

    static BoxMetrics of(const Box& b) {
        BoxMetrics m;
        m.volume = 8.0 * b.x * b.y * b.z;
        m.surface_area = 4.0 * (b.x * b.y + b.x * b.z + b.y * b.z);
        m.edge_sum = 8.0 * (b.x + b.y + b.z);
        return m;
    }
};

/// V / S_geo^{3/2} with S_geo = 8(xy+xz+yz); at most 1/(6 sqrt 6), attained
/// by cubes.
inline double ratio_v_s32(const BoxMetrics& m) {
    return m.volume / std::pow(2.0 * m.surface_area, 1.5);
}
/// V / L^3; at most 1/1728, attained by cubes.
inline double ratio_v_l3(const BoxMetrics& m) {
    return m.volume / (m.edge_sum * m.edge_sum * m.edge_sum);
}
/// S_geo / L^2; at most 1/24, attained by cubes.
inline double ratio_s_l2(const BoxMetrics& m) {
    return 2.0 * m.surface_area / (m.edge_sum * m.edge_sum);
}

/// Unique maximum-volume box: x = A (beta gamma / (ab+ag+bg))^{1/alpha} and
/// cyclic.
inline std::pair<Box, BoxMetrics> max_volume_box(const Superellipsoid3D& s) {
    const double D = s.alpha * s.beta + s.alpha * s.gamma + s.beta * s.gamma;
    Box b;
    b.x = s.A * std::pow(s.beta * s.gamma / D, 1.0 / s.alpha);
    b.y = s.B * std::pow(s.alpha * s.gamma / D, 1.0 / s.beta);
    b.z = s.C * std::pow(s.alpha * s.beta / D, 1.0 / s.gamma);
    return {b, BoxMetrics::of(b)};
}

/// Volume bounded by the equal-exponent surface:
/// 8 ABC Gamma(1 + 1/a)^3 / Gamma(1 + 3/a).
inline double solid_volume(const Superellipsoid3D& s) {
    if (!s.equal_exponents()) {
        throw curves2d::ExponentMismatch("solid_volume: requires equal exponents");
    }
    const double inv = 1.0 / s.alpha;
    return 8.0 * s.A * s.B * s.C * std::pow(numerics::gamma_fn(1.0 + inv), 3) /
           numerics::gamma_fn(1.0 + 3.0 * inv);
}

/// V_max / V_solid for equal exponents; independent of the semi-axes.
inline double volume_fill_ratio(const Superellipsoid3D& s) {
    return max_volume_box(s).second.volume / solid_volume(s);
}

/// The cubic P(lambda) = 4 lambda^3 - lambda (a^2b^2 + a^2c^2 + b^2c^2)
/// - a^2b^2c^2 whose unique positive root L gives S_max = 4L for the
/// ellipsoid; the box solves the rank-deficient linear system at L.
struct EllipsoidSurfaceSolution {
    double Lambda = 0.0;
    Box box;
    double S_max = 0.0;
    numerics::CubicRealRoots cubic;
    bool interior_dominates_faces = false;  // Lambda > max(ab, ac, bc)/2
};

inline EllipsoidSurfaceSolution max_surface_area_ellipsoid(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
        throw std::invalid_argument("max_surface_area_ellipsoid: semi-axes must be positive");
    }
    const double ab = a * a * b * b, ac = a * a * c * c, bc = b * b * c * c;
    EllipsoidSurfaceSolution sol;
    sol.cubic = numerics::solve_cubic_real(4.0, 0.0, -(ab + ac + bc), -ab * c * c);
    double lambda = -1.0;
    for (double r : sol.cubic.roots) {
        if (r > 0.0) lambda = r;
    }
    if (lambda <= 0.0) throw SingularSystem("max_surface_area_ellipsoid: no positive root");
    sol.Lambda = lambda;
    sol.S_max = 4.0 * lambda;

    // System (2L/a^2) x - y - z = 0 and cyclic is rank 2 at L; fix z = 1 and
    // solve the leading 2x2 block, then scale the ray onto the ellipsoid.
    const double pa = 2.0 * lambda / (a * a);
    const double pb = 2.0 * lambda / (b * b);
    const double det = pa * pb - 1.0;
    if (std::abs(det) < 1e-14) {
        throw SingularSystem("max_surface_area_ellipsoid: degenerate 2x2 block");
    }
    double x = (pb + 1.0) / det;
    double y = (pa + 1.0) / det;
    double z = 1.0;
    const double norm = std::sqrt(x * x / (a * a) + y * y / (b * b) + z * z / (c * c));
    x /= norm;
    y /= norm;
    z /= norm;
    if (!(x > 0.0) || !(y > 0.0) || !(z > 0.0) || !std::isfinite(x + y + z)) {
        throw SingularSystem("max_surface_area_ellipsoid: non-positive solution ray");
    }
    sol.box = {x, y, z};
    sol.interior_dominates_faces =
        lambda > 0.5 * std::max({a * b, a * c, b * c});
    return sol;
}

/// Closed form for the ellipsoid of revolution (a, b, b):
/// S_max = b (b + sqrt(8 a^2 + b^2)).
inline double revolution_surface_area(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("revolution_surface_area: semi-axes must be positive");
    }
    return b * (b + std::sqrt(8.0 * a * a + b * b));
}

enum class EdgeSumCertificate { certified_global, conditional };

struct EdgeSumSolution {
    Box box;
    BoxMetrics metrics;
    EdgeSumCertificate uniqueness = EdgeSumCertificate::conditional;
};

namespace detail {

/// y recovered from the edge-sum stationarity relations given x:
/// y = (alpha B^beta x^{alpha-1} / (beta A^alpha))^{1/(beta-1)}.
inline double edge_sum_partner(double x, double alpha, double A, double beta, double B) {
    const double k = alpha * std::pow(B, beta) / (beta * std::pow(A, alpha));
    return std::pow(k * std::pow(x, alpha - 1.0), 1.0 / (beta - 1.0));
}

}  // namespace detail

/// Unique stationary box of the edge sum for alpha, beta, gamma > 1, found
/// from the monotone reduced constraint in x. Global maximality is certified
/// against the three boundary faces only for equal exponents.
inline EdgeSumSolution max_edge_sum_box(const Superellipsoid3D& s) {
    if (!(s.alpha > 1.0) || !(s.beta > 1.0) || !(s.gamma > 1.0)) {
        throw HypothesisViolation("max_edge_sum_box: requires all exponents > 1");
    }
    const auto lhs = [&](double x) {
        const double y = detail::edge_sum_partner(x, s.alpha, s.A, s.beta, s.B);
        const double z = detail::edge_sum_partner(x, s.alpha, s.A, s.gamma, s.C);
        return std::pow(x / s.A, s.alpha) + std::pow(y / s.B, s.beta) +
               std::pow(z / s.C, s.gamma) - 1.0;
    };
    double lo = s.A * 1e-6;
    while (lhs(lo) >= 0.0 && lo > 1e-300) lo *= 0.25;
    const auto rr = numerics::find_root(lhs, numerics::make_bracket(lhs, lo, s.A), 1e-14);

    EdgeSumSolution sol;
    sol.box.x = rr.root;
    sol.box.y = detail::edge_sum_partner(rr.root, s.alpha, s.A, s.beta, s.B);
    sol.box.z = detail::edge_sum_partner(rr.root, s.alpha, s.A, s.gamma, s.C);
    sol.metrics = BoxMetrics::of(sol.box);

    if (s.equal_exponents()) {
        // interior sum against the three face suprema (equal-exponent
        // perimeter closed form per face)
        const double sum = sol.box.x + sol.box.y + sol.box.z;
        const double ss = s.alpha / (s.alpha - 1.0);
        const double ee = (s.alpha - 1.0) / s.alpha;
        const double fxy = std::pow(std::pow(s.A, ss) + std::pow(s.B, ss), ee);
        const double fxz = std::pow(std::pow(s.A, ss) + std::pow(s.C, ss), ee);
        const double fyz = std::pow(std::pow(s.B, ss) + std::pow(s.C, ss), ee);
        if (sum > std::max({fxy, fxz, fyz})) {
            sol.uniqueness = EdgeSumCertificate::certified_global;
        }
    }
    return sol;
}

/// The cube inscribed in the surface: side coordinate c solves the monotone
/// equation (c/A)^a + (c/B)^b + (c/C)^g = 1. Maximizes V/S^{3/2}, V/L^3 and
/// S/L^2 (all three are dimensionless cube constants).
inline std::pair<Box, BoxMetrics> cube_for_ratio(const Superellipsoid3D& s) {
    const auto g = [&](double c) { return s.residual(c, c, c); };
    const double hi = std::min({s.A, s.B, s.C});
    double lo = hi * 1e-3;
    while (g(lo) >= 0.0 && lo > 1e-300) lo *= 1e-6;
    const auto rr = numerics::find_root(g, numerics::make_bracket(g, lo, hi), 1e-15);
    Box b{rr.root, rr.root, rr.root};
    return {b, BoxMetrics::of(b)};
}

enum class SymmetricAreaKind { cube_optimal, no_maximizer };

/// Surface-area classification for |x|^a + |y|^a + |z|^a = 1: above the
/// threshold 2(ln3 - ln2)/ln3 the optimum is the cube of side 2/3^{1/a};
/// below it the supremum 4/2^{2/a} is approached only at the boundary.
struct SymmetricAreaResult {
    SymmetricAreaKind kind = SymmetricAreaKind::cube_optimal;
    double threshold = 0.0;
    double side = 0.0;            // full cube side 2 * 3^{-1/alpha}
    double interior_value = 0.0;  // 4 * 3^{1 - 2/alpha}
    double boundary_value = 0.0;  // 4 * 2^{-2/alpha}
};

inline double symmetric_area_threshold() {
    return 2.0 * (std::log(3.0) - std::log(2.0)) / std::log(3.0);
}

inline SymmetricAreaResult classify_symmetric_surface_area(double alpha) {
    if (!(alpha > 0.0)) {
        throw numerics::DomainError("classify_symmetric_surface_area: alpha must be positive");
    }
    SymmetricAreaResult r;
    r.threshold = symmetric_area_threshold();
    r.side = 2.0 * std::pow(3.0, -1.0 / alpha);
    r.interior_value = 4.0 * std::pow(3.0, 1.0 - 2.0 / alpha);
    r.boundary_value = 4.0 * std::pow(2.0, -2.0 / alpha);
    r.kind = alpha >= r.threshold ? SymmetricAreaKind::cube_optimal
                                  : SymmetricAreaKind::no_maximizer;
    return r;
}

/// A twice-differentiable additive term of a surface
/// f(|x|) + g(|y|) + h(|z|) = 1.
struct C2Term {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

/// Gaussian curvature of the additive surface at an on-surface point:
/// K = (f''g''h'^2 + f''h''g'^2 + g''h''f'^2) / (f'^2 + g'^2 + h'^2)^2.
inline double gaussian_curvature(const C2Term& f, const C2Term& g, const C2Term& h, double x,
                                 double y, double z) {
    const double fx = f.d1(x), gy = g.d1(y), hz = h.d1(z);
    const double fxx = f.d2(x), gyy = g.d2(y), hzz = h.d2(z);
    const double grad2 = fx * fx + gy * gy + hz * hz;
    const double den = grad2 * grad2;
    if (den < 1e-30) throw DegenerateGradient("gaussian_curvature: vanishing gradient");
    return (fxx * gyy * hz * hz + fxx * hzz * gy * gy + gyy * hzz * fx * fx) / den;
}

}  // namespace inscribed::surfaces3d
