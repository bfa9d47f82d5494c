#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace inscribed::numerics {

struct NoSignChange : std::runtime_error {
    explicit NoSignChange(const std::string& what) : std::runtime_error(what) {}
};

struct MaxIterations : std::runtime_error {
    explicit MaxIterations(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateLeadingCoefficient : std::runtime_error {
    explicit DegenerateLeadingCoefficient(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A sign-change interval [lo, hi] with cached endpoint values.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;

    bool valid() const {
        if (!(lo < hi)) return false;
        if (f_lo == 0.0 || f_hi == 0.0) return true;
        return (f_lo < 0.0) != (f_hi < 0.0);
    }
};

template <class F>
Bracket make_bracket(F&& f, double lo, double hi) {
    return Bracket{lo, hi, f(lo), f(hi)};
}

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Bisection with a secant acceleration. The secant step is accepted only
/// while it stays strictly inside the bracket and the bracket width keeps
/// halving at least every other iteration; otherwise the step is a plain
/// bisection. Deterministic for identical inputs.
template <class F>
RootResult find_root(F&& f, const Bracket& bracket, double atol = 1e-12) {
    if (!(bracket.lo < bracket.hi)) {
        throw NoSignChange("find_root: bracket endpoints out of order");
    }
    if (bracket.f_lo == 0.0) return RootResult{bracket.lo, 0.0, 0, true};
    if (bracket.f_hi == 0.0) return RootResult{bracket.hi, 0.0, 0, true};
    if ((bracket.f_lo < 0.0) == (bracket.f_hi < 0.0)) {
        throw NoSignChange("find_root: no sign change over bracket");
    }

    double a = bracket.lo, fa = bracket.f_lo;
    double b = bracket.hi, fb = bracket.f_hi;
    // Width from two iterations ago; the secant step must keep up with
    // bisection against this reference or it gets overridden.
    double w2 = 4.0 * (b - a);
    double w1 = 2.0 * (b - a);

    constexpr int kMaxIter = 200;
    for (int it = 1; it <= kMaxIter; ++it) {
        const double w = b - a;
        if (w <= atol) {
            const bool pick_lo = std::abs(fa) <= std::abs(fb);
            return RootResult{pick_lo ? a : b, pick_lo ? fa : fb, it - 1, true};
        }

        double x = a + 0.5 * w;
        if (fb != fa && w <= 0.5 * w2) {
            const double s = a - fa * (b - a) / (fb - fa);
            if (s > a && s < b) x = s;
        }
        const double fx = f(x);
        if (std::abs(fx) <= atol) return RootResult{x, fx, it, true};

        if ((fx < 0.0) == (fa < 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        w2 = w1;
        w1 = w;
    }
    throw MaxIterations("find_root: not converged within 200 iterations");
}

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, each distinct root listed once,
/// ascending. Closed form (Cardano / trigonometric) plus one Newton polish.
struct CubicRealRoots {
    std::array<double, 4> coefficients{};  // c3, c2, c1, c0
    std::vector<double> roots;

    double eval(double x) const {
        return ((coefficients[0] * x + coefficients[1]) * x + coefficients[2]) * x +
               coefficients[3];
    }
    double deriv(double x) const {
        return (3.0 * coefficients[0] * x + 2.0 * coefficients[1]) * x + coefficients[2];
    }
};

inline CubicRealRoots solve_cubic_real(double c3, double c2, double c1, double c0) {
    if (c3 == 0.0) {
        throw DegenerateLeadingCoefficient("solve_cubic_real: leading coefficient is zero");
    }
    CubicRealRoots out;
    out.coefficients = {c3, c2, c1, c0};

    // Depressed cubic t^3 + p t + q with x = t - b/3.
    const double b = c2 / c3;
    const double c = c1 / c3;
    const double d = c0 / c3;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;

    const double half_q = 0.5 * q;
    const double third_p = p / 3.0;
    const double disc = half_q * half_q + third_p * third_p * third_p;
    const double disc_scale = half_q * half_q + std::abs(third_p * third_p * third_p);

    std::vector<double> roots;
    if (std::abs(disc) <= 1e-14 * std::max(disc_scale, 1e-300)) {
        if (std::abs(p) <= 1e-14 * std::max(1.0, b * b)) {
            roots = {shift};  // triple root
        } else {
            const double simple = 3.0 * q / p;
            const double twice = -1.5 * q / p;
            roots = {simple + shift, twice + shift};
        }
    } else if (disc > 0.0) {
        const double r = std::sqrt(disc);
        const double u = std::cbrt(-half_q + r);
        const double v = std::cbrt(-half_q - r);
        roots = {u + v + shift};
    } else {
        // Three distinct real roots; p < 0 here.
        const double m = 2.0 * std::sqrt(-third_p);
        const double arg = std::clamp(3.0 * q / (third_p * m * 3.0), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        constexpr double kTwoPiThird = 2.0 * std::numbers::pi / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos(theta - kTwoPiThird * k) + shift);
        }
    }

    for (double& r : roots) {
        for (int step = 0; step < 2; ++step) {
            const double fr = out.eval(r);
            const double dr = out.deriv(r);
            if (dr == 0.0) break;
            const double delta = fr / dr;
            if (!std::isfinite(delta) || std::abs(delta) > 0.5 * (1.0 + std::abs(r))) break;
            r -= delta;
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) {
                                return std::abs(x - y) <=
                                       1e-12 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
                            }),
                roots.end());
    out.roots = std::move(roots);
    return out;
}

/// Gamma via the Lanczos approximation (g = 7, 9 terms) with reflection for
/// x < 1/2. Relative error stays well under 1e-12 on [1e-3, 50].
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
    constexpr double kG = 7.0;
    constexpr std::array<double, 9> kCoef = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    double a = kCoef[0];
    for (std::size_t i = 1; i < kCoef.size(); ++i) {
        a += kCoef[i] / (z + static_cast<double>(i));
    }
    const double t = z + kG + 0.5;
    constexpr double kSqrtTwoPi = 2.5066282746310002;
    return kSqrtTwoPi * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

inline double beta_fn(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0)) throw DomainError("beta_fn: arguments must be positive");
    if (p + q < 170.0) {
        return gamma_fn(p) * gamma_fn(q) / gamma_fn(p + q);
    }
    return std::exp(std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q));
}

}  // namespace inscribed::numerics
