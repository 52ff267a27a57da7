// The kernel phi_alpha(s) = alpha * int_0^1 (1 - e^{-st}) t^{-1-alpha} dt
// and the limit Laplace transforms built from it:
//
//   LT_R(s) = e^{-s} / (1 + phi_alpha(s))      (limit of S_n/M_n)
//   LT_Z(s) = 1 / (1 + phi_alpha(s))           (limit of R - 1)
//
// The integral is finite iff alpha < 1; for alpha >= 1 the value is +inf
// and both transforms are 0, the convention consistent with M_n/S_n -> 0
// in that regime.

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumax {

enum class PhiMethod { Series, Quadrature, Infinite };

struct PhiValue {
    double value = 0.0;
    PhiMethod method = PhiMethod::Series;
    double abs_error_bound = 0.0;
};

namespace detail {

// Alternating series alpha * sum_k (-1)^{k+1} s^k / (k! (k - alpha)).
// Valid for 0 < alpha < 1. The error after truncation is bounded by the
// first omitted term once the terms decrease (k > s). Returns nullopt if
// the largest term grows past 1e12, where cancellation would eat the
// 1e-10 accuracy target.
inline std::optional<PhiValue> phi_series(double alpha, double s) {
    double pow_term = 1.0;  // s^k / k!
    double sum = 0.0, comp = 0.0;  // Kahan
    double max_term = 0.0;
    for (int k = 1; k < 400; ++k) {
        pow_term *= s / k;
        if (pow_term > 1e12) return std::nullopt;
        max_term = std::max(max_term, pow_term);
        const double term =
            (k % 2 ? pow_term : -pow_term) / (static_cast<double>(k) - alpha);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (k > s && pow_term * s / ((k + 1 - alpha) * (k + 1)) < 1e-16) {
            // truncation (first omitted term) + rounding of the largest term
            const double bound =
                alpha * pow_term * s / ((k + 1 - alpha) * (k + 1)) +
                max_term * 1e-14 + 1e-15;
            if (bound > 1e-10) return std::nullopt;  // cancellation too large
            return PhiValue{alpha * sum, PhiMethod::Series, bound};
        }
    }
    return std::nullopt;
}

// Adaptive Simpson on [a,b] for f, absolute tolerance tol.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || !(std::fabs(err) >= 15.0 * tol))
        return left + right + err / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double tol) {
    // 16 seed panels keep each recursion shallow
    const int seed = 16;
    double total = 0.0;
    for (int p = 0; p < seed; ++p) {
        const double pa = a + (b - a) * p / seed;
        const double pb = a + (b - a) * (p + 1) / seed;
        const double m = 0.5 * (pa + pb);
        const double fa = f(pa), fm = f(m), fb = f(pb);
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(f, pa, pb, fa, fm, fb, whole, tol / seed, 24);
    }
    return total;
}

// Quadrature route. Substituting t = e^{-w} turns the singular integrand
// into g(w) = (1 - exp(-s e^{-w})) e^{alpha w}, which decays like
// s e^{-(1-alpha) w} for w > ln s. Panels split at w = max(0, ln s),
// i.e. t = min(1, 1/s).
inline PhiValue phi_quadrature(double alpha, double s) {
    const auto g = [alpha, s](double w) {
        const double x = s * std::exp(-w);
        // x underflow would give 0 * inf = NaN through the exact form;
        // the two-term expansion keeps the relative error below x^2/6
        if (x < 1e-8) return s * std::exp((alpha - 1.0) * w) * (1.0 - 0.5 * x);
        return -std::expm1(-x) * std::exp(alpha * w);
    };
    const double w_split = std::max(0.0, std::log(s));
    const double w_max =
        (std::log(std::max(s, 1.0)) + 45.0) / (1.0 - alpha);
    double v = 0.0;
    if (w_split > 0.0) v += integrate(g, 0.0, w_split, 1e-12);
    v += integrate(g, w_split, w_max, 1e-12);
    // Truncated mass beyond w_max is below s * e^{-(1-alpha) w_max} / (1-alpha).
    return PhiValue{alpha * v, PhiMethod::Quadrature, 1e-10};
}

}  // namespace detail

// phi_alpha(s). Series for small/moderate s, adaptive quadrature when the
// series terms would exceed 1e12 or s > 30; +inf for alpha >= 1.
inline PhiValue phi(double alpha, double s) {
    if (!(alpha >= 0.0)) throw std::domain_error("phi: alpha must be >= 0");
    if (!(s > 0.0)) throw std::domain_error("phi: s must be > 0");
    if (alpha == 0.0) return PhiValue{0.0, PhiMethod::Series, 0.0};
    if (alpha >= 1.0)
        return PhiValue{std::numeric_limits<double>::infinity(),
                        PhiMethod::Infinite, 0.0};
    if (s <= 30.0) {
        if (auto r = detail::phi_series(alpha, s)) return *r;
    }
    return detail::phi_quadrature(alpha, s);
}

// e^{-s} / (1 + phi_alpha(s)); 0 when phi is infinite.
inline double lt_limit_R(double alpha, double s) {
    const PhiValue p = phi(alpha, s);
    if (p.method == PhiMethod::Infinite) return 0.0;
    return std::exp(-s) / (1.0 + p.value);
}

// 1 / (1 + phi_alpha(s)); 0 when phi is infinite.
inline double lt_limit_Z(double alpha, double s) {
    const PhiValue p = phi(alpha, s);
    if (p.method == PhiMethod::Infinite) return 0.0;
    return 1.0 / (1.0 + p.value);
}

// Limit of E(S_n/M_n) = 1/(1 - alpha), alpha in [0,1).
inline double limit_mean_R(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::domain_error("limit_mean_R: alpha must be in [0,1)");
    return 1.0 / (1.0 - alpha);
}

// A Laplace transform sampled on a grid of real s-values; empirical
// curves carry per-point standard errors.
struct LtCurve {
    std::vector<double> s_grid;
    std::vector<double> values;
    std::vector<double> stderrs;  // empty for analytic curves
    std::string label;

    bool has_stderr() const { return !stderrs.empty(); }
};

inline std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    std::vector<double> g(count);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                  static_cast<double>(count - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

// 40 log-spaced points on [0.05, 20]: small s carries the mean
// information, large s the near-max behavior.
inline std::vector<double> default_s_grid() { return log_spaced(0.05, 20.0, 40); }

inline LtCurve analytic_lt_curve_R(double alpha, std::vector<double> s_grid,
                                   std::string label = "") {
    LtCurve c;
    c.s_grid = std::move(s_grid);
    c.values.reserve(c.s_grid.size());
    for (double s : c.s_grid) c.values.push_back(lt_limit_R(alpha, s));
    c.label = label.empty() ? "lt_R(alpha=" + std::to_string(alpha) + ")"
                            : std::move(label);
    return c;
}

inline LtCurve analytic_lt_curve_Z(double alpha, std::vector<double> s_grid,
                                   std::string label = "") {
    LtCurve c;
    c.s_grid = std::move(s_grid);
    c.values.reserve(c.s_grid.size());
    for (double s : c.s_grid) c.values.push_back(lt_limit_Z(alpha, s));
    c.label = label.empty() ? "lt_Z(alpha=" + std::to_string(alpha) + ")"
                            : std::move(label);
    return c;
}

}  // namespace sumax
