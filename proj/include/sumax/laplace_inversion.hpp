// Gaver-Stehfest recovery of the limit CDF of R (0 < alpha < 1) from its
// Laplace transform, for direct comparison with empirical CDFs.
//
// The inversion runs on the shifted variable Z = R - 1: the transform of
// Z's CDF is 1/(s (1 + phi_alpha(s))) and F_R(x) = F_Z(x - 1). Working on
// the Z scale keeps the nonsmooth point of the CDF at the left edge of
// the grid, where Stehfest behaves far better than across an interior
// jump.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumax/io.hpp"
#include "sumax/phi_kernel.hpp"

namespace sumax {

struct CdfCurve {
    std::vector<double> x_grid;   // increasing, >= 1
    std::vector<double> probs;    // nondecreasing, in [0,1]
    int method_order = 14;
    double max_violation = 0.0;   // worst pre-clamp monotonicity/range breach
    bool unstable = false;        // violation > 0.05
    std::string warning;
};

// Stehfest weights zeta_k for even order N. Double precision is adequate
// up to N = 14; higher orders need extended precision.
inline std::vector<double> stehfest_coefficients(int order) {
    if (order < 2 || order % 2 != 0 || order > 18)
        throw std::domain_error("stehfest order must be even, in [2,18]");
    const int half = order / 2;
    auto fact = [](int m) {
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    std::vector<double> zeta(order);
    for (int k = 1; k <= order; ++k) {
        double sum = 0.0;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            sum += std::pow(static_cast<double>(j), half) * fact(2 * j) /
                   (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) *
                    fact(2 * j - k));
        }
        zeta[k - 1] = ((k + half) % 2 == 0 ? 1.0 : -1.0) * sum;
    }
    return zeta;
}

// 200 log-spaced points on [1.001, 50]; the CDF is identically 0 below 1.
inline std::vector<double> default_x_grid() {
    return log_spaced(1.001, 50.0, 200);
}

// CDF of the limit of R_n at each x in x_grid.
inline CdfCurve invert_cdf(double alpha, const std::vector<double>& x_grid,
                           int order = 14) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("invert_cdf: alpha must be in (0,1)");
    for (const double x : x_grid)
        if (!(x >= 1.0)) throw std::domain_error("invert_cdf: x_grid must be >= 1");
    const std::vector<double> zeta = stehfest_coefficients(order);
    const double ln2 = std::log(2.0);

    CdfCurve c;
    c.x_grid = x_grid;
    c.method_order = order;
    c.probs.reserve(x_grid.size());
    std::vector<double> raw(x_grid.size(), 0.0);
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double z = x_grid[i] - 1.0;
        if (z <= 0.0) { raw[i] = 0.0; continue; }
        double f = 0.0;
        for (int k = 1; k <= order; ++k) {
            const double s = static_cast<double>(k) * ln2 / z;
            f += zeta[k - 1] * lt_limit_Z(alpha, s) / s;
        }
        raw[i] = f * ln2 / z;
    }
    // Clamp to [0,1] and enforce monotonicity, recording the worst breach.
    double prev = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        double v = raw[i];
        c.max_violation = std::max({c.max_violation, -v, v - 1.0, prev - v});
        v = std::clamp(v, 0.0, 1.0);
        v = std::max(v, prev);
        c.probs.push_back(v);
        prev = v;
    }
    if (c.max_violation > 0.05) {
        c.unstable = true;
        std::ostringstream w;
        w << "inversion instability: pre-clamp violation " << c.max_violation
          << " at order " << order;
        c.warning = w.str();
    }
    return c;
}

// Mean of the inverted law by integrating 1 - F (trapezoid on the grid),
// plus the mass below the first gridpoint counted as lying at 1.
inline double mean_from_cdf(const CdfCurve& c) {
    double m = c.x_grid.front();
    for (std::size_t i = 1; i < c.x_grid.size(); ++i)
        m += 0.5 * (2.0 - c.probs[i - 1] - c.probs[i]) *
             (c.x_grid[i] - c.x_grid[i - 1]);
    return m;
}

// E e^{-sX} over the inverted curve (midpoint Stieltjes sum); used by the
// round-trip check against lt_limit_R.
inline double lt_from_cdf(const CdfCurve& c, double s) {
    double lt = std::exp(-s * c.x_grid.front()) * c.probs.front();
    for (std::size_t i = 1; i < c.x_grid.size(); ++i)
        lt += std::exp(-s * 0.5 * (c.x_grid[i - 1] + c.x_grid[i])) *
              (c.probs[i] - c.probs[i - 1]);
    return lt;
}

inline std::string cdf_curve_csv(const CdfCurve& c) {
    std::ostringstream out;
    out << "x,prob\n";
    for (std::size_t i = 0; i < c.x_grid.size(); ++i)
        out << format_double(c.x_grid[i]) << ',' << format_double(c.probs[i])
            << '\n';
    return out.str();
}

}  // namespace sumax
