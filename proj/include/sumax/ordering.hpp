// Statistical verification of Laplace-transform stochastic order between
// two ratio populations, plus the completely-monotone / Bernstein
// functional consequences.
//
// Convention: U <=_Lt V iff LT_U(s) >= LT_V(s) for all s > 0: the
// Lt-smaller variable has the LARGER transform. label_lo names the
// hypothesized Lt-smaller population, so lt_gap = LT_lo - LT_hi should be
// nonnegative everywhere when the hypothesis holds.

#pragma once

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumax/mc_engine.hpp"
#include "sumax/phi_kernel.hpp"

namespace sumax {

enum class Verdict { Ordered, Inconclusive, Violated };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Ordered: return "ordered";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Violated: return "violated";
    }
    throw std::logic_error("unknown verdict");
}

struct FunctionalCheck {
    std::string name;      // witness, e.g. "CM 1/r" or "Bernstein r"
    double mean_lo = 0.0;  // smaller-alpha population
    double stderr_lo = 0.0;
    double mean_hi = 0.0;
    double stderr_hi = 0.0;
    bool consistent = false;  // ordering holds with CI separation
};

struct OrderingReport {
    std::string label_lo;  // hypothesized Lt-smaller (larger transform)
    std::string label_hi;
    std::vector<double> s_grid;
    std::vector<double> lt_gap;       // LT_lo - LT_hi per gridpoint
    std::vector<bool> ci_separated;
    std::vector<bool> counted;        // excluded when both transforms < 1e-4
    double confidence = 0.95;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<FunctionalCheck> functional_checks;
    // Theorem-level statements are n -> infinity; finite-n verdicts are
    // evidence, not theorems.
    std::string evidence_note = "asymptotic-regime evidence";
};

// Per-point Welch-style comparison of two transform curves on the same
// s_grid. curve_hi_transform is the hypothesized Lt-smaller population
// (its transform should be pointwise larger). Two analytic curves
// (no stderr) degenerate to exact strict comparison.
inline OrderingReport check_lt_order(const LtCurve& curve_hi_transform,
                                     const LtCurve& curve_lo_transform,
                                     double confidence = 0.95) {
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::domain_error("confidence must be in (0,1)");
    if (curve_hi_transform.s_grid != curve_lo_transform.s_grid)
        throw std::invalid_argument("check_lt_order: mismatched s grids");

    const boost::math::normal norm;
    const double zcrit = boost::math::quantile(norm, 0.5 * (1.0 + confidence));

    OrderingReport rep;
    rep.label_lo = curve_hi_transform.label;
    rep.label_hi = curve_lo_transform.label;
    rep.s_grid = curve_hi_transform.s_grid;
    rep.confidence = confidence;

    const std::size_t m = rep.s_grid.size();
    std::size_t counted = 0, separated = 0;
    bool any_negative = false, any_violation = false;
    for (std::size_t i = 0; i < m; ++i) {
        const double hi = curve_hi_transform.values[i];
        const double lo = curve_lo_transform.values[i];
        const double gap = hi - lo;
        const double se_hi =
            curve_hi_transform.has_stderr() ? curve_hi_transform.stderrs[i] : 0.0;
        const double se_lo =
            curve_lo_transform.has_stderr() ? curve_lo_transform.stderrs[i] : 0.0;
        const double se = std::sqrt(se_hi * se_hi + se_lo * se_lo);
        const bool sep = se > 0.0 ? std::fabs(gap) > zcrit * se : gap != 0.0;
        // Both transforms near zero carry no ordering information.
        const bool count = !(hi < 1e-4 && lo < 1e-4);
        rep.lt_gap.push_back(gap);
        rep.ci_separated.push_back(sep);
        rep.counted.push_back(count);
        if (gap < 0.0) {
            any_negative = true;
            if (sep) any_violation = true;
        }
        if (count) {
            ++counted;
            if (sep && gap > 0.0) ++separated;
        }
    }
    if (any_violation)
        rep.verdict = Verdict::Violated;
    else if (!any_negative && counted > 0 &&
             10 * separated >= 9 * counted)
        rep.verdict = Verdict::Ordered;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

namespace detail {

template <class G>
MomentEstimate witness_moment(const RatioSampleSet& set, const G& g) {
    double sum = 0.0, sumsq = 0.0;
    for (const double r : set.r_values) {
        const double v = g(r);
        sum += v;
        sumsq += v * v;
    }
    const double cnt = static_cast<double>(set.r_values.size());
    MomentEstimate est;
    est.mean = sum / cnt;
    const double var =
        std::max(0.0, (sumsq / cnt - est.mean * est.mean)) * cnt / (cnt - 1.0);
    est.stderr_ = std::sqrt(var / cnt);
    return est;
}

}  // namespace detail

// Functional consequences of the Lt order: completely monotone witnesses
// must have E g(R_lo) >= E g(R_hi), Bernstein witnesses the reverse.
// samples_a is the smaller-alpha (Lt-larger-transform) population.
inline std::vector<FunctionalCheck> check_functionals(
    const RatioSampleSet& samples_a, const RatioSampleSet& samples_b,
    double confidence = 0.95) {
    if (samples_a.r_values.empty() || samples_b.r_values.empty())
        throw std::invalid_argument("check_functionals: empty sample set");
    const boost::math::normal norm;
    const double zcrit = boost::math::quantile(norm, 0.5 * (1.0 + confidence));

    struct Witness {
        std::string name;
        double (*g)(double);
        bool cm;  // CM expects mean_a >= mean_b; Bernstein the reverse
    };
    const Witness witnesses[] = {
        {"CM 1/r", [](double r) { return 1.0 / r; }, true},
        {"CM exp(-r)", [](double r) { return std::exp(-r); }, true},
        {"Bernstein r", [](double r) { return r; }, false},
        {"Bernstein ln(1+r)", [](double r) { return std::log1p(r); }, false},
    };

    std::vector<FunctionalCheck> out;
    for (const auto& w : witnesses) {
        const MomentEstimate a = detail::witness_moment(samples_a, w.g);
        const MomentEstimate b = detail::witness_moment(samples_b, w.g);
        FunctionalCheck chk;
        chk.name = w.name;
        chk.mean_lo = a.mean;
        chk.stderr_lo = a.stderr_;
        chk.mean_hi = b.mean;
        chk.stderr_hi = b.stderr_;
        const double gap = w.cm ? a.mean - b.mean : b.mean - a.mean;
        const double se =
            std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
        chk.consistent = se > 0.0 ? gap > zcrit * se : gap >= 0.0;
        out.push_back(chk);
    }
    return out;
}

inline void to_json(nlohmann::json& j, const FunctionalCheck& c) {
    j = nlohmann::json{{"name", c.name},
                       {"mean_lo", c.mean_lo},
                       {"stderr_lo", c.stderr_lo},
                       {"mean_hi", c.mean_hi},
                       {"stderr_hi", c.stderr_hi},
                       {"consistent", c.consistent}};
}

inline void to_json(nlohmann::json& j, const OrderingReport& r) {
    j = nlohmann::json{{"label_lo", r.label_lo},
                       {"label_hi", r.label_hi},
                       {"s_grid", r.s_grid},
                       {"lt_gap", r.lt_gap},
                       {"ci_separated", r.ci_separated},
                       {"counted", r.counted},
                       {"confidence", r.confidence},
                       {"verdict", verdict_name(r.verdict)},
                       {"functional_checks", r.functional_checks},
                       {"note", r.evidence_note}};
}

}  // namespace sumax
