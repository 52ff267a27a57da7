// Catalog of laws with regularly varying tails of known index.
//
// Every family exposes its exact tail function and the log of its
// quantile; sampling happens entirely in log-domain so that even the
// slowly varying member (whose quantiles reach exp(1e9)-scale values)
// never overflows.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sumax/rng.hpp"

namespace sumax {

enum class Family { Pareto, Frechet, Burr, LogPareto };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::Pareto: return "pareto";
        case Family::Frechet: return "frechet";
        case Family::Burr: return "burr";
        case Family::LogPareto: return "logpareto";
    }
    throw std::logic_error("unknown family");
}

inline Family family_from_name(const std::string& s) {
    if (s == "pareto") return Family::Pareto;
    if (s == "frechet") return Family::Frechet;
    if (s == "burr") return Family::Burr;
    if (s == "logpareto") return Family::LogPareto;
    throw std::invalid_argument("unknown distribution family: " + s);
}

// A regularly-varying-tail law: tail index alpha (the tail is in R_{-alpha}),
// scale, and for Burr a second shape parameter. LogPareto is the slowly
// varying member: X = exp(Y) with Y Pareto(1), so tail(x) = 1/ln x and
// alpha is fixed to 0.
struct DistributionSpec {
    Family family = Family::Pareto;
    double alpha = 1.0;
    double scale = 1.0;
    double burr_c = 1.0;  // only meaningful for Burr

    void validate() const {
        if (!(alpha >= 0.0)) throw std::domain_error("alpha must be >= 0");
        if (!(scale > 0.0)) throw std::domain_error("scale must be > 0");
        if (family == Family::Burr && !(burr_c > 0.0))
            throw std::domain_error("burr c must be > 0");
        if (family == Family::LogPareto && alpha != 0.0)
            throw std::domain_error("logpareto has alpha fixed to 0");
        if (family != Family::LogPareto && !(alpha > 0.0))
            throw std::domain_error("alpha must be > 0 for this family");
    }
};

inline DistributionSpec pareto(double alpha, double scale = 1.0) {
    DistributionSpec d{Family::Pareto, alpha, scale};
    d.validate();
    return d;
}

inline DistributionSpec frechet(double alpha, double scale = 1.0) {
    DistributionSpec d{Family::Frechet, alpha, scale};
    d.validate();
    return d;
}

inline DistributionSpec burr(double alpha, double c, double scale = 1.0) {
    DistributionSpec d{Family::Burr, alpha, scale, c};
    d.validate();
    return d;
}

inline DistributionSpec log_pareto() {
    return DistributionSpec{Family::LogPareto, 0.0, 1.0};
}

// Tail evaluated at x = e^{lx}. The log-domain entry point exists because
// LogPareto quantiles overflow double well before u reaches 1e-3.
inline double tail_from_log(const DistributionSpec& d, double lx) {
    const double ls = std::log(d.scale);
    switch (d.family) {
        case Family::Pareto:
            return lx <= ls ? 1.0 : std::exp(-d.alpha * (lx - ls));
        case Family::Frechet:
            return -std::expm1(-std::exp(-d.alpha * (lx - ls)));
        case Family::Burr: {
            const double y = d.burr_c * (lx - ls);
            const double l1p = y > 36.0 ? y : std::log1p(std::exp(y));
            return std::exp(-(d.alpha / d.burr_c) * l1p);
        }
        case Family::LogPareto:
            return lx <= 1.0 ? 1.0 : 1.0 / lx;
    }
    throw std::logic_error("unknown family");
}

// Exact tail F-bar(x) = P(X > x). Arguments below the support return 1.
inline double tail(const DistributionSpec& d, double x) {
    if (!(x > 0.0)) throw std::domain_error("tail: x must be > 0");
    return tail_from_log(d, std::log(x));
}

// ln of the upper quantile: returns ln x with F-bar(x) = u, 0 < u < 1.
// Monotone decreasing in u. Kept in log-domain so LogPareto (ln x = 1/u)
// stays representable for u down to the smallest normal double.
inline double log_quantile(const DistributionSpec& d, double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("log_quantile: u must be in (0,1)");
    switch (d.family) {
        case Family::Pareto:
            return std::log(d.scale) - std::log(u) / d.alpha;
        case Family::Frechet:
            // F-bar(x) = u  <=>  (x/scale)^-alpha = -ln(1-u)
            return std::log(d.scale) - std::log(-std::log1p(-u)) / d.alpha;
        case Family::Burr:
            // u^(-c/alpha) - 1 = (x/scale)^c, via expm1 for u near 1
            return std::log(d.scale) +
                   std::log(std::expm1(-(d.burr_c / d.alpha) * std::log(u))) /
                       d.burr_c;
        case Family::LogPareto:
            return 1.0 / u;
    }
    throw std::logic_error("unknown family");
}

inline double sample_log_one(const DistributionSpec& d, SplitMixEngine& eng) {
    return log_quantile(d, eng.uniform_open());
}

// count i.i.d. draws of ln X by inverse transform.
inline std::vector<double> sample_log(const DistributionSpec& d,
                                      RngStream stream, std::size_t count) {
    if (count == 0) throw std::domain_error("sample_log: count must be >= 1");
    SplitMixEngine eng(stream);
    std::vector<double> out(count);
    for (auto& v : out) v = sample_log_one(d, eng);
    return out;
}

// E X, defined for alpha > 1 (closed form per family).
inline double mean(const DistributionSpec& d) {
    if (!(d.alpha > 1.0))
        throw std::domain_error("mean: requires alpha > 1");
    switch (d.family) {
        case Family::Pareto:
            return d.alpha * d.scale / (d.alpha - 1.0);
        case Family::Frechet:
            return d.scale * std::tgamma(1.0 - 1.0 / d.alpha);
        case Family::Burr: {
            // E X = scale * k * B(k - 1/c, 1 + 1/c), k = alpha/c
            const double k = d.alpha / d.burr_c;
            const double ic = 1.0 / d.burr_c;
            return d.scale * k *
                   std::exp(std::lgamma(k - ic) + std::lgamma(1.0 + ic) -
                            std::lgamma(k + 1.0));
        }
        case Family::LogPareto:
            break;
    }
    throw std::domain_error("mean: undefined for this family");
}

inline void to_json(nlohmann::json& j, const DistributionSpec& d) {
    j = nlohmann::json{{"family", family_name(d.family)},
                       {"alpha", d.alpha},
                       {"scale", d.scale}};
    if (d.family == Family::Burr) j["c"] = d.burr_c;
}

inline void from_json(const nlohmann::json& j, DistributionSpec& d) {
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        if (k != "family" && k != "alpha" && k != "scale" && k != "c")
            throw std::invalid_argument("DistributionSpec: unknown key '" + k + "'");
    }
    d.family = family_from_name(j.at("family").get<std::string>());
    d.alpha = j.value("alpha", d.family == Family::LogPareto ? 0.0 : 1.0);
    d.scale = j.value("scale", 1.0);
    d.burr_c = j.value("c", 1.0);
    d.validate();
}

}  // namespace sumax
