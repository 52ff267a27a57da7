// Reproducible, parallel Monte Carlo for the sum-to-maximum ratio
// R_n = S_n / M_n and derived statistics.
//
// The load-bearing trick is max-normalization in log-domain: a draw is
// R_n = sum_i exp(ln X_i - ln M_n), so the max contributes exactly 1 and
// every other term lies in (0,1]. Naive summation of LogPareto draws
// would overflow immediately.
//
// Determinism contract: replication r of sample size n always uses
// stream_for(n, r), so run() output is a pure function of the config and
// never of the worker count.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "sumax/distributions.hpp"
#include "sumax/io.hpp"
#include "sumax/phi_kernel.hpp"
#include "sumax/rng.hpp"

namespace sumax {

struct SimConfig {
    DistributionSpec spec;
    std::vector<std::uint64_t> n_ladder;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    std::vector<double> s_grid = default_s_grid();

    void validate() const {
        spec.validate();
        if (n_ladder.empty()) throw std::domain_error("n_ladder must be nonempty");
        for (std::size_t i = 1; i < n_ladder.size(); ++i)
            if (n_ladder[i] <= n_ladder[i - 1])
                throw std::domain_error("n_ladder must be strictly increasing");
        if (reps < 100)
            throw std::domain_error("reps must be >= 100 for statistical output");
    }
};

struct RatioSampleSet {
    SimConfig config;            // the config that produced this set
    std::uint64_t n = 0;
    std::vector<double> r_values;  // one R_n draw per replication, all in [1,n]
    std::uint64_t seed_used = 0;
    std::uint64_t max_tie_count = 0;  // float-rounding ties for the maximum
};

// One draw of R_n. Streaming log-sum-exp: running max m and running
// a = sum exp(l_i - m), rescaled whenever a new max arrives.
inline double draw_ratio(const DistributionSpec& spec, std::uint64_t n,
                         SplitMixEngine& eng,
                         std::uint64_t* tie_counter = nullptr) {
    double m = -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    std::uint64_t at_max = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double l = sample_log_one(spec, eng);
        if (l > m) {
            acc = acc * std::exp(m - l) + 1.0;
            m = l;
            at_max = 1;
        } else {
            if (l == m) ++at_max;
            acc += std::exp(l - m);
        }
    }
    if (tie_counter && at_max > 1) *tie_counter += at_max - 1;
    return std::min(acc, static_cast<double>(n));
}

inline double draw_ratio(const DistributionSpec& spec, std::uint64_t n,
                         RngStream stream) {
    SplitMixEngine eng(stream);
    return draw_ratio(spec, n, eng);
}

// (S_n - (n-1) mu) / M_n for alpha in (1,2), same log-domain
// normalization: R_n - (n-1) mu exp(-ln M_n).
inline double centered_ratio(const DistributionSpec& spec, std::uint64_t n,
                             SplitMixEngine& eng) {
    if (!(spec.alpha > 1.0 && spec.alpha < 2.0))
        throw std::domain_error("centered_ratio: requires alpha in (1,2)");
    const double mu = mean(spec);
    double m = -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double l = sample_log_one(spec, eng);
        if (l > m) {
            acc = acc * std::exp(m - l) + 1.0;
            m = l;
        } else {
            acc += std::exp(l - m);
        }
    }
    return acc - static_cast<double>(n - 1) * mu * std::exp(-m);
}

inline double centered_ratio(const DistributionSpec& spec, std::uint64_t n,
                             RngStream stream) {
    SplitMixEngine eng(stream);
    return centered_ratio(spec, n, eng);
}

struct MonteCarloError : std::runtime_error {
    std::uint64_t n;
    std::uint64_t reps;
    MonteCarloError(std::uint64_t n_, std::uint64_t reps_, const std::string& what_)
        : std::runtime_error("monte carlo failure at n=" + std::to_string(n_) +
                             " reps=" + std::to_string(reps_) + ": " + what_),
          n(n_), reps(reps_) {}
};

// All replications for the sample sizes in config.n_ladder, spread over
// `threads` workers (0 = hardware concurrency).
inline std::vector<RatioSampleSet> run(const SimConfig& config,
                                       unsigned threads = 0) {
    config.validate();
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<RatioSampleSet> out;
    out.reserve(config.n_ladder.size());
    for (const std::uint64_t n : config.n_ladder) {
        RatioSampleSet set;
        set.config = config;
        set.n = n;
        set.seed_used = config.seed;
        try {
            set.r_values.assign(config.reps, 0.0);
        } catch (const std::bad_alloc&) {
            throw MonteCarloError(n, config.reps, "out of memory");
        }
        std::vector<std::uint64_t> ties(threads, 0);
        std::atomic<std::uint64_t> next{0};
        auto worker = [&](unsigned tid) {
            for (;;) {
                const std::uint64_t r = next.fetch_add(1);
                if (r >= config.reps) return;
                SplitMixEngine eng(RngStream{config.seed, stream_for(n, r)});
                set.r_values[r] = draw_ratio(config.spec, n, eng, &ties[tid]);
            }
        };
        if (threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        for (const auto t : ties) set.max_tie_count += t;
        out.push_back(std::move(set));
    }
    return out;
}

// Plug-in estimator of the Laplace transform: mean of e^{-s r} with its
// standard error, per gridpoint.
inline LtCurve empirical_lt(const RatioSampleSet& samples,
                            const std::vector<double>& s_grid) {
    if (samples.r_values.size() < 100)
        throw std::domain_error("empirical_lt: need reps >= 100");
    LtCurve c;
    c.s_grid = s_grid;
    c.label = family_name(samples.config.spec.family) +
              "(alpha=" + std::to_string(samples.config.spec.alpha) +
              "),n=" + std::to_string(samples.n);
    const double reps = static_cast<double>(samples.r_values.size());
    for (const double s : s_grid) {
        double sum = 0.0;
        for (const double r : samples.r_values) sum += std::exp(-s * r);
        const double mean = sum / reps;
        double ss = 0.0;
        for (const double r : samples.r_values) {
            const double d = std::exp(-s * r) - mean;
            ss += d * d;
        }
        c.values.push_back(mean);
        c.stderrs.push_back(std::sqrt(ss / (reps - 1.0) / reps));
    }
    return c;
}

// Same estimator for Z = R - 1 (the transform of the inverse SIR).
inline LtCurve empirical_lt_Z(const RatioSampleSet& samples,
                              const std::vector<double>& s_grid) {
    if (samples.r_values.size() < 100)
        throw std::domain_error("empirical_lt_Z: need reps >= 100");
    LtCurve c;
    c.s_grid = s_grid;
    c.label = "Z," + family_name(samples.config.spec.family) +
              "(alpha=" + std::to_string(samples.config.spec.alpha) +
              "),n=" + std::to_string(samples.n);
    const double reps = static_cast<double>(samples.r_values.size());
    for (const double s : s_grid) {
        double sum = 0.0;
        for (const double r : samples.r_values) sum += std::exp(-s * (r - 1.0));
        const double mean = sum / reps;
        double ss = 0.0;
        for (const double r : samples.r_values) {
            const double d = std::exp(-s * (r - 1.0)) - mean;
            ss += d * d;
        }
        c.values.push_back(mean);
        c.stderrs.push_back(std::sqrt(ss / (reps - 1.0) / reps));
    }
    return c;
}

enum class MomentKind { Identity, Reciprocal, Log1pReciprocalOfZ };

struct MomentEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t exclusions = 0;  // r == 1 draws dropped by the Shannon functional
};

// Mean of g(r) with g in {r, 1/r, log(1 + 1/(r-1))}. The Shannon
// functional maps r = 1 to +inf; such draws are excluded and counted
// (P(R = 1) = 0 in the alpha > 0 limit).
inline MomentEstimate empirical_moment(const RatioSampleSet& samples,
                                       MomentKind g) {
    if (samples.r_values.size() < 100)
        throw std::domain_error("empirical_moment: need reps >= 100");
    double sum = 0.0, sumsq = 0.0;
    std::uint64_t count = 0, excluded = 0;
    for (const double r : samples.r_values) {
        double v;
        switch (g) {
            case MomentKind::Identity: v = r; break;
            case MomentKind::Reciprocal: v = 1.0 / r; break;
            case MomentKind::Log1pReciprocalOfZ:
                if (r == 1.0) { ++excluded; continue; }
                // log(1 + 1/(r-1)) = ln r - ln(r-1)
                v = std::log(r) - std::log(r - 1.0);
                break;
            default: throw std::logic_error("unknown moment kind");
        }
        sum += v;
        sumsq += v * v;
        ++count;
    }
    MomentEstimate est;
    est.exclusions = excluded;
    if (count == 0) return est;
    const double cnt = static_cast<double>(count);
    est.mean = sum / cnt;
    const double var =
        std::max(0.0, (sumsq / cnt - est.mean * est.mean)) * cnt / (cnt - 1.0);
    est.stderr_ = std::sqrt(var / cnt);
    return est;
}

// E M_n for Pareto(alpha, scale), alpha > 1: scale * n * B(n, 1 - 1/alpha).
inline double pareto_max_mean(std::uint64_t n, double alpha, double scale = 1.0) {
    if (!(alpha > 1.0)) throw std::domain_error("pareto_max_mean: alpha > 1");
    const double a = static_cast<double>(n);
    const double b = 1.0 - 1.0 / alpha;
    return scale * a *
           std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline double pareto_sum_mean(std::uint64_t n, double alpha, double scale = 1.0) {
    if (!(alpha > 1.0)) throw std::domain_error("pareto_sum_mean: alpha > 1");
    return static_cast<double>(n) * scale * alpha / (alpha - 1.0);
}

// CSV "rep,r_value" plus a JSON sidecar carrying config and seed.
inline std::string sample_set_csv(const RatioSampleSet& set) {
    std::ostringstream out;
    out << "rep,r_value\n";
    for (std::size_t i = 0; i < set.r_values.size(); ++i)
        out << i << ',' << format_double(set.r_values[i]) << '\n';
    return out.str();
}

inline nlohmann::json sample_set_sidecar(const RatioSampleSet& set) {
    return nlohmann::json{{"spec", set.config.spec},
                          {"n", set.n},
                          {"reps", set.r_values.size()},
                          {"seed", set.seed_used},
                          {"max_tie_count", set.max_tie_count}};
}

inline RatioSampleSet sample_set_from_csv(const std::string& csv,
                                          const nlohmann::json& sidecar) {
    RatioSampleSet set;
    set.config.spec = sidecar.at("spec").get<DistributionSpec>();
    set.n = sidecar.at("n").get<std::uint64_t>();
    set.seed_used = sidecar.at("seed").get<std::uint64_t>();
    set.config.seed = set.seed_used;
    set.config.n_ladder = {set.n};
    set.config.reps = sidecar.at("reps").get<std::uint64_t>();
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line.rfind("rep,r_value", 0) != 0)
        throw IoError("sample csv: bad header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError("sample csv: bad row");
        set.r_values.push_back(std::stod(line.substr(comma + 1)));
    }
    return set;
}

}  // namespace sumax
