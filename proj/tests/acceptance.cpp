// Acceptance suite: one pass/fail line per criterion.
//
// The Monte Carlo workload is heavy (nine Pareto sample sets at n = 1e6,
// 1e4 replications each); all criteria share those sets, generated once
// with a common seed so that cross-alpha comparisons use common random
// numbers, exactly as alpha_sweep does.
//
// Usage: acceptance [--cli PATH] [--scale K]
//   --cli    path to the sumax binary (criterion 11); skipped if absent
//   --scale  divide reps by K for a quick smoke run, not the official gate

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sumax/distributions.hpp"
#include "sumax/io.hpp"
#include "sumax/laplace_inversion.hpp"
#include "sumax/mc_engine.hpp"
#include "sumax/ordering.hpp"
#include "sumax/phi_kernel.hpp"
#include "sumax/sir_analysis.hpp"

using namespace sumax;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Independent oracle for phi: composite Gauss-Legendre (20 point) over
// geometric panels plus analytic head, as in the unit tests but with its
// own smaller rule so the two oracles are not byte-identical.
double phi_oracle(double alpha, double s) {
    static const double xs[] = {
        0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
        0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
        0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
        0.9931285991850949};
    static const double ws[] = {
        0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
        0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
        0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
        0.0176140071391521};
    if (alpha == 0.0) return 0.0;
    const double eps = 1e-7;
    double integral = s * std::pow(eps, 1.0 - alpha) / (1.0 - alpha) -
                      s * s * std::pow(eps, 2.0 - alpha) / (2.0 * (2.0 - alpha));
    double lo = eps;
    while (lo < 1.0 - 1e-15) {
        const double hi = std::min(1.0, lo * std::pow(10.0, 0.0625));
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        double sum = 0.0;
        for (int i = 0; i < 10; ++i)
            for (const double sign : {-1.0, 1.0}) {
                const double t = c + sign * h * xs[i];
                sum += ws[i] * (-std::expm1(-s * t)) * std::pow(t, -1.0 - alpha);
            }
        integral += sum * h;
        lo = hi;
    }
    return alpha * integral;
}

double ks_against_cdf(std::vector<double> samples, const CdfCurve& curve) {
    std::sort(samples.begin(), samples.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < curve.x_grid.size(); ++i) {
        const auto it = std::upper_bound(samples.begin(), samples.end(),
                                         curve.x_grid[i]);
        const double emp = static_cast<double>(it - samples.begin()) /
                           static_cast<double>(samples.size());
        ks = std::max(ks, std::fabs(emp - curve.probs[i]));
    }
    return ks;
}

struct Args {
    std::string cli;
    std::uint64_t scale = 1;
};

Args parse_args(int argc, char** argv) {
    Args a;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) a.cli = argv[++i];
        else if (arg == "--scale" && i + 1 < argc)
            a.scale = std::strtoull(argv[++i], nullptr, 10);
    }
    if (a.scale == 0) a.scale = 1;
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    const Args args = parse_args(argc, argv);
    if (args.scale != 1)
        std::printf("NOTE: running at 1/%llu scale: results are a smoke run, "
                    "not the acceptance gate\n",
                    static_cast<unsigned long long>(args.scale));

    const std::uint64_t big_reps = 10000 / args.scale;
    const std::uint64_t lp_reps = 2000 / std::min<std::uint64_t>(args.scale, 20);
    const std::uint64_t big_n = 1000000;
    const std::uint64_t kBigSeed = 20240817;
    const std::uint64_t kLpSeed = 3;
    const auto s_grid = default_s_grid();

    // ---------------------------------------------------------------
    // Criterion 1: phi correctness (and runtime < 1 s)
    {
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = std::fabs(phi(0.5, 1.0).value - phi_oracle(0.5, 1.0)) < 1e-6;
        double worst = 0.0;
        for (const double a : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9})
            for (const double s : {0.01, 0.1, 1.0, 5.0, 10.0}) {
                const auto series = detail::phi_series(a, s);
                const auto quad = detail::phi_quadrature(a, s);
                if (!series) { ok = false; continue; }
                worst = std::max(worst, std::fabs(series->value - quad.value));
            }
        ok = ok && worst <= 1e-10;
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        ok = ok && secs < 1.0;
        report(1, ok,
               "phi(0.5,1)=" + fmt(phi(0.5, 1.0).value) +
                   " vs oracle " + fmt(phi_oracle(0.5, 1.0)) +
                   "; series-vs-quadrature worst gap " + fmt(worst) +
                   "; runtime " + fmt(secs) + " s");
    }

    // ---------------------------------------------------------------
    // LogPareto ladder, shared by criteria 2 and 8
    std::vector<double> lp_means, lp_fracs;
    {
        SimConfig cfg;
        cfg.spec = log_pareto();
        cfg.n_ladder = {1000, 10000, 100000};
        cfg.reps = lp_reps;
        cfg.seed = kLpSeed;
        for (const auto& set : run(cfg, 0)) {
            double sum = 0.0;
            std::size_t hits = 0;
            for (const double r : set.r_values) {
                sum += r;
                hits += (std::fabs(r - 1.0) > 0.1);
            }
            lp_means.push_back(sum / static_cast<double>(set.r_values.size()));
            lp_fracs.push_back(static_cast<double>(hits) /
                               static_cast<double>(set.r_values.size()));
        }
    }

    // Criterion 2: Darling limit: mean R_n decreases toward 1, < 1.2 at 1e5
    {
        const bool mono = lp_means[0] > lp_means[1] && lp_means[1] > lp_means[2];
        const bool close = lp_means[2] < 1.2;
        report(2, mono && close,
               "LogPareto mean R_n ladder: " + fmt(lp_means[0]) + " > " +
                   fmt(lp_means[1]) + " > " + fmt(lp_means[2]) + " (limit 1)");
    }

    // ---------------------------------------------------------------
    // Shared Pareto sample sets at n = 1e6, common seed (common random
    // numbers across alphas). alpha = 0.5 also carries the smaller-n
    // rungs used for trend reporting.
    std::map<double, RatioSampleSet> big;        // alpha -> set at n = 1e6
    std::vector<RatioSampleSet> ladder05;        // alpha = 0.5, {1e3,1e5,1e6}
    {
        const double alphas[] = {0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.75, 0.8};
        for (const double a : alphas) {
            SimConfig cfg;
            cfg.spec = pareto(a);
            cfg.reps = big_reps;
            cfg.seed = kBigSeed;
            cfg.s_grid = s_grid;
            if (a == 0.5)
                cfg.n_ladder = {1000, 100000, big_n};
            else
                cfg.n_ladder = {big_n};
            auto sets = run(cfg, 0);
            big[a] = sets.back();
            if (a == 0.5) ladder05 = std::move(sets);
            std::fprintf(stderr, "  [setup] alpha=%.2f done\n", a);
        }
    }

    // Criterion 3: Bingham mean (1-alpha)^-1 within 5% at n = 1e6
    {
        bool ok = true;
        std::ostringstream detail;
        for (const double a : {0.25, 0.5, 0.75}) {
            const auto est = empirical_moment(big[a], MomentKind::Identity);
            const double target = 1.0 / (1.0 - a);
            const double rel = std::fabs(est.mean - target) / target;
            ok = ok && rel < 0.05;
            detail << "alpha=" << a << ": " << fmt(est.mean) << " vs "
                   << fmt(target) << " (" << fmt(100.0 * rel) << "%) ";
        }
        report(3, ok, detail.str());
    }

    // Criterion 4: Lemma-limit transform, sup gap <= max(0.01, 4 stderr)
    {
        bool ok = true;
        double sup = 0.0;
        const LtCurve emp = empirical_lt(big[0.5], s_grid);
        for (std::size_t i = 0; i < s_grid.size(); ++i) {
            const double gap = std::fabs(emp.values[i] - lt_limit_R(0.5, s_grid[i]));
            sup = std::max(sup, gap);
            if (gap > std::max(0.01, 4.0 * emp.stderrs[i])) ok = false;
        }
        // trend along the alpha = 0.5 ladder, reported as supporting evidence
        std::ostringstream trend;
        for (const auto& set : ladder05) {
            const LtCurve e = empirical_lt(set, s_grid);
            double s = 0.0;
            for (std::size_t i = 0; i < s_grid.size(); ++i)
                s = std::max(s, std::fabs(e.values[i] - lt_limit_R(0.5, s_grid[i])));
            trend << "n=" << set.n << ":" << fmt(s) << " ";
        }
        report(4, ok,
               "sup|empirical - analytic| = " + fmt(sup) +
                   " at n=1e6; ladder " + trend.str());
    }

    // Criterion 5: transform ordering, analytic (exact) and empirical
    {
        bool analytic_ok = true;
        const double alphas[] = {0.0, 0.25, 0.5, 0.75};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                for (const double s : s_grid)
                    if (!(lt_limit_R(alphas[i], s) > lt_limit_R(alphas[j], s)))
                        analytic_ok = false;
        const LtCurve c03 = empirical_lt(big[0.3], s_grid);
        const LtCurve c07 = empirical_lt(big[0.7], s_grid);
        const Verdict fwd = check_lt_order(c03, c07, 0.95).verdict;
        const Verdict swp = check_lt_order(c07, c03, 0.95).verdict;
        const bool ok =
            analytic_ok && fwd == Verdict::Ordered && swp == Verdict::Violated;
        report(5, ok,
               std::string("analytic strict ordering ") +
                   (analytic_ok ? "holds" : "fails") + "; empirical 0.3 vs 0.7: " +
                   verdict_name(fwd) + ", swapped: " + verdict_name(swp));
    }

    // Criterion 6: CM/Bernstein mean orderings on 0.2 vs 0.8
    {
        const auto checks = check_functionals(big[0.2], big[0.8], 0.95);
        const auto& recip = checks[0];    // CM 1/r
        const auto& ident = checks[2];    // Bernstein r
        const double t02 = 1.25, t08 = 5.0;
        const bool near = std::fabs(ident.mean_lo - t02) / t02 < 0.05 &&
                          std::fabs(ident.mean_hi - t08) / t08 < 0.05;
        const bool ok = recip.consistent && ident.consistent && near;
        report(6, ok,
               "E[1/R]: " + fmt(recip.mean_lo) + " > " + fmt(recip.mean_hi) +
                   (recip.consistent ? " (separated)" : " (NOT separated)") +
                   "; E[R]: " + fmt(ident.mean_lo) + " < " + fmt(ident.mean_hi) +
                   " vs analytic 1.25 / 5");
    }

    // Criterion 7: SIR sweep and the transform of Z
    {
        std::vector<SirReport> sweep;
        for (const double a : {0.2, 0.4, 0.6, 0.8})
            sweep.push_back(sir_report(big[a], s_grid));
        bool decreasing = true;
        std::ostringstream caps;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            if (i > 0 && !(sweep[i].mean_capacity < sweep[i - 1].mean_capacity))
                decreasing = false;
            caps << fmt(sweep[i].mean_capacity) << " ";
        }
        const LtCurve ltz = empirical_lt_Z(big[0.5], {1.0});
        const double target = lt_limit_Z(0.5, 1.0);
        const bool z_ok = std::fabs(ltz.values[0] - target) <= 4.0 * ltz.stderrs[0];
        report(7, decreasing && z_ok,
               "mean capacity by alpha: " + caps.str() + "; LT_Z(1)=" +
                   fmt(ltz.values[0]) + " vs " + fmt(target) + " (4se=" +
                   fmt(4.0 * ltz.stderrs[0]) + ")");
    }

    // Criterion 8: Maller in-probability trend for LogPareto
    {
        const bool ok = lp_fracs[0] > lp_fracs[1] && lp_fracs[1] > lp_fracs[2];
        report(8, ok,
               "P(|R-1| > 0.1) ladder: " + fmt(lp_fracs[0]) + " > " +
                   fmt(lp_fracs[1]) + " > " + fmt(lp_fracs[2]));
    }

    // Criterion 9: alpha > 1 regime: vanishing max share, Downey identity
    {
        SimConfig cfg;
        cfg.spec = pareto(2.0);
        cfg.n_ladder = {1000, 10000, 100000};
        cfg.reps = lp_reps;
        cfg.seed = 5;
        std::vector<double> medians;
        for (const auto& set : run(cfg, 0)) {
            std::vector<double> ms;
            ms.reserve(set.r_values.size());
            for (const double r : set.r_values) ms.push_back(1.0 / r);
            const auto mid = ms.begin() + static_cast<std::ptrdiff_t>(ms.size() / 2);
            std::nth_element(ms.begin(), mid, ms.end());
            medians.push_back(*mid);
        }
        const bool mono = medians[0] > medians[1] && medians[1] > medians[2];

        SimConfig dcfg;
        dcfg.spec = pareto(3.0);
        dcfg.n_ladder = {100000};
        dcfg.reps = 4000 / std::min<std::uint64_t>(args.scale, 8);
        dcfg.seed = 8;
        const auto dset = run(dcfg, 0)[0];
        const double ratio =
            empirical_moment(dset, MomentKind::Reciprocal).mean *
            pareto_sum_mean(100000, 3.0) / pareto_max_mean(100000, 3.0);
        const bool downey = ratio >= 0.95 && ratio <= 1.05;
        report(9, mono && downey,
               "median M/S ladder: " + fmt(medians[0]) + " > " + fmt(medians[1]) +
                   " > " + fmt(medians[2]) + "; Downey ratio " + fmt(ratio));
    }

    // Criterion 10: Stehfest inversion vs Monte Carlo and the mean identity
    {
        const CdfCurve inv = invert_cdf(0.5, default_x_grid(), 14);
        const double ks = ks_against_cdf(big[0.5].r_values, inv);
        const double m = mean_from_cdf(inv);
        const bool ok = ks < 0.02 && std::fabs(m - 2.0) / 2.0 < 0.02;
        report(10, ok,
               "KS(inverted, empirical) = " + fmt(ks) + "; mean from curve " +
                   fmt(m) + " vs 2");
    }

    // Criterion 11: thread count never changes output bytes
    if (args.cli.empty()) {
        report(11, false, "no --cli path given; cannot exercise the binary");
    } else {
        namespace fs = std::filesystem;
        const fs::path work = fs::temp_directory_path() / "sumax_accept11";
        fs::remove_all(work);
        fs::create_directories(work);
        const std::string exp_tmpl =
            "{\n  \"spec\": {\"family\": \"pareto\", \"alpha\": 0.5},\n"
            "  \"n_ladder\": [100, 10000],\n  \"reps\": 1000,\n"
            "  \"seed\": 424242,\n  \"out_dir\": \"%s\"\n}\n";
        bool ok = true;
        std::string detail;
        for (int variant = 0; variant < 2 && ok; ++variant) {
            const fs::path out = work / ("out" + std::to_string(variant));
            const fs::path expf = work / ("exp" + std::to_string(variant) + ".json");
            char buf[512];
            std::snprintf(buf, sizeof(buf), exp_tmpl.c_str(), out.string().c_str());
            atomic_write(expf, buf);
            const std::string cmd = args.cli + " --threads " +
                                    (variant == 0 ? "1" : "4") + " simulate " +
                                    expf.string() + " > /dev/null";
            if (std::system(cmd.c_str()) != 0) {
                ok = false;
                detail = "simulate run failed";
            }
        }
        if (ok) {
            for (const char* name : {"samples_n100.csv", "samples_n10000.csv",
                                     "samples_n100.json", "samples_n10000.json",
                                     "samples_n100_lt.csv", "samples_n10000_lt.csv"}) {
                if (read_file(work / "out0" / name) != read_file(work / "out1" / name)) {
                    ok = false;
                    detail = std::string("byte mismatch in ") + name;
                }
            }
            if (ok) detail = "1-thread and 4-thread runs byte-identical";
        }
        report(11, ok, detail);
    }

    std::printf("%s\n", g_failures == 0 ? "ALL CRITERIA PASSED"
                                        : "SOME CRITERIA FAILED");
    return g_failures == 0 ? 0 : 1;
}
