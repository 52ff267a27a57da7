// sumax: reproducible experiments on the sum-to-maximum ratio of
// heavy-tailed samples.
//
// Subcommands
//   phi       evaluate the kernel phi_alpha(s) on a list of s values
//   simulate  run the Monte Carlo ladder described by an experiment file
//   order     Laplace-transform order check between two sample-set files
//   sir       SIR / Shannon-capacity sweep described by an experiment file
//   invert    recover the limit CDF of R from its transform
//
// Exit codes: 0 success (order: Ordered), 2 Inconclusive, 3 Violated,
// 64 usage, 65 bad experiment file, 74 I/O failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumax/distributions.hpp"
#include "sumax/io.hpp"
#include "sumax/laplace_inversion.hpp"
#include "sumax/mc_engine.hpp"
#include "sumax/ordering.hpp"
#include "sumax/phi_kernel.hpp"
#include "sumax/sir_analysis.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitConfig = 65;
constexpr int kExitIo = 74;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned default_threads() {
    if (const char* env = std::getenv("HT_EXTREMES_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw CLI::ValidationError("empty numeric list");
    return out;
}

nlohmann::json load_experiment(const std::string& path,
                               const std::vector<std::string>& allowed,
                               const std::vector<std::string>& required) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(sumax::read_file(path));
    } catch (const sumax::IoError& e) {
        throw sumax::IoError(e.what());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("experiment file is not valid JSON: ") +
                          e.what());
    }
    if (!j.is_object()) throw ConfigError("experiment file must be a JSON object");
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw ConfigError("unknown key '" + item.key() + "' in experiment file");
    }
    for (const auto& k : required)
        if (!j.contains(k))
            throw ConfigError("missing key '" + k + "' in experiment file");
    return j;
}

std::vector<double> s_grid_from(const nlohmann::json& j) {
    if (j.contains("s_grid")) return j.at("s_grid").get<std::vector<double>>();
    return sumax::default_s_grid();
}

int cmd_phi(double alpha, const std::string& s_list) {
    const auto svals = parse_double_list(s_list);
    std::cout << "s,phi,abs_error_bound\n";
    for (const double s : svals) {
        const sumax::PhiValue p = sumax::phi(alpha, s);
        std::cout << sumax::format_double(s) << ',';
        if (p.method == sumax::PhiMethod::Infinite)
            std::cout << "inf,0";
        else
            std::cout << sumax::format_double(p.value) << ','
                      << sumax::format_double(p.abs_error_bound);
        std::cout << '\n';
    }
    return 0;
}

int cmd_simulate(const std::string& file, unsigned threads) {
    const nlohmann::json j = load_experiment(
        file, {"spec", "n_ladder", "reps", "seed", "s_grid", "out_dir"},
        {"spec", "n_ladder", "reps", "seed", "out_dir"});
    sumax::SimConfig cfg;
    try {
        cfg.spec = j.at("spec").get<sumax::DistributionSpec>();
        cfg.n_ladder = j.at("n_ladder").get<std::vector<std::uint64_t>>();
        cfg.reps = j.at("reps").get<std::uint64_t>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.s_grid = s_grid_from(j);
        cfg.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const std::filesystem::path out_dir = j.at("out_dir").get<std::string>();
    std::filesystem::create_directories(out_dir);

    const auto sets = sumax::run(cfg, threads);
    for (const auto& set : sets) {
        const std::string stem = "samples_n" + std::to_string(set.n);
        sumax::atomic_write(out_dir / (stem + ".csv"), sumax::sample_set_csv(set));
        sumax::atomic_write(out_dir / (stem + ".json"),
                            sumax::sample_set_sidecar(set).dump(2) + "\n");
        const sumax::LtCurve lt = sumax::empirical_lt(set, cfg.s_grid);
        sumax::atomic_write(out_dir / (stem + "_lt.csv"), sumax::lt_curve_csv(lt));
        std::cout << "wrote " << (out_dir / (stem + ".csv")).string() << " ("
                  << set.r_values.size() << " reps)\n";
    }
    return 0;
}

sumax::RatioSampleSet load_sample_set(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    std::filesystem::path sidecar = p;
    sidecar.replace_extension(".json");
    const nlohmann::json meta = nlohmann::json::parse(sumax::read_file(sidecar));
    return sumax::sample_set_from_csv(sumax::read_file(p), meta);
}

int cmd_order(const std::string& file_a, const std::string& file_b,
              double confidence, const std::string& out_path) {
    const sumax::RatioSampleSet a = load_sample_set(file_a);
    const sumax::RatioSampleSet b = load_sample_set(file_b);
    const std::vector<double> s_grid = a.config.s_grid.empty()
                                           ? sumax::default_s_grid()
                                           : a.config.s_grid;
    const sumax::LtCurve curve_a = sumax::empirical_lt(a, s_grid);
    const sumax::LtCurve curve_b = sumax::empirical_lt(b, s_grid);
    // Operand order states the hypothesis: file_a is the Lt-smaller
    // population, so its transform should dominate.
    sumax::OrderingReport rep = sumax::check_lt_order(curve_a, curve_b, confidence);
    rep.functional_checks = sumax::check_functionals(a, b, confidence);
    const nlohmann::json out = rep;
    if (!out_path.empty())
        sumax::atomic_write(out_path, out.dump(2) + "\n");
    else
        std::cout << out.dump(2) << '\n';
    switch (rep.verdict) {
        case sumax::Verdict::Ordered: return 0;
        case sumax::Verdict::Inconclusive: return 2;
        case sumax::Verdict::Violated: return 3;
    }
    return kExitUsage;
}

int cmd_sir(const std::string& file, unsigned threads, bool bits) {
    const nlohmann::json j = load_experiment(
        file,
        {"family", "alphas", "n", "reps", "seed", "s_grid", "out_dir"},
        {"family", "alphas", "n", "reps", "seed", "out_dir"});
    std::vector<sumax::SirReport> reports;
    std::filesystem::path out_dir;
    try {
        const sumax::Family family =
            sumax::family_from_name(j.at("family").get<std::string>());
        const auto alphas = j.at("alphas").get<std::vector<double>>();
        const auto n = j.at("n").get<std::uint64_t>();
        const auto reps = j.at("reps").get<std::uint64_t>();
        const auto seed = j.at("seed").get<std::uint64_t>();
        const auto s_grid = s_grid_from(j);
        out_dir = j.at("out_dir").get<std::string>();
        std::filesystem::create_directories(out_dir);
        reports = sumax::alpha_sweep(family, alphas, n, reps, seed, s_grid, threads);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    sumax::atomic_write(out_dir / "sir_sweep.csv", sumax::sweep_csv(reports));
    for (const auto& r : reports) {
        std::ostringstream stem;
        stem << "sir_alpha" << r.alpha;
        nlohmann::json rj = r;
        if (bits) {
            rj["mean_capacity_bits"] = r.mean_capacity / std::log(2.0);
            rj["cap_stderr_bits"] = r.cap_stderr / std::log(2.0);
        }
        sumax::atomic_write(out_dir / (stem.str() + ".json"), rj.dump(2) + "\n");
        sumax::atomic_write(out_dir / (stem.str() + "_lt_z.csv"),
                            sumax::lt_curve_csv(r.lt_Z_curve));
    }
    std::cout << "wrote " << (out_dir / "sir_sweep.csv").string() << " ("
              << reports.size() << " alphas)\n";
    return 0;
}

int cmd_invert(double alpha, const std::string& x_grid_spec, int order,
               const std::string& out_path) {
    std::vector<double> x_grid;
    if (x_grid_spec.empty()) {
        x_grid = sumax::default_x_grid();
    } else {
        const auto parts = parse_double_list(x_grid_spec);
        if (parts.size() != 3)
            throw CLI::ValidationError("--x-grid expects lo,hi,count");
        x_grid = sumax::log_spaced(parts[0], parts[1],
                                   static_cast<std::size_t>(parts[2]));
    }
    const sumax::CdfCurve c = sumax::invert_cdf(alpha, x_grid, order);
    if (c.unstable) std::cerr << "warning: " << c.warning << '\n';
    if (!out_path.empty())
        sumax::atomic_write(out_path, sumax::cdf_curve_csv(c));
    else
        std::cout << sumax::cdf_curve_csv(c);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sum-to-maximum ratio asymptotics for heavy-tailed samples"};
    app.require_subcommand(1);
    unsigned threads = default_threads();
    app.add_option("--threads", threads,
                   "worker threads (never changes output bytes)");

    auto* sc_phi = app.add_subcommand("phi", "evaluate phi_alpha(s)");
    double phi_alpha = 0.0;
    std::string phi_s;
    sc_phi->add_option("--alpha", phi_alpha, "tail index, >= 0")->required();
    sc_phi->add_option("--s", phi_s, "comma-separated s values, > 0")->required();

    auto* sc_sim = app.add_subcommand("simulate", "run a Monte Carlo experiment");
    std::string sim_file;
    sc_sim->add_option("experiment", sim_file, "experiment JSON file")->required();

    auto* sc_order = app.add_subcommand("order", "Laplace-transform order check");
    std::string order_a, order_b, order_out;
    double confidence = 0.95;
    sc_order->add_option("file_a", order_a, "sample CSV, hypothesized Lt-smaller")
        ->required();
    sc_order->add_option("file_b", order_b, "sample CSV, hypothesized Lt-larger")
        ->required();
    sc_order->add_option("--confidence", confidence, "CI level, in (0,1)");
    sc_order->add_option("--out", order_out, "write report JSON here");

    auto* sc_sir = app.add_subcommand("sir", "SIR / capacity alpha sweep");
    std::string sir_file;
    bool sir_bits = false;
    sc_sir->add_option("experiment", sir_file, "experiment JSON file")->required();
    sc_sir->add_flag("--bits", sir_bits, "also report capacity in bits");

    auto* sc_inv = app.add_subcommand("invert", "limit CDF of R by inversion");
    double inv_alpha = 0.5;
    int inv_order = 14;
    std::string inv_grid, inv_out;
    sc_inv->add_option("--alpha", inv_alpha, "tail index, in (0,1)")->required();
    sc_inv->add_option("--x-grid", inv_grid, "lo,hi,count (log-spaced)");
    sc_inv->add_option("--order", inv_order, "Stehfest order (even)");
    sc_inv->add_option("--out", inv_out, "write CDF CSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*sc_phi) return cmd_phi(phi_alpha, phi_s);
        if (*sc_sim) return cmd_simulate(sim_file, threads);
        if (*sc_order) {
            if (!(confidence > 0.0 && confidence < 1.0)) {
                std::cerr << "error: --confidence must be in (0,1)\n";
                return kExitUsage;
            }
            return cmd_order(order_a, order_b, confidence, order_out);
        }
        if (*sc_sir) return cmd_sir(sir_file, threads, sir_bits);
        if (*sc_inv) return cmd_invert(inv_alpha, inv_grid, inv_order, inv_out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const sumax::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
