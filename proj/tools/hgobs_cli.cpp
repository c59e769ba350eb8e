// Command-line frontend: gain design, observer co-simulation, sensitivity
// sweeps and the Van der Pol benchmark. Configs are JSON documents; all
// data outputs are CSV plus JSON summaries.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgobs/config.hpp"
#include "hgobs/errors.hpp"
#include "hgobs/gainsynth.hpp"
#include "hgobs/senslin.hpp"
#include "hgobs/vdp.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace hgobs;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitDivergence = 4;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = ".";
    int seed = 0;
};

fs::path out_file(const GlobalOpts& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return fs::path(g.out_dir) / name;
}

json ladder_json(const canon::GainLadder& ladder) {
    json pairs = json::array();
    for (const auto& [k1, k2] : ladder.pairs) pairs.push_back({k1, k2});
    return pairs;
}

int cmd_design_gains(const GlobalOpts& g) {
    const auto cfg = cli::load_config<cli::DesignGainsConfig>(g.config_path);
    const num::Polynomial target = cfg.target();
    const gains::AssignmentReport report = gains::assign_gains(target);
    if (!report.target_hurwitz)
        std::cerr << "warning: target polynomial is not Hurwitz; assignment proceeds anyway\n";

    std::cout << "target degree " << target.degree() << " (n = " << report.ladder.n << ")\n";
    for (size_t i = 0; i < report.ladder.pairs.size(); ++i)
        std::printf("K_%zu = (%.12g, %.12g)\n", i + 1, report.ladder.pairs[i].first,
                    report.ladder.pairs[i].second);
    std::printf("positivity: %s\n", report.positivity ? "yes" : "no");
    std::printf("verification residual: %.3e\n", report.verification_residual);
    std::cout << "eigenvalues of M:\n";
    json eigs = json::array();
    for (const num::Complex& ev : num::eigvals(canon::build_M(report.ladder))) {
        std::printf("  %.12g %+.12gi\n", ev.real(), ev.imag());
        eigs.push_back({ev.real(), ev.imag()});
    }

    json out{{"target_coeffs", target.coeffs()},
             {"ladder", ladder_json(report.ladder)},
             {"positivity", report.positivity},
             {"target_hurwitz", report.target_hurwitz},
             {"verification_residual", report.verification_residual},
             {"eigenvalues", eigs},
             {"seed", g.seed}};
    json steps = json::array();
    for (const auto& s : report.steps)
        steps.push_back({{"stage", s.stage},
                         {"k1", s.k1},
                         {"k2", s.k2},
                         {"k1_candidates", s.k1_candidates},
                         {"sigma1_residual", s.sigma1_residual},
                         {"reduced_coeffs", s.reduced.coeffs()}});
    out["steps"] = steps;
    std::ofstream(out_file(g, "design_gains.json")) << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_simulate(const GlobalOpts& g) {
    const auto cfg = cli::load_config<cli::SimulateConfig>(g.config_path);

    sim::PlantModel plant;
    if (cfg.plant.type == "vdp") {
        vdp::VdpParams params{cfg.plant.alpha, cfg.plant.beta};
        plant = vdp::vdp_plant(params);
    } else {
        std::function<double(const std::vector<double>&)> phi;
        if (!cfg.plant.phi.empty()) {
            const std::vector<double> row = cfg.plant.phi;
            phi = [row](const std::vector<double>& x) {
                double acc = 0.0;
                for (size_t i = 0; i < row.size(); ++i) acc += row[i] * x[i];
                return acc;
            };
        }
        plant = sim::prime_form_plant(cfg.plant.n, phi);
    }

    std::vector<canon::ObserverSpec> observers;
    for (const auto& oc : cfg.observers) observers.push_back(cli::make_observer(oc, cfg.plant));

    std::vector<double> x0 = cfg.x0;
    if (x0.empty()) x0.assign(static_cast<size_t>(plant.state_dim), 0.0);
    if (static_cast<int>(x0.size()) != plant.state_dim)
        throw config_error("simulate: x0 must have the plant state dimension");
    std::vector<std::vector<double>> inits = cfg.observer_inits;
    if (inits.empty())
        for (const auto& o : observers)
            inits.emplace_back(static_cast<size_t>(o.state_dim()), 0.0);

    const sim::SimTrace trace = sim::cosimulate(plant, observers, cfg.noise.signal(),
                                                cfg.disturbance.signal(), x0, inits, cfg.sim.grid());
    sim::write_trace_csv(trace, out_file(g, "trace.csv").string());

    json summary{{"seed", g.seed}, {"series", json::array()}};
    for (size_t s = 0; s < trace.estimates.size(); ++s) {
        json entry{{"label", trace.estimates[s].label},
                   {"peak_error", sim::peak_error(trace, s)}};
        json asym = json::array();
        for (int c = 0; c < trace.estimates[s].dim; ++c)
            asym.push_back(sim::asymptotic_error(trace, s, c));
        entry["asymptotic_error"] = asym;
        try {
            const sim::DecayFit fit = sim::decay_fit(trace, s);
            entry["decay_rate"] = fit.rate;
            entry["decay_prefactor"] = fit.prefactor;
        } catch (const numeric_error& e) {
            entry["decay_fit_error"] = e.what();
        }
        summary["series"].push_back(entry);
    }
    std::ofstream(out_file(g, "summary.json")) << summary.dump(2) << "\n";
    std::cout << "trace written (" << trace.samples() << " samples, "
              << trace.estimates.size() << " estimate series)\n";
    return kExitOk;
}

int cmd_sensitivity(const GlobalOpts& g) {
    const auto cfg = cli::load_config<cli::SensitivityConfig>(g.config_path);
    sens::LinearPlant plant{cfg.n, cfg.phi};
    if (plant.phi.empty()) plant.phi.assign(static_cast<size_t>(cfg.n), 0.0);

    std::vector<double> k_std = cfg.standard_gains;
    if (k_std.empty()) {
        if (cfg.standard_roots.empty())
            throw config_error("sensitivity: needs standard_gains or standard_roots");
        num::ComplexList roots;
        for (const auto& p : cfg.standard_roots) roots.emplace_back(p[0], p[1]);
        k_std = num::poly_from_roots(roots).tail();
    }
    canon::GainLadder ladder;
    if (!cfg.ladder.empty()) {
        ladder.n = cfg.n;
        for (const auto& p : cfg.ladder) ladder.pairs.emplace_back(p[0], p[1]);
    } else {
        if (cfg.new_target_roots.empty())
            throw config_error("sensitivity: needs ladder or new_target_roots");
        num::ComplexList roots;
        for (const auto& p : cfg.new_target_roots) roots.emplace_back(p[0], p[1]);
        ladder = gains::assign_gains(num::poly_from_roots(roots)).ladder;
    }

    const std::vector<double> grid =
        sens::geometric_grid(cfg.omega_min, cfg.omega_max, cfg.omega_points);
    const std::vector<sens::SweepRow> rows =
        sens::sensitivity_sweep(plant, k_std, ladder, cfg.ell, grid);

    std::ofstream csv(out_file(g, "sensitivity.csv"));
    csv << "omega";
    for (int i = 1; i <= cfg.n; ++i)
        csv << ",mag_std_" << i << ",mag_new_" << i << ",ratio_" << i;
    csv << "\n";
    char buf[32];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.omega);
        csv << buf;
        for (int i = 0; i < cfg.n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row.mag_std[static_cast<size_t>(i)]);
            csv << ',' << buf;
            std::snprintf(buf, sizeof buf, "%.17g", row.mag_new[static_cast<size_t>(i)]);
            csv << ',' << buf;
            std::snprintf(buf, sizeof buf, "%.17g", row.ratio[static_cast<size_t>(i)]);
            csv << ',' << buf;
        }
        csv << "\n";
    }

    const int rho = sens::rho_index(plant.phi);
    json channels = json::array();
    std::cout << "channel  r'_i  fitted ratio slope\n";
    for (int i = 1; i <= cfg.n; ++i) {
        const double slope = sens::ratio_slope(plant, k_std, ladder, cfg.ell, i, grid);
        const int rp = sens::r_prime(i, cfg.n, rho);
        const int rd_std =
            sens::relative_degree(sens::error_system_standard(plant, k_std, cfg.ell, i));
        const int rd_new =
            sens::relative_degree(sens::error_system_new(plant, ladder, cfg.ell, i));
        std::printf("%7d  %4d  %18.4f\n", i, rp, slope);
        channels.push_back({{"channel", i},
                            {"r_prime", rp},
                            {"relative_degree_standard", rd_std},
                            {"relative_degree_new", rd_new},
                            {"ratio_slope", slope}});
    }
    json summary{{"rho", rho}, {"ell", cfg.ell}, {"channels", channels}, {"seed", g.seed}};
    std::ofstream(out_file(g, "sensitivity_summary.json")) << summary.dump(2) << "\n";
    return kExitOk;
}

int cmd_vdp_bench(const GlobalOpts& g, bool no_noise, double ell_override) {
    cli::VdpBenchConfig cfg;
    if (!g.config_path.empty()) cfg = cli::load_config<cli::VdpBenchConfig>(g.config_path);
    if (no_noise) cfg.noisy = false;
    if (ell_override > 0.0) cfg.ell = ell_override;

    vdp::BenchmarkConfig bench = cfg.noisy ? vdp::BenchmarkConfig::with_noise(cfg.ell)
                                           : vdp::BenchmarkConfig::noise_free(cfg.ell);
    bench.params = {cfg.alpha, cfg.beta};
    if (cfg.noisy) bench.noise = cfg.noise.signal();
    if (cfg.sim) bench.sim = cfg.sim->grid();

    const vdp::BenchmarkReport report = vdp::run_benchmark(bench);
    const std::string trace_name = cfg.noisy ? "vdp_noisy_trace.csv" : "vdp_noise_free_trace.csv";
    sim::write_trace_csv(report.trace, out_file(g, trace_name).string());

    json summary{{"ell", cfg.ell},
                 {"noisy", cfg.noisy},
                 {"sat_bound", report.sat_bound},
                 {"alpha", cfg.alpha},
                 {"beta", cfg.beta},
                 {"seed", g.seed}};
    if (cfg.noisy) {
        const char* names[3] = {"std", "xp", "xpp"};
        json norm = json::object();
        for (size_t s = 0; s < 3; ++s) {
            json row = json::array();
            for (int c = 0; c < 5; ++c) row.push_back(report.normalized[s][static_cast<size_t>(c)]);
            norm[names[s]] = row;
        }
        summary["normalized_asymptotic_errors"] = norm;
        std::cout << "normalized asymptotic errors (|error|_a / a_N):\n";
        for (size_t s = 0; s < 3; ++s) {
            std::printf("%4s:", names[s]);
            for (int c = 0; c < 5; ++c)
                std::printf(" %10.4g", report.normalized[s][static_cast<size_t>(c)]);
            std::printf("\n");
        }
    } else {
        json peaks = json::object();
        for (size_t s = 0; s < report.trace.estimates.size(); ++s)
            peaks[report.trace.estimates[s].label] = sim::peak_error(report.trace, s);
        summary["peak_errors"] = peaks;
        std::cout << "noise-free run complete; trace written to " << trace_name << "\n";
    }
    std::ofstream(out_file(g, "vdp_summary.json")) << summary.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-gain observer design, simulation and sensitivity toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON config file");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--seed", g.seed, "seed echoed into outputs (commands are deterministic)");

    auto* design = app.add_subcommand("design-gains", "assign M's eigenvalues via a gain ladder");
    auto* simulate = app.add_subcommand("simulate", "co-simulate plant and observers");
    auto* sens_cmd = app.add_subcommand("sensitivity", "linear noise-sensitivity analysis");
    auto* bench = app.add_subcommand("vdp-bench", "Van der Pol benchmark");
    bool no_noise = false;
    double ell_override = -1.0;
    bench->add_flag("--no-noise", no_noise, "run the noise-free variant");
    bench->add_option("--l", ell_override, "override the high-gain parameter");

    CLI11_PARSE(app, argc, argv);

    try {
        if (design->parsed()) {
            if (g.config_path.empty()) throw hgobs::config_error("design-gains: --config required");
            return cmd_design_gains(g);
        }
        if (simulate->parsed()) {
            if (g.config_path.empty()) throw hgobs::config_error("simulate: --config required");
            return cmd_simulate(g);
        }
        if (sens_cmd->parsed()) {
            if (g.config_path.empty()) throw hgobs::config_error("sensitivity: --config required");
            return cmd_sensitivity(g);
        }
        if (bench->parsed()) return cmd_vdp_bench(g, no_noise, ell_override);
    } catch (const hgobs::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hgobs::divergence_error& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const hgobs::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
