#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "snsqkd/channel.hpp"
#include "snsqkd/config.hpp"
#include "snsqkd/decoy.hpp"
#include "snsqkd/errors.hpp"
#include "snsqkd/fock.hpp"
#include "snsqkd/lp.hpp"
#include "snsqkd/optimize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;
constexpr int kExitSoundness = 5;

struct CliOverrides {
    std::string config_path;
    std::optional<std::string> out;
    std::optional<double> distance;
    std::optional<int> phases;
    std::optional<std::string> mode;
    bool plob_include_detector = false;
    std::optional<double> mu_x, mu_y, mu_z, epsilon;
};

void add_common_options(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "flat key=value config file");
    cmd->add_option("--out", ov.out, "output path (default: stdout)");
    cmd->add_option("--distance", ov.distance, "fiber length in km");
    cmd->add_option("--phases", ov.phases, "number of discrete phase values");
    cmd->add_option("--mode", ov.mode, "protocol mode: 3int or 4int");
    cmd->add_flag("--plob-include-detector", ov.plob_include_detector,
                  "fold detector efficiency into the PLOB bound");
}

snsqkd::RunConfig resolve_config(const CliOverrides& ov) {
    snsqkd::RunConfig cfg;
    if (!ov.config_path.empty()) cfg = snsqkd::load_config(ov.config_path);
    if (ov.out) cfg.out = *ov.out;
    if (ov.distance) cfg.distance = *ov.distance;
    if (ov.phases) cfg.n_phases = *ov.phases;
    if (ov.mode) {
        if (*ov.mode != "3int" && *ov.mode != "4int")
            throw std::domain_error("mode must be 3int or 4int");
        cfg.mode = *ov.mode;
    }
    if (ov.plob_include_detector) cfg.plob_include_detector = true;
    if (ov.mu_x) cfg.mu_x = *ov.mu_x;
    if (ov.mu_y) cfg.mu_y = *ov.mu_y;
    if (ov.mu_z) cfg.mu_z = *ov.mu_z;
    if (ov.epsilon) cfg.epsilon = *ov.epsilon;
    return cfg;
}

int write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "I/O error: cannot open " << path << "\n";
        return kExitIo;
    }
    out << text;
    if (!out) {
        std::cerr << "I/O error: short write to " << path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int cmd_rate(const snsqkd::RunConfig& cfg) {
    const auto params = cfg.protocol();
    params.validate();
    const auto ch = cfg.channel(cfg.distance);
    const auto obs = snsqkd::simulate_observables(params, ch);
    const auto bounds = snsqkd::compute_bounds(obs, params, cfg.policy());
    const double rate = snsqkd::key_rate(params, obs, bounds, cfg.policy());
    const double plob = snsqkd::plob_bound(ch, cfg.plob_include_detector);

    std::printf("distance        %.6g km\n", cfg.distance);
    std::printf("phase values    %d\n", params.n_phases);
    std::printf("intensities     mu_x=%.6g mu_y=%.6g mu_z=%.6g\n",
                params.mu_x, params.mu_y, params.mu_z);
    std::printf("send prob       %.6g\n", params.epsilon);
    std::printf("yield bounds    s01_L=%.6g s10_L=%.6g\n", bounds.s01_l,
                bounds.s10_l);
    std::printf("phase error     eph_U=%.6g\n", bounds.eph_u);
    std::printf("signal window   S_z=%.6g E_z=%.6g\n", obs.s_z, obs.e_z);
    std::printf("key rate        %.6g bits per pulse pair\n", rate);
    std::printf("plob bound      %.6g\n", plob);

    snsqkd::CsvRow row{cfg.distance, params.n_phases, cfg.mode,
                       params,       bounds,          obs.s_z,
                       obs.e_z,      rate,            plob};
    return write_text(cfg.out,
                      snsqkd::csv_header() + "\n" +
                          snsqkd::format_csv_row(row) + "\n");
}

int cmd_optimize(const snsqkd::RunConfig& cfg) {
    const auto spec = cfg.optimization(cfg.mode, cfg.n_phases);
    const auto ch = cfg.channel(cfg.distance);
    const auto res = snsqkd::optimize_rate(ch, spec);
    if (!res.feasible) {
        std::cerr << "infeasible: " << res.diagnostic << "\n";
        return kExitInfeasible;
    }
    const double plob = snsqkd::plob_bound(ch, cfg.plob_include_detector);
    std::printf("distance        %.6g km\n", cfg.distance);
    std::printf("mode            %s with %d phase values\n", cfg.mode.c_str(),
                cfg.n_phases);
    std::printf("best params     mu_x=%.6g mu_y=%.6g mu_z=%.6g epsilon=%.6g\n",
                res.params.mu_x, res.params.mu_y, res.params.mu_z,
                res.params.epsilon);
    std::printf("key rate        %.6g bits per pulse pair\n", res.rate);
    std::printf("plob bound      %.6g\n", plob);

    snsqkd::CsvRow row{cfg.distance, cfg.n_phases, cfg.mode,
                       res.params,   res.bounds,   res.obs.s_z,
                       res.obs.e_z,  res.rate,     plob};
    return write_text(cfg.out,
                      snsqkd::csv_header() + "\n" +
                          snsqkd::format_csv_row(row) + "\n");
}

int cmd_scan(const snsqkd::RunConfig& cfg) {
    if (cfg.distances.empty())
        throw std::domain_error("scan needs a non-empty distances list");
    const auto phases =
        cfg.phases_list.empty() ? std::vector<int>{cfg.n_phases} : cfg.phases_list;
    const auto modes = cfg.modes_list.empty()
                           ? std::vector<std::string>{cfg.mode}
                           : cfg.modes_list;

    std::string text = snsqkd::csv_header() + "\n";
    for (double l : cfg.distances) {
        for (int n : phases) {
            for (const auto& mode : modes) {
                const auto spec = cfg.optimization(mode, n);
                const auto ch = cfg.channel(l);
                const auto res = snsqkd::optimize_rate(ch, spec);
                snsqkd::CsvRow row;
                row.length_km = l;
                row.n_phases = n;
                row.mode = mode;
                row.plob = snsqkd::plob_bound(ch, cfg.plob_include_detector);
                if (res.feasible) {
                    row.params = res.params;
                    row.bounds = res.bounds;
                    row.s_z = res.obs.s_z;
                    row.e_z = res.obs.e_z;
                    row.rate = res.rate;
                } else {
                    row.params = snsqkd::ProtocolParams{n, 0, 0, 0, 0, cfg.f};
                    row.bounds = snsqkd::DecoyBounds{0, 0, 0, 0, 0, 0.5};
                }
                text += snsqkd::format_csv_row(row) + "\n";
            }
        }
    }
    return write_text(cfg.out, text);
}

int cmd_verify(const snsqkd::RunConfig& cfg) {
    bool all_ok = true;
    std::printf("%6s %4s  %-10s %-10s %-10s %-10s %-10s %-9s %s\n", "L_km",
                "N", "s01", "s10", "t0r", "t1l", "eph", "lp_s1", "status");
    for (double l : cfg.verify_distances) {
        for (int n : cfg.verify_phases) {
            snsqkd::RunConfig point = cfg;
            point.n_phases = n;
            const auto params = point.protocol();
            const auto ch = cfg.channel(l);
            const auto obs =
                snsqkd::oracle_observables(params, ch, cfg.fock_n_max);
            const auto bounds =
                snsqkd::compute_bounds(obs, params, cfg.policy());
            const auto truth =
                snsqkd::untagged_ground_truth(params, ch, cfg.fock_n_max);

            bool ok = bounds.s01_l <= truth.s01 && bounds.s10_l <= truth.s10 &&
                      bounds.t0r_u >= truth.t0r && bounds.t1l_u >= truth.t1l &&
                      bounds.eph_u >= truth.eph;
            double lp_s1 = 0.0;
            if (cfg.verify_lp) {
                lp_s1 = snsqkd::lp_s1_lower(obs, params, cfg.policy());
                const double s1_true = 0.5 * (truth.s01 + truth.s10);
                ok = ok && bounds.s1_l <= lp_s1 + 1e-9 && lp_s1 <= s1_true;
            }
            all_ok = all_ok && ok;
            std::printf("%6g %4d  %-10.4g %-10.4g %-10.4g %-10.4g %-10.4g "
                        "%-9.4g %s\n",
                        l, n, bounds.s01_l, bounds.s10_l, bounds.t0r_u,
                        bounds.t1l_u, bounds.eph_u, lp_s1,
                        ok ? "sound" : "VIOLATED");
            if (!ok)
                std::fprintf(stderr,
                             "soundness violation at L=%g km, N=%d\n", l, n);
        }
    }
    std::printf("verify: %s\n", all_ok ? "all grid points sound" : "FAILED");
    return all_ok ? kExitOk : kExitSoundness;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Key-rate engine for sending-or-not-sending twin-field QKD with "
        "discrete phase modulation"};
    app.require_subcommand(1);

    CliOverrides ov;
    auto* rate = app.add_subcommand(
        "rate", "single-point pipeline with explicit parameters");
    rate->add_option("--mu-x", ov.mu_x, "weaker decoy intensity");
    rate->add_option("--mu-y", ov.mu_y, "stronger decoy intensity");
    rate->add_option("--mu-z", ov.mu_z, "signal intensity");
    rate->add_option("--epsilon", ov.epsilon, "signal-window send probability");
    auto* scan = app.add_subcommand(
        "scan", "optimized rate-versus-distance table as CSV");
    auto* optimize = app.add_subcommand(
        "optimize", "parameter optimization at one distance");
    auto* verify = app.add_subcommand(
        "verify", "exact-model soundness check of the decoy bounds");
    for (auto* cmd : {rate, scan, optimize, verify})
        add_common_options(cmd, ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        const auto cfg = resolve_config(ov);
        if (rate->parsed()) return cmd_rate(cfg);
        if (scan->parsed()) return cmd_scan(cfg);
        if (optimize->parsed()) return cmd_optimize(cfg);
        return cmd_verify(cfg);
    } catch (const snsqkd::validity_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const snsqkd::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
}
