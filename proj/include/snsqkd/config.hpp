#pragma once

#include <string>
#include <vector>

#include "snsqkd/optimize.hpp"
#include "snsqkd/types.hpp"

namespace snsqkd {

/// Flat key=value run configuration. Channel defaults are the reference
/// experimental parameter set (p_d = 1e-8, e_d = 3%, eta_d = 30%, f = 1.1,
/// alpha = 0.2 dB/km). Unknown keys are rejected.
struct RunConfig {
    // channel
    double p_d = 1e-8;
    double e_d = 0.03;
    double eta_d = 0.30;
    double f = 1.1;
    double alpha = 0.2;

    // protocol / pipeline selection
    int n_phases = 12;
    std::string mode = "4int";  // "3int" | "4int"
    double distance = 300.0;    // single-point commands
    std::vector<double> distances;        // scan
    std::vector<int> phases_list;         // scan; empty -> {n_phases}
    std::vector<std::string> modes_list;  // scan; empty -> {mode}

    // explicit protocol parameters (rate command, verify grid point)
    double mu_x = 0.001;
    double mu_y = 0.002;
    double mu_z = 0.4;
    double epsilon = 0.06;

    // output
    std::string out;  // empty -> stdout
    bool plob_include_detector = false;

    // series policy
    double series_rel_tol = 1e-16;
    int series_k_max = 64;

    // optimizer box and effort
    double mu_x_max = 0.1;
    double mu_y_max = 1.0;
    double mu_z_min = 0.01;
    double mu_z_max = 1.0;
    double epsilon_min = 0.005;
    double epsilon_max = 0.5;
    int coarse_steps = 6;
    double rate_rel_tol = 1e-3;

    // verify grid
    std::vector<double> verify_distances = {50.0, 100.0, 200.0};
    std::vector<int> verify_phases = {4, 8, 12};
    int fock_n_max = 30;
    bool verify_lp = true;

    ChannelParams channel(double length_km) const;
    ProtocolParams protocol() const;
    OptimizationSpec optimization(const std::string& mode_name,
                                  int phases) const;
    SeriesPolicy policy() const;
};

/// Parses a flat key=value file ('#' starts a comment). Lists are
/// comma-separated; distance lists also accept lo:hi:step. Throws
/// std::domain_error on unknown keys or malformed values and
/// std::runtime_error when the file cannot be read.
RunConfig load_config(const std::string& path);

/// Applies one key=value assignment (same grammar as the file).
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

/// One output row of the rate/scan pipelines.
struct CsvRow {
    double length_km = 0;
    int n_phases = 0;
    std::string mode;
    ProtocolParams params{};
    DecoyBounds bounds{};
    double s_z = 0;
    double e_z = 0;
    double rate = 0;
    double plob = 0;
};

/// Fixed column order; numbers serialized with 12 significant digits.
std::string csv_header();
std::string format_csv_row(const CsvRow& row);

}  // namespace snsqkd
