#pragma once

#include <string>
#include <vector>

#include "snsqkd/types.hpp"

namespace snsqkd {

enum class Mode { four_intensity, three_intensity };

/// Inclusive search interval for one parameter; searched on a log scale.
struct ParamRange {
    double lo = 0;
    double hi = 0;
};

/// Deterministic coarse-to-fine search specification. three_intensity pins
/// mu_z = mu_y throughout; four_intensity additionally searches that
/// constrained subspace so the 3-intensity optimum is never missed.
struct OptimizationSpec {
    Mode mode = Mode::four_intensity;
    int n_phases = 12;
    double f = 1.1;
    ParamRange mu_x{0.001, 0.1};
    ParamRange mu_y{0.002, 1.0};  // carries the signal role when mu_z is pinned
    ParamRange mu_z{0.01, 1.0};
    ParamRange epsilon{0.005, 0.5};
    int coarse_steps = 6;        // grid points per dimension, >= 2
    int max_rounds = 80;         // pattern-search round cap
    double rate_rel_tol = 1e-3;  // refinement target on the rate
    SeriesPolicy policy{};

    void validate() const;
};

struct OptimizeResult {
    bool feasible = false;
    ProtocolParams params{};
    double rate = 0;
    ObservedRates obs{};
    DecoyBounds bounds{};
    std::string diagnostic;  // set when no feasible point exists
};

/// Maximizes key_rate over the spec's box, skipping candidates that violate
/// the analytic-bound validity conditions. Coarse log-grid pass followed by
/// step-halving pattern refinement; fully deterministic, ties broken by
/// lexicographically smaller parameters.
OptimizeResult optimize_rate(const ChannelParams& ch,
                             const OptimizationSpec& spec);

struct ScanPoint {
    double length_km = 0;
    bool feasible = false;
    ProtocolParams params{};
    double rate = 0;
    double plob = 0;
    ObservedRates obs{};
    DecoyBounds bounds{};
};

struct ScanResult {
    std::vector<ScanPoint> points;
};

/// Per-distance optimization over a sorted, non-empty distance list.
/// Distances with no feasible positive rate are recorded with rate 0.
ScanResult scan_distances(const ChannelParams& ch_template,
                          const OptimizationSpec& spec,
                          const std::vector<double>& lengths_km,
                          bool plob_include_detector = false);

}  // namespace snsqkd
