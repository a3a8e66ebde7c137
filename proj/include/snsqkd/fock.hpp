#pragma once

#include <complex>
#include <vector>

#include "snsqkd/channel.hpp"
#include "snsqkd/types.hpp"

namespace snsqkd {

/// Pure two-mode state in a truncated photon-number basis, n_a, n_b in
/// [0, dim). Builders guarantee unit norm with truncation-tail weight below
/// 1e-10; detection rejects states whose norm deviates by more.
struct FockState2 {
    int dim = 0;
    std::vector<std::complex<double>> amp;  // row-major, index n_a * dim + n_b

    explicit FockState2(int dim_ = 0)
        : dim(dim_),
          amp(static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_)) {}

    std::complex<double>& at(int n_a, int n_b) {
        return amp[static_cast<std::size_t>(n_a) * dim + n_b];
    }
    const std::complex<double>& at(int n_a, int n_b) const {
        return amp[static_cast<std::size_t>(n_a) * dim + n_b];
    }
    double norm2() const;
};

/// Single-mode coherent amplitudes for |sqrt(mu) e^(i theta)>, truncated at
/// n_max. Throws numeric_error if the Poisson tail beyond n_max is >= 1e-10.
std::vector<std::complex<double>> coherent_amplitudes(double mu, double theta,
                                                      int n_max);

/// Normalized class-j component of a phase-randomized coherent source of
/// intensity mu: support on photon numbers j, j+N, j+2N, ... up to n_max.
/// Throws numeric_error if the relative series tail beyond n_max is >= 1e-10.
std::vector<double> photon_class_amplitudes(double mu, int n_phases, int j,
                                            int n_max);

/// Product state of two single-mode amplitude vectors.
FockState2 product_state(const std::vector<std::complex<double>>& mode_a,
                         const std::vector<std::complex<double>>& mode_b);

FockState2 coherent_pair_state(double mu_a, double theta_a, double mu_b,
                               double theta_b, int n_max);

/// Balanced-beamsplitter block for the fixed-total-photon sector: entry
/// [k][n] is the amplitude of |k, S-k> in the image of |n, S-n>, with the
/// convention that equal-phase coherent inputs exit entirely through the
/// left mode.
std::vector<std::vector<double>> balanced_bs_sector_matrix(int total_photons);

/// Exact one-detector click probabilities for a pure input state sent
/// through the symmetric channel: per-mode pure loss at the arm
/// transmittance, the balanced beamsplitter, a mode-swap misalignment
/// channel of probability e_d, then threshold detectors with dark count p_d.
/// Equal-arm loss commutes with the beamsplitter, so the loss is applied as
/// binomial thinning of the interfered photon-number distribution.
ClickOutcome oracle_detect(const FockState2& input, const ChannelParams& ch);

/// Channel-level ground truth for the untagged-bit analysis.
struct UntaggedTruth {
    double s01 = 0;  // one-detector rate, vacuum x class-1 signal state
    double s10 = 0;  // one-detector rate, class-1 signal state x vacuum
    double t0r = 0;  // right-only rate on the even superposition
    double t1l = 0;  // left-only rate on the odd superposition
    double eph = 0;  // (t0r + t1l) / (s01 + s10), 0 when no events
};

/// Builds the class-1 signal states in the truncated basis and measures the
/// exact yields and wrong-detector rates that the decoy bounds estimate.
UntaggedTruth untagged_ground_truth(const ProtocolParams& p,
                                    const ChannelParams& ch, int n_max = 30);

/// Observed rates generated by driving the exact channel with coherent
/// inputs; the Fock-side counterpart of simulate_observables, used so that
/// bound-versus-truth comparisons share one channel model.
ObservedRates oracle_observables(const ProtocolParams& p,
                                 const ChannelParams& ch, int n_max = 30);

}  // namespace snsqkd
