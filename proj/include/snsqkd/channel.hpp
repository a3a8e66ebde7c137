#pragma once

#include "snsqkd/types.hpp"

namespace snsqkd {

/// Probabilities of the two exactly-one-detector outcomes for one pulse pair.
struct ClickOutcome {
    double p_left_only = 0;
    double p_right_only = 0;

    double one_detector() const { return p_left_only + p_right_only; }
};

/// Transmittance of one arm (source to detector output), detector efficiency
/// included: eta_d * 10^(-alpha * (L/2) / 10).
double arm_transmittance(const ChannelParams& ch);

/// One-detector click probabilities for coherent pulses of received
/// intensities x and y interfering at relative phase theta. Misalignment
/// folds into the interference visibility, dark counts into an independent
/// per-detector no-click factor:
///
///   I_L = (x+y)/2 + (1-2 e_d) sqrt(xy) cos(theta)     (I_R with -)
///   P(detector D clicks) = 1 - (1-p_d) exp(-I_D)
ClickOutcome click_probs_coherent(double x, double y, double theta,
                                  const ChannelParams& ch);

/// All observed rates of one protocol run under the analytic channel model.
/// One-side-vacuum rates are phase independent; the signal-window both-send
/// term averages the relative phase exactly over the N discrete values.
/// Signal-window bit convention: exactly-one-send heralds are correct,
/// both-send and neither-send heralds are bit errors. When s_z is exactly 0
/// the error rate e_z is reported as 0.
ObservedRates simulate_observables(const ProtocolParams& p,
                                   const ChannelParams& ch);

/// Repeaterless secret-key capacity bound -log2(1 - eta_tot) in bits per
/// pulse, with eta_tot the end-to-end fiber transmittance 10^(-alpha L / 10).
/// Detector efficiency is excluded by default; include_detector folds in one
/// factor of eta_d. Returns +infinity at eta_tot = 1.
double plob_bound(const ChannelParams& ch, bool include_detector = false);

}  // namespace snsqkd
