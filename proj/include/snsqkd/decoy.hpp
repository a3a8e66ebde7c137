#pragma once

#include "snsqkd/types.hpp"

namespace snsqkd {

/// True iff the analytic yield bounds are valid for this intensity pair:
/// the decreasing-ratio condition holds and the two-decoy denominator
/// P_1(mu_x) P_2(mu_y) - P_1(mu_y) P_2(mu_x) is positive.
bool bounds_feasible(const ProtocolParams& p, const SeriesPolicy& policy = {});

/// Lower bound on the yield of the (vacuum, class-1 signal-state) pair,
/// from the two-decoy yield extraction with trace-distance corrections for
/// the discrete-phase source mismatch. Floored at 0. Throws validity_error
/// when bounds_feasible is false.
double s01_lower(const ObservedRates& obs, const ProtocolParams& p,
                 const SeriesPolicy& policy = {});

/// Mirror bound for the (class-1 signal-state, vacuum) pair.
double s10_lower(const ObservedRates& obs, const ProtocolParams& p,
                 const SeriesPolicy& policy = {});

/// Upper bound on the right-detector click probability for the even
/// single-send superposition, extracted from the matched-phase decoy pairs.
/// Clamped into [0, 1].
double t0r_upper(const ObservedRates& obs, const ProtocolParams& p,
                 const SeriesPolicy& policy = {});

/// Mirror upper bound for the left clicks on the odd superposition,
/// extracted from the anti-phase decoy pairs.
double t1l_upper(const ObservedRates& obs, const ProtocolParams& p,
                 const SeriesPolicy& policy = {});

/// Phase-flip error upper bound (t0r_u + t1l_u) / (s01_l + s10_l), saturated
/// at 0.5; a zero denominator (no untagged yield certified) returns 0.5.
double phase_error_upper(double s01_l, double s10_l, double t0r_u,
                         double t1l_u);

/// All decoy bounds for one set of observations.
DecoyBounds compute_bounds(const ObservedRates& obs, const ProtocolParams& p,
                           const SeriesPolicy& policy = {});

/// Asymptotic secret key rate in bits per signal-window pulse pair:
///   max{0, 2 eps (1-eps) P_1(mu_z) s1_l [1 - H(eph_u)] - s_z f H(e_z)}.
double key_rate(const ProtocolParams& p, const ObservedRates& obs,
                const DecoyBounds& bounds, const SeriesPolicy& policy = {});

}  // namespace snsqkd
