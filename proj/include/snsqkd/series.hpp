#pragma once

#include "snsqkd/types.hpp"

namespace snsqkd {

/// Parity of the single-send superposition a class-1 decoy pair is compared
/// against: even is the symmetric combination, odd the antisymmetric one.
enum class Parity { even, odd };

/// Throws std::domain_error unless n_phases is an even integer >= 2.
void validate_phase_count(int n_phases);

/// Probability that a phase-randomized coherent pulse of intensity mu falls
/// in photon-number class j, i.e. the Poisson weight of photon numbers
/// j, j+N, j+2N, ... for N = n_phases:
///
///   P_j(mu) = sum_k mu^(kN+j) e^(-mu) / (kN+j)!
///
/// Result is in [0, 1]. Throws std::domain_error for j outside [0, N) and
/// numeric_error if the series fails to converge within the policy cap.
double class_prob(double mu, int n_phases, int j,
                  const SeriesPolicy& policy = {});

/// Class-j probability for a matched-phase decoy pulse pair where each arm
/// has intensity mu_x. Equals class_prob(2 * mu_x, n_phases, j).
double pair_class_prob(double mu_x, int n_phases, int j,
                       const SeriesPolicy& policy = {});

/// Fidelity between the class-j states of two phase-randomized sources with
/// intensities mu_a and mu_b. Clamped into [0, 1]; exactly 1 when
/// mu_a == mu_b. Throws std::domain_error when either class state has zero
/// norm (intensity 0 with j > 0).
double fidelity_lambda(double mu_a, double mu_b, int n_phases, int j,
                       const SeriesPolicy& policy = {});

/// Fidelity between the class-0 state at intensity mu and the vacuum:
/// 1 / sqrt(sum_k mu^(kN) / (kN)!).
double vacuum_fidelity(double mu, int n_phases,
                       const SeriesPolicy& policy = {});

/// Fidelity between the class-0 matched-phase pair state at per-arm
/// intensity mu_x and the two-mode vacuum. Equals vacuum_fidelity(2 * mu_x).
double pair_vacuum_fidelity(double mu_x, int n_phases,
                            const SeriesPolicy& policy = {});

/// Fidelity between the class-1 states of the stronger decoy source (mu_y)
/// and the signal source (mu_z). Exactly 1 when mu_y == mu_z, which is the
/// 3-intensity special case.
double signal_class1_fidelity(double mu_y, double mu_z, int n_phases,
                              const SeriesPolicy& policy = {});

/// Fidelity between the class-1 decoy pair state with phase offset index q
/// (per-arm intensity mu_x) and the even/odd single-send superposition of the
/// signal source (intensity mu_z):
///
///   Re   = (1/sqrt2) sum_k g^(kN+1)/(kN+1)! [1 +- cos(2 pi q (kN+1) / N)]
///   Im   = (1/sqrt2) sum_k g^(kN+1)/(kN+1)!  sin(2 pi q (kN+1) / N)
///   F    = sqrt(Re^2 + Im^2)
///          / sqrt(sum_k (2 mu_x)^(kN+1)/(kN+1)! sum_k mu_z^(kN+1)/(kN+1)!)
///
/// with g = sqrt(mu_x mu_z). Note q (kN+1) = q (mod N), so the angle is the
/// same for every term. Clamped into [0, 1]; exactly 0 for (odd, q = 0).
double class1_pair_fidelity(double mu_x, double mu_z, int n_phases, int q,
                            Parity parity, const SeriesPolicy& policy = {});

/// True iff the decreasing-ratio condition holds for the intensity pair:
///   P_1(mu_x)/P_1(mu_y) >= P_2(mu_x)/P_2(mu_y) >= P_j(mu_x)/P_j(mu_y)
/// for all j = 3..N-1. The analytic yield bounds are only valid under this
/// condition. Requires 0 < mu_x <= mu_y and n_phases >= 4.
bool ratio_condition_holds(double mu_x, double mu_y, int n_phases,
                           const SeriesPolicy& policy = {});

/// Upper bound on the total yield mismatch between the two decoy sources:
/// sum_j P_j(mu_x) sqrt(1 - F_j^2) over all classes, where F_j is the
/// class-j fidelity between the mu_x and mu_y sources. Exactly 0 when
/// mu_x == mu_y.
double class_mismatch_upper(double mu_x, double mu_y, int n_phases,
                            const SeriesPolicy& policy = {});

/// Binary Shannon entropy in bits, with 0 log 0 := 0. Throws
/// std::domain_error outside [0, 1].
double binary_entropy(double x);

}  // namespace snsqkd
