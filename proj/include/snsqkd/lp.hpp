#pragma once

#include <vector>

#include "snsqkd/types.hpp"

namespace snsqkd {

/// Dense LP in the split form
///   min c'x  s.t.  eq_rows x = eq_rhs,  le_rows x <= le_rhs,  x >= 0.
/// Upper bounds on variables are ordinary le rows.
struct DenseLp {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<std::vector<double>> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<std::vector<double>> le_rows;
    std::vector<double> le_rhs;
};

/// Optimal solution with the dual certificate. For a minimum, the duals
/// satisfy eq_rows' u + le_rows' w <= c componentwise with w <= 0, and
/// eq_rhs' u + le_rhs' w equals the primal objective.
struct LpSolution {
    double objective = 0;
    std::vector<double> x;
    std::vector<double> dual_eq;
    std::vector<double> dual_le;
};

/// Two-phase dense simplex with Bland's rule (deterministic). Throws
/// validity_error if the program is infeasible and numeric_error if the
/// iteration cap is hit.
LpSolution solve_lp(const DenseLp& lp);

/// The yield lower-bound program for one observation set: variables are the
/// per-class yields of both decoy intensities on each side plus the two
/// class-1 signal-state yields, objective min (s01 + s10) / 2, constraints
/// the four yield expansions, the vacuum and per-class trace-distance
/// corridors, the class-1 signal links, and [0, 1] boxes.
DenseLp build_s1_lp(const ObservedRates& obs, const ProtocolParams& p,
                    const SeriesPolicy& policy = {});

/// LP lower bound on s_1 = (s01 + s10) / 2; at least as tight as the
/// analytic bound. Throws validity_error when the observations are
/// inconsistent with any yield assignment.
double lp_s1_lower(const ObservedRates& obs, const ProtocolParams& p,
                   const SeriesPolicy& policy = {});

}  // namespace snsqkd
