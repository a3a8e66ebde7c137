#include "snsqkd/lp.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "snsqkd/errors.hpp"
#include "snsqkd/series.hpp"

namespace snsqkd {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr int kMaxIters = 50000;

struct Tableau {
    int rows, cols;  // constraint rows, total columns (incl. rhs)
    std::vector<std::vector<double>> t;
    std::vector<int> basis;        // basic variable per row
    int art_begin;                 // first artificial column
    std::vector<double> sign;      // row sign flips applied to reach b >= 0

    double& rhs(int r) { return t[r][cols - 1]; }
};

// Bland's rule on the cost row `z`. Columns in [0, limit) are eligible.
int entering_column(const std::vector<double>& z, int limit) {
    for (int j = 0; j < limit; ++j)
        if (z[j] < -kPivotTol) return j;
    return -1;
}

void pivot(Tableau& tb, std::vector<double>& z, int row, int col) {
    const double piv = tb.t[row][col];
    for (double& v : tb.t[row]) v /= piv;
    for (int r = 0; r < tb.rows; ++r) {
        if (r == row) continue;
        const double factor = tb.t[r][col];
        if (factor == 0.0) continue;
        for (int j = 0; j < tb.cols; ++j) tb.t[r][j] -= factor * tb.t[row][j];
    }
    const double zf = z[col];
    if (zf != 0.0)
        for (int j = 0; j < tb.cols; ++j) z[j] -= zf * tb.t[row][j];
    tb.basis[row] = col;
}

// Returns false when the program is unbounded in this direction.
bool simplex_iterate(Tableau& tb, std::vector<double>& z, int col_limit) {
    for (int iter = 0; iter < kMaxIters; ++iter) {
        const int col = entering_column(z, col_limit);
        if (col < 0) return true;
        int row = -1;
        double best_ratio = 0.0;
        for (int r = 0; r < tb.rows; ++r) {
            const double a = tb.t[r][col];
            if (a <= kPivotTol) continue;
            const double ratio = tb.rhs(r) / a;
            if (row < 0 || ratio < best_ratio - kPivotTol ||
                (std::abs(ratio - best_ratio) <= kPivotTol &&
                 tb.basis[r] < tb.basis[row])) {
                row = r;
                best_ratio = ratio;
            }
        }
        if (row < 0) return false;
        pivot(tb, z, row, col);
    }
    throw numeric_error("simplex iteration cap exceeded");
}

}  // namespace

LpSolution solve_lp(const DenseLp& lp) {
    const int n = lp.num_vars;
    const int m_eq = static_cast<int>(lp.eq_rows.size());
    const int m_le = static_cast<int>(lp.le_rows.size());
    const int m = m_eq + m_le;
    const int n_slack = m_le;
    const int art_begin = n + n_slack;
    const int cols = art_begin + m + 1;  // + rhs

    Tableau tb;
    tb.rows = m;
    tb.cols = cols;
    tb.art_begin = art_begin;
    tb.t.assign(m, std::vector<double>(cols, 0.0));
    tb.basis.assign(m, -1);
    tb.sign.assign(m, 1.0);

    for (int r = 0; r < m; ++r) {
        const bool is_eq = r < m_eq;
        const auto& row = is_eq ? lp.eq_rows[r] : lp.le_rows[r - m_eq];
        double b = is_eq ? lp.eq_rhs[r] : lp.le_rhs[r - m_eq];
        double s = 1.0;
        if (b < 0.0) {
            s = -1.0;
            b = -b;
        }
        tb.sign[r] = s;
        for (int j = 0; j < n; ++j) tb.t[r][j] = s * row[j];
        if (!is_eq) tb.t[r][n + (r - m_eq)] = s;  // slack
        tb.t[r][art_begin + r] = 1.0;
        tb.rhs(r) = b;
        tb.basis[r] = art_begin + r;
    }

    // Phase 1: drive the artificial variables to zero. Reduced costs for
    // the non-artificial columns are -(column sums); artificials never
    // re-enter, so their entries are not consulted.
    std::vector<double> z(cols, 0.0);
    for (int r = 0; r < m; ++r)
        for (int j = 0; j < cols; ++j) z[j] -= tb.t[r][j];
    if (!simplex_iterate(tb, z, art_begin))
        throw numeric_error("phase-1 simplex unbounded");
    double infeas = 0.0;
    for (int r = 0; r < m; ++r)
        if (tb.basis[r] >= art_begin) infeas += tb.rhs(r);
    if (infeas > kFeasTol)
        throw validity_error("LP infeasible: observations admit no yields");

    // Pivot any degenerate artificial out of the basis where possible.
    for (int r = 0; r < m; ++r) {
        if (tb.basis[r] < art_begin) continue;
        for (int j = 0; j < art_begin; ++j) {
            if (std::abs(tb.t[r][j]) > kPivotTol) {
                pivot(tb, z, r, j);
                break;
            }
        }
    }

    // Phase 2: the real objective, artificial columns barred from entering.
    std::vector<double> z2(cols, 0.0);
    for (int j = 0; j < n; ++j) z2[j] = lp.objective[j];
    for (int r = 0; r < m; ++r) {
        const int b = tb.basis[r];
        if (b < n && lp.objective[b] != 0.0) {
            const double cb = lp.objective[b];
            for (int j = 0; j < cols; ++j) z2[j] -= cb * tb.t[r][j];
        }
    }
    if (!simplex_iterate(tb, z2, art_begin))
        throw numeric_error("phase-2 simplex unbounded");

    LpSolution sol;
    sol.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r)
        if (tb.basis[r] < n) sol.x[tb.basis[r]] = tb.rhs(r);
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];

    // Duals: the reduced cost of artificial column i is -y_i, with the row
    // sign flip mapped back to the original orientation.
    sol.dual_eq.assign(m_eq, 0.0);
    sol.dual_le.assign(m_le, 0.0);
    for (int r = 0; r < m; ++r) {
        const double y = -z2[art_begin + r] * tb.sign[r];
        if (r < m_eq)
            sol.dual_eq[r] = y;
        else
            sol.dual_le[r - m_eq] = y;
    }
    return sol;
}

DenseLp build_s1_lp(const ObservedRates& obs, const ProtocolParams& p,
                    const SeriesPolicy& policy) {
    obs.validate();
    p.validate();
    const int n_ph = p.n_phases;

    // Variable layout: yields of (vacuum, class-j) and (class-j, vacuum)
    // pairs for each decoy intensity, then the two signal-state yields.
    const int vx = 0;            // Y_vj^x
    const int vy = n_ph;         // Y_vj^y
    const int xv = 2 * n_ph;     // Y_jv^x
    const int yv = 3 * n_ph;     // Y_jv^y
    const int s01 = 4 * n_ph;
    const int s10 = 4 * n_ph + 1;
    const int n_vars = 4 * n_ph + 2;

    DenseLp lp;
    lp.num_vars = n_vars;
    lp.objective.assign(n_vars, 0.0);
    lp.objective[s01] = 0.5;
    lp.objective[s10] = 0.5;

    std::vector<double> pjx(n_ph), pjy(n_ph);
    for (int j = 0; j < n_ph; ++j) {
        pjx[j] = class_prob(p.mu_x, n_ph, j, policy);
        pjy[j] = class_prob(p.mu_y, n_ph, j, policy);
    }

    const auto expansion = [&](int base, const std::vector<double>& w,
                               double rhs) {
        std::vector<double> row(n_vars, 0.0);
        for (int j = 0; j < n_ph; ++j) row[base + j] = w[j];
        lp.eq_rows.push_back(std::move(row));
        lp.eq_rhs.push_back(rhs);
    };
    expansion(vx, pjx, obs.s_ox);
    expansion(vy, pjy, obs.s_oy);
    expansion(xv, pjx, obs.s_xo);
    expansion(yv, pjy, obs.s_yo);

    const auto corridor = [&](int a, int b, double rhs_a_minus_b,
                              double width) {
        // |x_a - x_b - shift| <= width as two le rows; b < 0 means constant.
        std::vector<double> up(n_vars, 0.0), dn(n_vars, 0.0);
        up[a] = 1.0;
        dn[a] = -1.0;
        if (b >= 0) {
            up[b] = -1.0;
            dn[b] = 1.0;
        }
        lp.le_rows.push_back(std::move(up));
        lp.le_rhs.push_back(width + rhs_a_minus_b);
        lp.le_rows.push_back(std::move(dn));
        lp.le_rhs.push_back(width - rhs_a_minus_b);
    };

    const double f0 = vacuum_fidelity(p.mu_y, n_ph, policy);
    const double w0 = std::sqrt(std::max(0.0, 1.0 - f0 * f0));
    corridor(vy + 0, -1, obs.s_oo, w0);  // |Y_v0^y - S_oo| <= w0
    corridor(yv + 0, -1, obs.s_oo, w0);  // |Y_0v^y - S_oo| <= w0

    for (int j = 0; j < n_ph; ++j) {
        const double fj = fidelity_lambda(p.mu_x, p.mu_y, n_ph, j, policy);
        const double wj = std::sqrt(std::max(0.0, 1.0 - fj * fj));
        corridor(vx + j, vy + j, 0.0, wj);
        corridor(xv + j, yv + j, 0.0, wj);
    }

    const double f1 = signal_class1_fidelity(p.mu_y, p.mu_z, n_ph, policy);
    const double w1 = std::sqrt(std::max(0.0, 1.0 - f1 * f1));
    corridor(s01, vy + 1, 0.0, w1);
    corridor(s10, yv + 1, 0.0, w1);

    for (int j = 0; j < n_vars; ++j) {
        std::vector<double> row(n_vars, 0.0);
        row[j] = 1.0;
        lp.le_rows.push_back(std::move(row));
        lp.le_rhs.push_back(1.0);
    }
    return lp;
}

double lp_s1_lower(const ObservedRates& obs, const ProtocolParams& p,
                   const SeriesPolicy& policy) {
    return solve_lp(build_s1_lp(obs, p, policy)).objective;
}

}  // namespace snsqkd
