#include "snsqkd/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "snsqkd/errors.hpp"
#include "snsqkd/series.hpp"

namespace snsqkd {

namespace {

constexpr double kTailBudget = 1e-10;

long double log_factorial_ld(int n) {
    long double acc = 0.0L;
    for (int i = 2; i <= n; ++i) acc += std::log(static_cast<long double>(i));
    return acc;
}

// Pascal triangle up to row n, exact in long double (entries < 2^64).
std::vector<std::vector<long double>> binomials_ld(int n) {
    std::vector<std::vector<long double>> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        c[i].assign(i + 1, 1.0L);
        for (int k = 1; k < i; ++k) c[i][k] = c[i - 1][k - 1] + c[i - 1][k];
    }
    return c;
}

// B(n, a) = C(n, a) eta^a (1-eta)^(n-a) for all n, a <= n_top.
std::vector<std::vector<double>> thinning_table(int n_top, double eta) {
    const auto binom = binomials_ld(n_top);
    std::vector<std::vector<double>> b(n_top + 1);
    for (int n = 0; n <= n_top; ++n) {
        b[n].assign(n + 1, 0.0);
        for (int a = 0; a <= n; ++a) {
            b[n][a] = static_cast<double>(binom[n][a]) * std::pow(eta, a) *
                      std::pow(1.0 - eta, n - a);
        }
    }
    return b;
}

}  // namespace

double FockState2::norm2() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s;
}

std::vector<std::complex<double>> coherent_amplitudes(double mu, double theta,
                                                      int n_max) {
    if (!(std::isfinite(mu) && mu >= 0.0))
        throw std::domain_error("coherent intensity must be >= 0");
    if (n_max < 0) throw std::domain_error("n_max must be >= 0");
    std::vector<std::complex<double>> c(n_max + 1);
    const std::complex<double> alpha =
        std::sqrt(mu) * std::exp(std::complex<double>(0.0, theta));
    c[0] = std::exp(-mu / 2.0);
    double norm = std::norm(c[0]);
    for (int n = 1; n <= n_max; ++n) {
        c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
        norm += std::norm(c[n]);
    }
    const double tail = 1.0 - norm;
    if (tail >= kTailBudget)
        throw numeric_error("coherent state tail beyond n_max exceeds budget");
    const double scale = 1.0 / std::sqrt(norm);
    for (auto& a : c) a *= scale;
    return c;
}

std::vector<double> photon_class_amplitudes(double mu, int n_phases, int j,
                                            int n_max) {
    validate_phase_count(n_phases);
    if (j < 0 || j >= n_phases)
        throw std::domain_error("class index j must satisfy 0 <= j < n_phases");
    if (!(std::isfinite(mu) && mu > 0.0))
        throw std::domain_error("class state needs intensity > 0");
    if (n_max < j) throw numeric_error("n_max below the first class term");

    std::vector<double> c(n_max + 1, 0.0);
    long double norm = 0.0L;
    const long double log_mu = std::log(static_cast<long double>(mu));
    for (int n = j; n <= n_max; n += n_phases) {
        const long double log_w = 0.5L * (n * log_mu - log_factorial_ld(n));
        const long double w = std::exp(log_w);
        c[n] = static_cast<double>(w);
        norm += w * w;
    }
    // Relative tail of the untruncated class series.
    long double full = norm;
    long double log_w_next = 0.0L;
    for (int n = n_max + 1; n <= n_max + 8 * n_phases; ++n) {
        if ((n - j) % n_phases != 0) continue;
        log_w_next = n * log_mu - log_factorial_ld(n);
        full += std::exp(log_w_next);
    }
    if (norm <= 0.0L || (full - norm) / full >= kTailBudget)
        throw numeric_error("class state tail beyond n_max exceeds budget");
    const double scale = 1.0 / std::sqrt(static_cast<double>(norm));
    for (auto& a : c) a *= scale;
    return c;
}

FockState2 product_state(const std::vector<std::complex<double>>& mode_a,
                         const std::vector<std::complex<double>>& mode_b) {
    if (mode_a.size() != mode_b.size())
        throw std::domain_error("mode vectors must share one dimension");
    FockState2 st(static_cast<int>(mode_a.size()));
    for (int na = 0; na < st.dim; ++na)
        for (int nb = 0; nb < st.dim; ++nb)
            st.at(na, nb) = mode_a[na] * mode_b[nb];
    return st;
}

FockState2 coherent_pair_state(double mu_a, double theta_a, double mu_b,
                               double theta_b, int n_max) {
    return product_state(coherent_amplitudes(mu_a, theta_a, n_max),
                         coherent_amplitudes(mu_b, theta_b, n_max));
}

std::vector<std::vector<double>> balanced_bs_sector_matrix(int total_photons) {
    const int s = total_photons;
    if (s < 0) throw std::domain_error("photon number must be >= 0");
    const auto binom = binomials_ld(s);
    std::vector<long double> lf(s + 1);
    for (int i = 1; i <= s; ++i)
        lf[i] = lf[i - 1] + std::log(static_cast<long double>(i));
    const long double log2l = std::log(2.0L);

    std::vector<std::vector<double>> m(s + 1, std::vector<double>(s + 1, 0.0));
    for (int k = 0; k <= s; ++k) {
        for (int n = 0; n <= s; ++n) {
            const int mm = s - n;
            // Alternating binomial sum is exact: all partial values < 2^63.
            long double kr = 0.0L;
            const int lo = std::max(0, k - mm);
            const int hi = std::min(n, k);
            for (int i = lo; i <= hi; ++i) {
                const long double term = binom[n][i] * binom[mm][k - i];
                kr += ((mm - k + i) % 2 == 0) ? term : -term;
            }
            const long double log_norm =
                0.5L * (lf[k] + lf[s - k] - lf[n] - lf[mm] - s * log2l);
            m[k][n] = static_cast<double>(kr * std::exp(log_norm));
        }
    }
    return m;
}

ClickOutcome oracle_detect(const FockState2& input, const ChannelParams& ch) {
    ch.validate();
    if (input.dim <= 0) throw std::domain_error("empty state");
    if (std::abs(input.norm2() - 1.0) > kTailBudget)
        throw numeric_error("input state norm deviates beyond tail budget");

    const int dim = input.dim;
    const int s_top = 2 * (dim - 1);
    const double eta = arm_transmittance(ch);

    // Interfere, then collect the joint photon-number distribution. The
    // output of sector S spans photon splits (k, S-k) with k up to S, which
    // exceeds the per-mode input cutoff.
    std::vector<std::vector<double>> pmf(s_top + 1);
    for (int s = 0; s <= s_top; ++s) {
        pmf[s].assign(s + 1, 0.0);
        const int n_lo = std::max(0, s - (dim - 1));
        const int n_hi = std::min(s, dim - 1);
        if (n_lo > n_hi) continue;
        const auto m = balanced_bs_sector_matrix(s);
        for (int k = 0; k <= s; ++k) {
            std::complex<double> w{0.0, 0.0};
            for (int n = n_lo; n <= n_hi; ++n)
                w += m[k][n] * input.at(n, s - n);
            pmf[s][k] = std::norm(w);
        }
    }

    // Equal-transmittance loss on both modes commutes with the beamsplitter;
    // apply it as binomial thinning of the interfered distribution.
    const auto thin = thinning_table(s_top, eta);
    std::vector<std::vector<double>> grid(
        s_top + 1, std::vector<double>(s_top + 1, 0.0));
    for (int s = 0; s <= s_top; ++s) {
        for (int k = 0; k <= s; ++k) {
            const double p = pmf[s][k];
            if (p == 0.0) continue;
            const int l = s - k;
            for (int a = 0; a <= k; ++a) {
                const double pa = p * thin[k][a];
                for (int b = 0; b <= l; ++b) grid[a][b] += pa * thin[l][b];
            }
        }
    }

    const double vac_vac = grid[0][0];
    double left_nonzero = 0.0;   // left >= 1 photon, right 0
    double right_nonzero = 0.0;  // left 0, right >= 1 photon
    for (int a = 1; a <= s_top; ++a) left_nonzero += grid[a][0];
    for (int b = 1; b <= s_top; ++b) right_nonzero += grid[0][b];

    // Mode-swap misalignment, then threshold detectors with dark counts.
    const double left_mix =
        (1.0 - ch.e_d) * left_nonzero + ch.e_d * right_nonzero;
    const double right_mix =
        (1.0 - ch.e_d) * right_nonzero + ch.e_d * left_nonzero;
    ClickOutcome out;
    out.p_left_only = (1.0 - ch.p_d) * (left_mix + ch.p_d * vac_vac);
    out.p_right_only = (1.0 - ch.p_d) * (right_mix + ch.p_d * vac_vac);
    return out;
}

UntaggedTruth untagged_ground_truth(const ProtocolParams& p,
                                    const ChannelParams& ch, int n_max) {
    p.validate();
    const auto lam = photon_class_amplitudes(p.mu_z, p.n_phases, 1, n_max);
    std::vector<std::complex<double>> lam_c(lam.begin(), lam.end());
    std::vector<std::complex<double>> vac(lam.size());
    vac[0] = 1.0;

    const FockState2 vac_lam = product_state(vac, lam_c);
    const FockState2 lam_vac = product_state(lam_c, vac);
    FockState2 even(vac_lam.dim);
    FockState2 odd(vac_lam.dim);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < even.amp.size(); ++i) {
        even.amp[i] = inv_sqrt2 * (vac_lam.amp[i] + lam_vac.amp[i]);
        odd.amp[i] = inv_sqrt2 * (vac_lam.amp[i] - lam_vac.amp[i]);
    }

    UntaggedTruth truth;
    truth.s01 = oracle_detect(vac_lam, ch).one_detector();
    truth.s10 = oracle_detect(lam_vac, ch).one_detector();
    truth.t0r = oracle_detect(even, ch).p_right_only;
    truth.t1l = oracle_detect(odd, ch).p_left_only;
    const double denom = truth.s01 + truth.s10;
    truth.eph = denom > 0.0 ? (truth.t0r + truth.t1l) / denom : 0.0;
    return truth;
}

ObservedRates oracle_observables(const ProtocolParams& p,
                                 const ChannelParams& ch, int n_max) {
    p.validate();
    const auto pair = [&](double mu_a, double mu_b, double theta) {
        return oracle_detect(coherent_pair_state(mu_a, 0.0, mu_b, theta, n_max),
                             ch);
    };

    ObservedRates obs;
    const ClickOutcome vac = pair(0.0, 0.0, 0.0);
    obs.s_oo = vac.one_detector();
    obs.t_00 = vac.p_right_only;
    obs.t_00p = vac.p_left_only;
    obs.s_ox = pair(0.0, p.mu_x, 0.0).one_detector();
    obs.s_oy = pair(0.0, p.mu_y, 0.0).one_detector();
    obs.s_xo = pair(p.mu_x, 0.0, 0.0).one_detector();
    obs.s_yo = pair(p.mu_y, 0.0, 0.0).one_detector();
    obs.t_plus_r = pair(p.mu_x, p.mu_x, 0.0).p_right_only;
    obs.t_minus_l = pair(p.mu_x, p.mu_x, std::numbers::pi).p_left_only;

    double both_send_avg = 0.0;
    for (int d = 0; d < p.n_phases; ++d) {
        const double theta = 2.0 * std::numbers::pi * d / p.n_phases;
        both_send_avg += pair(p.mu_z, p.mu_z, theta).one_detector();
    }
    both_send_avg /= p.n_phases;

    const double eps = p.epsilon;
    const double none = (1.0 - eps) * (1.0 - eps) * obs.s_oo;
    const double single =
        eps * (1.0 - eps) *
        (pair(p.mu_z, 0.0, 0.0).one_detector() +
         pair(0.0, p.mu_z, 0.0).one_detector());
    const double both = eps * eps * both_send_avg;
    obs.s_z = none + single + both;
    obs.e_z = obs.s_z > 0.0 ? (none + both) / obs.s_z : 0.0;
    return obs;
}

}  // namespace snsqkd
