#include "snsqkd/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "snsqkd/series.hpp"

namespace snsqkd {

double arm_transmittance(const ChannelParams& ch) {
    ch.validate();
    return ch.eta_d *
           std::pow(10.0, -ch.alpha_db_per_km * (ch.length_km / 2.0) / 10.0);
}

ClickOutcome click_probs_coherent(double x, double y, double theta,
                                  const ChannelParams& ch) {
    ch.validate();
    if (!(std::isfinite(x) && x >= 0.0 && std::isfinite(y) && y >= 0.0))
        throw std::domain_error("received intensities must be >= 0");
    const double mean = 0.5 * (x + y);
    const double cross =
        (1.0 - 2.0 * ch.e_d) * std::sqrt(x * y) * std::cos(theta);
    const double i_left = mean + cross;
    const double i_right = mean - cross;
    const double p_left = 1.0 - (1.0 - ch.p_d) * std::exp(-i_left);
    const double p_right = 1.0 - (1.0 - ch.p_d) * std::exp(-i_right);
    return {p_left * (1.0 - p_right), p_right * (1.0 - p_left)};
}

ObservedRates simulate_observables(const ProtocolParams& p,
                                   const ChannelParams& ch) {
    p.validate();
    const double eta = arm_transmittance(ch);
    const auto one_det = [&](double x, double y, double theta) {
        return click_probs_coherent(x, y, theta, ch).one_detector();
    };

    ObservedRates obs;
    obs.s_oo = one_det(0.0, 0.0, 0.0);
    obs.s_ox = one_det(0.0, eta * p.mu_x, 0.0);
    obs.s_oy = one_det(0.0, eta * p.mu_y, 0.0);
    obs.s_xo = one_det(eta * p.mu_x, 0.0, 0.0);
    obs.s_yo = one_det(eta * p.mu_y, 0.0, 0.0);

    const ClickOutcome matched =
        click_probs_coherent(eta * p.mu_x, eta * p.mu_x, 0.0, ch);
    const ClickOutcome anti = click_probs_coherent(eta * p.mu_x, eta * p.mu_x,
                                                   std::numbers::pi, ch);
    obs.t_plus_r = matched.p_right_only;
    obs.t_minus_l = anti.p_left_only;
    const ClickOutcome vac = click_probs_coherent(0.0, 0.0, 0.0, ch);
    obs.t_00 = vac.p_right_only;
    obs.t_00p = vac.p_left_only;

    double both_send_avg = 0.0;
    for (int d = 0; d < p.n_phases; ++d) {
        const double theta = 2.0 * std::numbers::pi * d / p.n_phases;
        both_send_avg += one_det(eta * p.mu_z, eta * p.mu_z, theta);
    }
    both_send_avg /= p.n_phases;

    const double eps = p.epsilon;
    const double none = (1.0 - eps) * (1.0 - eps) * obs.s_oo;
    const double single = eps * (1.0 - eps) *
                          (one_det(eta * p.mu_z, 0.0, 0.0) +
                           one_det(0.0, eta * p.mu_z, 0.0));
    const double both = eps * eps * both_send_avg;
    obs.s_z = none + single + both;
    obs.e_z = obs.s_z > 0.0 ? (none + both) / obs.s_z : 0.0;
    return obs;
}

double plob_bound(const ChannelParams& ch, bool include_detector) {
    ch.validate();
    double eta_tot =
        std::pow(10.0, -ch.alpha_db_per_km * ch.length_km / 10.0);
    if (include_detector) eta_tot *= ch.eta_d;
    if (eta_tot >= 1.0) return std::numeric_limits<double>::infinity();
    return -std::log2(1.0 - eta_tot);
}

}  // namespace snsqkd
