#include "snsqkd/decoy.hpp"

#include <algorithm>
#include <cmath>

#include "snsqkd/errors.hpp"
#include "snsqkd/series.hpp"

namespace snsqkd {

namespace {

double slack(double fidelity) {
    return std::sqrt(std::max(0.0, 1.0 - fidelity * fidelity));
}

struct YieldExtraction {
    double p0x, p1x, p2x;
    double p0y, p1y, p2y;
    double denom;        // P_1(mu_x) P_2(mu_y) - P_1(mu_y) P_2(mu_x)
    double vac_coeff;    // P_0(mu_x) P_2(mu_y) - P_0(mu_y) P_2(mu_x)
    double vac_slack;    // sqrt(1 - F_0^2)
    double class1_slack; // sqrt(1 - F_1^2)
    double mismatch;     // upper bound on the source-mismatch shift
};

YieldExtraction make_extraction(const ProtocolParams& p,
                                const SeriesPolicy& policy) {
    p.validate();
    if (!ratio_condition_holds(p.mu_x, p.mu_y, p.n_phases, policy))
        throw validity_error("decreasing-ratio condition violated");
    YieldExtraction e{};
    e.p0x = class_prob(p.mu_x, p.n_phases, 0, policy);
    e.p1x = class_prob(p.mu_x, p.n_phases, 1, policy);
    e.p2x = class_prob(p.mu_x, p.n_phases, 2, policy);
    e.p0y = class_prob(p.mu_y, p.n_phases, 0, policy);
    e.p1y = class_prob(p.mu_y, p.n_phases, 1, policy);
    e.p2y = class_prob(p.mu_y, p.n_phases, 2, policy);
    e.denom = e.p1x * e.p2y - e.p1y * e.p2x;
    if (!(e.denom > 0.0))
        throw validity_error("non-positive yield-extraction denominator");
    e.vac_coeff = e.p0x * e.p2y - e.p0y * e.p2x;
    e.vac_slack = slack(vacuum_fidelity(p.mu_y, p.n_phases, policy));
    e.class1_slack =
        slack(signal_class1_fidelity(p.mu_y, p.mu_z, p.n_phases, policy));
    e.mismatch = class_mismatch_upper(p.mu_x, p.mu_y, p.n_phases, policy);
    return e;
}

double yield_lower(const YieldExtraction& e, double s_weak, double s_strong,
                   double s_oo) {
    const double num = e.p2y * s_weak - e.p2x * s_strong -
                       e.vac_coeff * (s_oo + e.vac_slack) - e.p2y * e.mismatch;
    return std::max(0.0, num / e.denom - e.class1_slack);
}

double click_upper(const ProtocolParams& p, const SeriesPolicy& policy,
                   double t_observed, double t_vacuum, int q, Parity parity) {
    p.validate();
    const double px0 = pair_class_prob(p.mu_x, p.n_phases, 0, policy);
    const double px1 = pair_class_prob(p.mu_x, p.n_phases, 1, policy);
    const double vac_slack =
        slack(pair_vacuum_fidelity(p.mu_x, p.n_phases, policy));
    const double pair_slack = slack(class1_pair_fidelity(
        p.mu_x, p.mu_z, p.n_phases, q, parity, policy));
    const double v =
        (t_observed - px0 * (t_vacuum - vac_slack)) / px1 + pair_slack;
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace

bool bounds_feasible(const ProtocolParams& p, const SeriesPolicy& policy) {
    p.validate();
    if (!ratio_condition_holds(p.mu_x, p.mu_y, p.n_phases, policy))
        return false;
    const double denom =
        class_prob(p.mu_x, p.n_phases, 1, policy) *
            class_prob(p.mu_y, p.n_phases, 2, policy) -
        class_prob(p.mu_y, p.n_phases, 1, policy) *
            class_prob(p.mu_x, p.n_phases, 2, policy);
    return denom > 0.0;
}

double s01_lower(const ObservedRates& obs, const ProtocolParams& p,
                 const SeriesPolicy& policy) {
    obs.validate();
    const auto e = make_extraction(p, policy);
    return yield_lower(e, obs.s_ox, obs.s_oy, obs.s_oo);
}

double s10_lower(const ObservedRates& obs, const ProtocolParams& p,
                 const SeriesPolicy& policy) {
    obs.validate();
    const auto e = make_extraction(p, policy);
    return yield_lower(e, obs.s_xo, obs.s_yo, obs.s_oo);
}

double t0r_upper(const ObservedRates& obs, const ProtocolParams& p,
                 const SeriesPolicy& policy) {
    obs.validate();
    return click_upper(p, policy, obs.t_plus_r, obs.t_00, 0, Parity::even);
}

double t1l_upper(const ObservedRates& obs, const ProtocolParams& p,
                 const SeriesPolicy& policy) {
    obs.validate();
    return click_upper(p, policy, obs.t_minus_l, obs.t_00p, p.n_phases / 2,
                       Parity::odd);
}

double phase_error_upper(double s01_l, double s10_l, double t0r_u,
                         double t1l_u) {
    const double denom = s01_l + s10_l;
    if (!(denom > 0.0)) return 0.5;
    return std::min(0.5, (t0r_u + t1l_u) / denom);
}

DecoyBounds compute_bounds(const ObservedRates& obs, const ProtocolParams& p,
                           const SeriesPolicy& policy) {
    obs.validate();
    const auto e = make_extraction(p, policy);
    DecoyBounds b;
    b.s01_l = yield_lower(e, obs.s_ox, obs.s_oy, obs.s_oo);
    b.s10_l = yield_lower(e, obs.s_xo, obs.s_yo, obs.s_oo);
    b.s1_l = 0.5 * (b.s01_l + b.s10_l);
    b.t0r_u = click_upper(p, policy, obs.t_plus_r, obs.t_00, 0, Parity::even);
    b.t1l_u = click_upper(p, policy, obs.t_minus_l, obs.t_00p,
                          p.n_phases / 2, Parity::odd);
    b.eph_u = phase_error_upper(b.s01_l, b.s10_l, b.t0r_u, b.t1l_u);
    return b;
}

double key_rate(const ProtocolParams& p, const ObservedRates& obs,
                const DecoyBounds& bounds, const SeriesPolicy& policy) {
    p.validate();
    obs.validate();
    const double p1z = class_prob(p.mu_z, p.n_phases, 1, policy);
    const double secret = 2.0 * p.epsilon * (1.0 - p.epsilon) * p1z *
                          bounds.s1_l * (1.0 - binary_entropy(bounds.eph_u));
    const double correction = obs.s_z * p.f * binary_entropy(obs.e_z);
    return std::max(0.0, secret - correction);
}

}  // namespace snsqkd
