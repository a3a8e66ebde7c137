#include "snsqkd/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "snsqkd/channel.hpp"
#include "snsqkd/decoy.hpp"
#include "snsqkd/errors.hpp"

namespace snsqkd {

namespace {

struct Candidate {
    ProtocolParams params;
    double rate = -1.0;
    ObservedRates obs;
    DecoyBounds bounds;
};

bool lex_less(const ProtocolParams& a, const ProtocolParams& b) {
    if (a.mu_x != b.mu_x) return a.mu_x < b.mu_x;
    if (a.mu_y != b.mu_y) return a.mu_y < b.mu_y;
    if (a.mu_z != b.mu_z) return a.mu_z < b.mu_z;
    return a.epsilon < b.epsilon;
}

bool better(const Candidate& a, const Candidate& b) {
    if (a.rate != b.rate) return a.rate > b.rate;
    return lex_less(a.params, b.params);
}

// Evaluates one parameter vector; nullopt when the candidate is outside the
// feasible region (mu ordering or analytic-bound validity).
std::optional<Candidate> evaluate(const ChannelParams& ch,
                                  const OptimizationSpec& spec, double mu_x,
                                  double mu_y, double mu_z, double eps) {
    if (!(mu_x < mu_y)) return std::nullopt;
    Candidate c;
    c.params = ProtocolParams{spec.n_phases, mu_x, mu_y, mu_z, eps, spec.f};
    try {
        c.obs = simulate_observables(c.params, ch);
        c.bounds = compute_bounds(c.obs, c.params, spec.policy);
        c.rate = key_rate(c.params, c.obs, c.bounds, spec.policy);
    } catch (const validity_error&) {
        return std::nullopt;
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    return c;
}

std::vector<double> log_grid(const ParamRange& r, int steps) {
    std::vector<double> g;
    if (steps <= 1 || r.lo == r.hi) {
        g.push_back(r.lo);
        return g;
    }
    const double ratio = std::log(r.hi / r.lo);
    for (int i = 0; i < steps; ++i)
        g.push_back(r.lo * std::exp(ratio * i / (steps - 1)));
    return g;
}

// Pattern search over log coordinates with pinned or free mu_z. Dimensions:
// u = (ln mu_x, ln mu_y, [ln mu_z,] ln eps).
Candidate refine(const ChannelParams& ch, const OptimizationSpec& spec,
                 Candidate best, bool pin_mu_z) {
    const int dims = pin_mu_z ? 3 : 4;
    const std::array<ParamRange, 4> ranges = {spec.mu_x, spec.mu_y, spec.mu_z,
                                              spec.epsilon};

    const auto coord = [&](const ProtocolParams& p, int d) {
        const double v = d == 0   ? p.mu_x
                         : d == 1 ? p.mu_y
                         : (d == 2 && !pin_mu_z) ? p.mu_z
                                                 : p.epsilon;
        return std::log(v);
    };
    const auto from_coords = [&](const std::array<double, 4>& u) {
        const double mu_x = std::exp(u[0]);
        const double mu_y = std::exp(u[1]);
        const double mu_z = pin_mu_z ? mu_y : std::exp(u[2]);
        const double eps = std::exp(u[pin_mu_z ? 2 : 3]);
        return std::array<double, 4>{mu_x, mu_y, mu_z, eps};
    };
    const auto range_of = [&](int d) {
        if (pin_mu_z && d == 2) return ranges[3];
        return ranges[d];
    };

    std::array<double, 4> u{};
    for (int d = 0; d < dims; ++d) u[d] = coord(best.params, d);

    double step = 0.0;
    for (int d = 0; d < dims; ++d) {
        const auto r = range_of(d);
        if (r.hi > r.lo)
            step = std::max(step, std::log(r.hi / r.lo) /
                                      std::max(1, spec.coarse_steps - 1));
    }
    if (step == 0.0) return best;
    step *= 0.5;

    const double step_floor = 0.5 * spec.rate_rel_tol;
    for (int round = 0; round < spec.max_rounds && step > step_floor;
         ++round) {
        Candidate round_best = best;
        std::array<int, 4> offs{};
        const int combos = dims == 3 ? 27 : 81;
        for (int idx = 0; idx < combos; ++idx) {
            int rem = idx;
            bool center = true;
            std::array<double, 4> v = u;
            for (int d = 0; d < dims; ++d) {
                offs[d] = rem % 3 - 1;
                rem /= 3;
                if (offs[d] != 0) center = false;
                const auto r = range_of(d);
                v[d] = std::clamp(v[d] + offs[d] * step, std::log(r.lo),
                                  std::log(r.hi));
            }
            if (center) continue;
            const auto pv = from_coords(v);
            auto cand = evaluate(ch, spec, pv[0], pv[1], pv[2], pv[3]);
            if (cand && better(*cand, round_best)) round_best = *cand;
        }
        if (round_best.rate > best.rate) {
            best = round_best;
            for (int d = 0; d < dims; ++d) u[d] = coord(best.params, d);
        } else {
            step *= 0.5;
        }
    }
    return best;
}

std::optional<Candidate> coarse_then_refine(const ChannelParams& ch,
                                            const OptimizationSpec& spec,
                                            bool pin_mu_z) {
    const auto gx = log_grid(spec.mu_x, spec.coarse_steps);
    const auto gy = log_grid(spec.mu_y, spec.coarse_steps);
    const auto gz =
        pin_mu_z ? std::vector<double>{0.0} : log_grid(spec.mu_z, spec.coarse_steps);
    const auto ge = log_grid(spec.epsilon, spec.coarse_steps);

    std::optional<Candidate> best;
    for (double mx : gx)
        for (double my : gy)
            for (double mz : gz)
                for (double ep : ge) {
                    auto cand = evaluate(ch, spec, mx, my,
                                         pin_mu_z ? my : mz, ep);
                    if (cand && (!best || better(*cand, *best))) best = *cand;
                }
    if (!best) return std::nullopt;
    return refine(ch, spec, *best, pin_mu_z);
}

}  // namespace

void OptimizationSpec::validate() const {
    if (n_phases < 4 || n_phases % 2 != 0)
        throw std::domain_error("n_phases must be an even integer >= 4");
    const auto check = [](const ParamRange& r, const char* name) {
        if (!(r.lo > 0.0 && r.lo <= r.hi))
            throw std::domain_error(std::string(name) +
                                    " range must satisfy 0 < lo <= hi");
    };
    check(mu_x, "mu_x");
    check(mu_y, "mu_y");
    check(mu_z, "mu_z");
    check(epsilon, "epsilon");
    if (mu_x.lo < 0.001) throw std::domain_error("mu_x lower bound is 0.001");
    if (mu_y.lo < 0.002) throw std::domain_error("mu_y lower bound is 0.002");
    if (mu_z.hi > 1.0) throw std::domain_error("mu_z must stay within (0, 1]");
    if (epsilon.hi > 0.5)
        throw std::domain_error("epsilon must stay within (0, 0.5]");
    if (coarse_steps < 2) throw std::domain_error("coarse_steps must be >= 2");
    if (max_rounds < 1) throw std::domain_error("max_rounds must be >= 1");
    if (!(rate_rel_tol > 0.0))
        throw std::domain_error("rate_rel_tol must be > 0");
    policy.validate();
}

OptimizeResult optimize_rate(const ChannelParams& ch,
                             const OptimizationSpec& spec) {
    spec.validate();
    ch.validate();

    std::optional<Candidate> best;
    if (spec.mode == Mode::three_intensity) {
        best = coarse_then_refine(ch, spec, true);
    } else {
        best = coarse_then_refine(ch, spec, false);
        // The constrained subspace mu_z = mu_y is searched explicitly so the
        // 4-intensity optimum dominates the 3-intensity one by construction.
        auto pinned = coarse_then_refine(ch, spec, true);
        if (pinned && (!best || better(*pinned, *best))) best = pinned;
    }

    OptimizeResult res;
    if (!best) {
        res.diagnostic =
            "no feasible parameter vector: ratio condition or bound "
            "denominator rejected every candidate";
        return res;
    }
    res.feasible = true;
    res.params = best->params;
    res.rate = best->rate;
    res.obs = best->obs;
    res.bounds = best->bounds;
    return res;
}

ScanResult scan_distances(const ChannelParams& ch_template,
                          const OptimizationSpec& spec,
                          const std::vector<double>& lengths_km,
                          bool plob_include_detector) {
    if (lengths_km.empty())
        throw std::domain_error("distance list must be non-empty");
    if (!std::is_sorted(lengths_km.begin(), lengths_km.end()))
        throw std::domain_error("distance list must be sorted ascending");

    ScanResult out;
    out.points.reserve(lengths_km.size());
    for (double l : lengths_km) {
        ChannelParams ch = ch_template;
        ch.length_km = l;
        const OptimizeResult r = optimize_rate(ch, spec);
        ScanPoint pt;
        pt.length_km = l;
        pt.feasible = r.feasible;
        pt.params = r.params;
        pt.rate = r.rate;
        pt.plob = plob_bound(ch, plob_include_detector);
        pt.obs = r.obs;
        pt.bounds = r.bounds;
        out.points.push_back(std::move(pt));
    }
    return out;
}

}  // namespace snsqkd
