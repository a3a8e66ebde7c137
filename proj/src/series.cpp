#include "snsqkd/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "snsqkd/errors.hpp"

namespace snsqkd {

namespace {

// 0!..20! exactly; factorials beyond this go through log space.
constexpr double kFactorial[21] = {
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
};

constexpr int kLogFactTable = 8192;

double log_factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactTable);
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int i = 1; i < kLogFactTable; ++i) {
            acc += std::log(static_cast<long double>(i));
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    if (n < kLogFactTable) return table[n];
    return std::lgamma(n + 1.0);
}

// mu^n e^(-mu) / n!
double poisson_weight(double mu, int n) {
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    if (n <= 20) return std::pow(mu, n) * std::exp(-mu) / kFactorial[n];
    return std::exp(n * std::log(mu) - mu - log_factorial(n));
}

// mu^n / n!
double bare_weight(double mu, int n) {
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    if (n <= 20) return std::pow(mu, n) / kFactorial[n];
    return std::exp(n * std::log(mu) - log_factorial(n));
}

void validate_mu(double mu, const char* name) {
    if (!(std::isfinite(mu) && mu >= 0.0))
        throw std::domain_error(std::string(name) +
                                " must be finite and non-negative");
}

void validate_class_index(int n_phases, int j) {
    if (j < 0 || j >= n_phases)
        throw std::domain_error("class index j must satisfy 0 <= j < n_phases");
}

// sum_k w(kN + j) truncated per policy. w must be non-negative and
// eventually decreasing in its argument.
template <class WeightFn>
double modular_sum(int n_phases, int j, const SeriesPolicy& policy,
                   WeightFn w) {
    double sum = w(j);
    for (int k = 1; k <= policy.k_max; ++k) {
        const double term = w(k * n_phases + j);
        if (term <= policy.rel_tol * sum) return sum;
        sum += term;
    }
    throw numeric_error("photon-class series did not converge within k_max");
}

// sum_k mu^(kN+j) / (kN+j)!  (class series without the e^(-mu) factor)
double class_series(double mu, int n_phases, int j,
                    const SeriesPolicy& policy) {
    if (mu == 0.0) return j == 0 ? 1.0 : 0.0;
    return modular_sum(n_phases, j, policy,
                       [mu](int n) { return bare_weight(mu, n); });
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

void validate_phase_count(int n_phases) {
    if (n_phases < 2 || n_phases % 2 != 0)
        throw std::domain_error("n_phases must be an even integer >= 2");
}

double class_prob(double mu, int n_phases, int j, const SeriesPolicy& policy) {
    validate_phase_count(n_phases);
    validate_class_index(n_phases, j);
    validate_mu(mu, "mu");
    policy.validate();
    if (mu == 0.0) return j == 0 ? 1.0 : 0.0;
    const double sum = modular_sum(
        n_phases, j, policy, [mu](int n) { return poisson_weight(mu, n); });
    return std::min(sum, 1.0);
}

double pair_class_prob(double mu_x, int n_phases, int j,
                       const SeriesPolicy& policy) {
    validate_mu(mu_x, "mu_x");
    return class_prob(2.0 * mu_x, n_phases, j, policy);
}

double fidelity_lambda(double mu_a, double mu_b, int n_phases, int j,
                       const SeriesPolicy& policy) {
    validate_phase_count(n_phases);
    validate_class_index(n_phases, j);
    validate_mu(mu_a, "mu_a");
    validate_mu(mu_b, "mu_b");
    policy.validate();
    const double norm_a = class_series(mu_a, n_phases, j, policy);
    const double norm_b = class_series(mu_b, n_phases, j, policy);
    if (norm_a <= 0.0 || norm_b <= 0.0)
        throw std::domain_error(
            "class state undefined: zero norm at intensity 0 with j > 0");
    if (mu_a == mu_b) return 1.0;
    const double overlap =
        class_series(std::sqrt(mu_a * mu_b), n_phases, j, policy);
    return clamp01(overlap / std::sqrt(norm_a * norm_b));
}

double vacuum_fidelity(double mu, int n_phases, const SeriesPolicy& policy) {
    validate_phase_count(n_phases);
    validate_mu(mu, "mu");
    policy.validate();
    return clamp01(1.0 / std::sqrt(class_series(mu, n_phases, 0, policy)));
}

double pair_vacuum_fidelity(double mu_x, int n_phases,
                            const SeriesPolicy& policy) {
    validate_mu(mu_x, "mu_x");
    return vacuum_fidelity(2.0 * mu_x, n_phases, policy);
}

double signal_class1_fidelity(double mu_y, double mu_z, int n_phases,
                              const SeriesPolicy& policy) {
    validate_mu(mu_y, "mu_y");
    validate_mu(mu_z, "mu_z");
    if (mu_y == mu_z) {
        if (mu_y == 0.0)
            throw std::domain_error("class-1 state undefined at intensity 0");
        validate_phase_count(n_phases);
        return 1.0;
    }
    return fidelity_lambda(mu_y, mu_z, n_phases, 1, policy);
}

double class1_pair_fidelity(double mu_x, double mu_z, int n_phases, int q,
                            Parity parity, const SeriesPolicy& policy) {
    validate_phase_count(n_phases);
    if (q < 0 || q >= n_phases)
        throw std::domain_error("phase offset q must satisfy 0 <= q < n_phases");
    validate_mu(mu_x, "mu_x");
    validate_mu(mu_z, "mu_z");
    if (mu_x <= 0.0 || mu_z <= 0.0)
        throw std::domain_error("class-1 pair state undefined at intensity 0");
    policy.validate();

    // q (kN+1) = q (mod N): the phase angle is the same for every term.
    const double angle = 2.0 * std::numbers::pi * q / n_phases;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double base =
        class_series(std::sqrt(mu_x * mu_z), n_phases, 1, policy);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const double re =
        inv_sqrt2 * base * (parity == Parity::even ? 1.0 + c : 1.0 - c);
    const double im = inv_sqrt2 * base * s;
    const double den = std::sqrt(class_series(2.0 * mu_x, n_phases, 1, policy) *
                                 class_series(mu_z, n_phases, 1, policy));
    return clamp01(std::sqrt(re * re + im * im) / den);
}

bool ratio_condition_holds(double mu_x, double mu_y, int n_phases,
                           const SeriesPolicy& policy) {
    if (n_phases < 4 || n_phases % 2 != 0)
        throw std::domain_error(
            "ratio condition needs an even n_phases >= 4");
    validate_mu(mu_x, "mu_x");
    validate_mu(mu_y, "mu_y");
    if (!(mu_x > 0.0 && mu_x <= mu_y))
        throw std::domain_error("ratio condition requires 0 < mu_x <= mu_y");
    const double r1 = class_prob(mu_x, n_phases, 1, policy) /
                      class_prob(mu_y, n_phases, 1, policy);
    const double r2 = class_prob(mu_x, n_phases, 2, policy) /
                      class_prob(mu_y, n_phases, 2, policy);
    if (r1 < r2) return false;
    for (int j = 3; j < n_phases; ++j) {
        const double rj = class_prob(mu_x, n_phases, j, policy) /
                          class_prob(mu_y, n_phases, j, policy);
        if (r2 < rj) return false;
    }
    return true;
}

double class_mismatch_upper(double mu_x, double mu_y, int n_phases,
                            const SeriesPolicy& policy) {
    validate_phase_count(n_phases);
    validate_mu(mu_x, "mu_x");
    validate_mu(mu_y, "mu_y");
    if (mu_x > mu_y)
        throw std::domain_error("class mismatch bound requires mu_x <= mu_y");
    if (mu_x == mu_y) return 0.0;
    double sum = 0.0;
    for (int j = 0; j < n_phases; ++j) {
        const double pj = class_prob(mu_x, n_phases, j, policy);
        if (pj == 0.0) continue;
        const double fj = fidelity_lambda(mu_x, mu_y, n_phases, j, policy);
        sum += pj * std::sqrt(std::max(0.0, 1.0 - fj * fj));
    }
    return sum;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("binary_entropy argument must be in [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace snsqkd
