// Test-only reference implementations, independent of the library's series
// code: direct Poisson summation in long double, high-term-count class
// series, and truncated-basis inner products for the pair fidelities.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

// sum over n <= n_top, n = j (mod N) of mu^n e^(-mu) / n!
inline long double poisson_class_sum(long double mu, int n_phases, int j,
                                     int n_top = 400) {
    long double term = std::exp(-mu);  // n = 0
    long double sum = (j == 0) ? term : 0.0L;
    for (int n = 1; n <= n_top; ++n) {
        term *= mu / n;
        if (n % n_phases == j) sum += term;
    }
    return sum;
}

// sum over k <= terms of mu^(kN+j) / (kN+j)!
inline long double class_series_sum(long double mu, int n_phases, int j,
                                    int terms = 200) {
    if (mu == 0.0L) return j == 0 ? 1.0L : 0.0L;
    long double term = 1.0L;
    for (int i = 1; i <= j; ++i) term *= mu / i;
    long double sum = term;
    int n = j;
    for (int k = 1; k <= terms; ++k) {
        for (int i = 0; i < n_phases; ++i) {
            ++n;
            term *= mu / n;
        }
        sum += term;
        if (term < 1e-30L * sum) break;
    }
    return sum;
}

inline long double fidelity_lambda_sum(long double mu_a, long double mu_b,
                                       int n_phases, int j) {
    const long double num =
        class_series_sum(std::sqrt(mu_a * mu_b), n_phases, j);
    const long double den = std::sqrt(class_series_sum(mu_a, n_phases, j) *
                                      class_series_sum(mu_b, n_phases, j));
    return num / den;
}

// Truncated two-mode basis, index n_a * dim + n_b.
struct TwoModeState {
    int dim;
    std::vector<std::complex<long double>> amp;

    explicit TwoModeState(int d) : dim(d), amp(std::size_t(d) * d) {}
    std::complex<long double>& at(int a, int b) {
        return amp[std::size_t(a) * dim + b];
    }
    long double norm() const {
        long double s = 0;
        for (const auto& v : amp) s += std::norm(v);
        return std::sqrt(s);
    }
};

// Class-j component of the matched-intensity pulse pair with Bob's phase
// offset by 2 pi q / N, built term by term in the truncated basis.
inline TwoModeState phase_pair_state(double mu_x, int n_phases, int j, int q,
                                     int n_max) {
    TwoModeState st(n_max + 1);
    const long double mu = mu_x;
    std::vector<long double> sqrt_fact(2 * n_max + 2, 1.0L);
    for (int i = 1; i < static_cast<int>(sqrt_fact.size()); ++i)
        sqrt_fact[i] = sqrt_fact[i - 1] * std::sqrt((long double)i);
    for (int n_tot = j; n_tot <= n_max; n_tot += n_phases) {
        const long double mag = std::pow(std::sqrt(mu), n_tot);
        for (int k1 = 0; k1 <= n_tot; ++k1) {
            const int k2 = n_tot - k1;
            if (k1 > n_max || k2 > n_max) continue;
            const long double ang =
                2.0L * std::numbers::pi_v<long double> * q * k2 / n_phases;
            st.at(k1, k2) += mag / (sqrt_fact[k1] * sqrt_fact[k2]) *
                             std::complex<long double>(std::cos(ang),
                                                       std::sin(ang));
        }
    }
    return st;
}

// (|0, lam_1> +/- |lam_1, 0>) / sqrt2 with lam_1 the class-1 component of a
// phase-randomized source of intensity mu_z.
inline TwoModeState single_send_superposition(double mu_z, int n_phases,
                                              bool even, int n_max) {
    TwoModeState st(n_max + 1);
    const long double mu = mu_z;
    long double sqrt_fact = 1.0L;
    for (int n = 1; n <= n_max; ++n) {
        sqrt_fact *= std::sqrt((long double)n);
        if ((n - 1) % n_phases != 0) continue;
        const long double c = std::pow(std::sqrt(mu), n) / sqrt_fact;
        st.at(0, n) += c;
        st.at(n, 0) += even ? c : -c;
    }
    return st;
}

inline long double overlap_fidelity(const TwoModeState& a,
                                    const TwoModeState& b) {
    std::complex<long double> dot{0.0L, 0.0L};
    for (std::size_t i = 0; i < a.amp.size(); ++i)
        dot += std::conj(a.amp[i]) * b.amp[i];
    return std::abs(dot) / (a.norm() * b.norm());
}

inline long double binary_entropy(long double x) {
    if (x <= 0.0L || x >= 1.0L) return 0.0L;
    return -x * std::log2(x) - (1.0L - x) * std::log2(1.0L - x);
}

}  // namespace oracle
