#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "snsqkd/channel.hpp"
#include "snsqkd/errors.hpp"
#include "snsqkd/fock.hpp"
#include "snsqkd/series.hpp"

using namespace snsqkd;

namespace {

const ChannelParams kReference{100.0, 0.2, 0.30, 1e-8, 0.03};

ChannelParams variant(double l, double p_d, double e_d, double eta_d = 0.30) {
    return ChannelParams{l, 0.2, eta_d, p_d, e_d};
}

}  // namespace

TEST_CASE("beamsplitter sector blocks are unitary") {
    for (int s = 0; s <= 12; ++s) {
        const auto m = balanced_bs_sector_matrix(s);
        for (int i = 0; i <= s; ++i)
            for (int j = 0; j <= s; ++j) {
                double dot = 0.0;
                for (int k = 0; k <= s; ++k) dot += m[k][i] * m[k][j];
                CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
            }
    }
}

TEST_CASE("vacuum input clicks only through dark counts") {
    const auto c = oracle_detect(coherent_pair_state(0, 0, 0, 0, 8), kReference);
    CHECK(c.p_left_only == doctest::Approx(1e-8 * (1 - 1e-8)).epsilon(1e-12));
    CHECK(c.p_right_only == c.p_left_only);
}

TEST_CASE("single photon splits evenly on the balanced beamsplitter") {
    std::vector<std::complex<double>> one(9), vac(9);
    one[1] = 1.0;
    vac[0] = 1.0;
    const auto c =
        oracle_detect(product_state(one, vac), variant(0.0, 0.0, 0.0, 1.0));
    CHECK(c.p_left_only == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.p_right_only == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("coherent inputs reproduce the analytic click model exactly when "
          "aligned") {
    for (double pd : {0.0, 1e-8, 1e-3}) {
        const ChannelParams ch = variant(100.0, pd, 0.0);
        const double eta = arm_transmittance(ch);
        for (double mx : {0.0, 0.05, 0.5})
            for (double my : {0.0, 0.2, 0.5})
                for (double th : {0.0, 1.0, std::numbers::pi}) {
                    const auto a =
                        click_probs_coherent(eta * mx, eta * my, th, ch);
                    const auto f = oracle_detect(
                        coherent_pair_state(mx, th, my, 0.0, 30), ch);
                    CHECK(std::abs(a.p_left_only - f.p_left_only) < 1e-9);
                    CHECK(std::abs(a.p_right_only - f.p_right_only) < 1e-9);
                }
    }
}

TEST_CASE("misaligned models agree to first order in the intensity") {
    const double eta = arm_transmittance(kReference);
    for (double mu : {0.001, 0.01}) {
        const auto a =
            click_probs_coherent(eta * mu, eta * mu, 0.0, kReference);
        const auto f =
            oracle_detect(coherent_pair_state(mu, 0, mu, 0, 30), kReference);
        CHECK(std::abs(a.p_right_only - f.p_right_only) < 5e-8);
        CHECK(std::abs(a.p_left_only - f.p_left_only) < 5e-8);
    }
}

TEST_CASE("half-turn relative phase swaps the exact-model detectors") {
    for (double th : {0.0, 0.9}) {
        const auto a = oracle_detect(
            coherent_pair_state(0.3, 0.0, 0.2, th, 25), kReference);
        const auto b = oracle_detect(
            coherent_pair_state(0.3, 0.0, 0.2, th + std::numbers::pi, 25),
            kReference);
        CHECK(a.p_left_only == doctest::Approx(b.p_right_only).epsilon(1e-12));
        CHECK(a.p_right_only == doctest::Approx(b.p_left_only).epsilon(1e-12));
    }
}

TEST_CASE("state builders enforce the truncation-tail budget") {
    CHECK_THROWS_AS(coherent_amplitudes(1.0, 0.0, 3), numeric_error);
    CHECK_THROWS_AS(photon_class_amplitudes(2.0, 12, 1, 3), numeric_error);
    FockState2 bad(4);
    bad.at(0, 0) = 0.95;  // norm well below one
    CHECK_THROWS_AS(oracle_detect(bad, kReference), numeric_error);
}

TEST_CASE("class states recombine into the coherent-pair observables") {
    // One-side-vacuum heralding decomposes exactly over the photon classes.
    const int n_phases = 4;
    const double mu = 0.05;
    const auto whole = oracle_detect(
        coherent_pair_state(0.0, 0.0, mu, 0.0, 30), kReference);
    double mixed = 0.0;
    std::vector<std::complex<double>> vac(31);
    vac[0] = 1.0;
    for (int j = 0; j < n_phases; ++j) {
        const auto lam = photon_class_amplitudes(mu, n_phases, j, 30);
        std::vector<std::complex<double>> lam_c(lam.begin(), lam.end());
        const auto cls = oracle_detect(product_state(vac, lam_c), kReference);
        mixed += class_prob(mu, n_phases, j) * cls.one_detector();
    }
    CHECK(whole.one_detector() == doctest::Approx(mixed).epsilon(1e-11));
}

TEST_CASE("untagged ground truth") {
    ProtocolParams p{8, 0.001, 0.002, 0.4, 0.06, 1.1};
    SUBCASE("even and odd wrong-detector rates coincide on a symmetric "
            "channel") {
        const auto t = untagged_ground_truth(p, kReference, 30);
        CHECK(t.t0r == doctest::Approx(t.t1l).epsilon(1e-12));
        CHECK(t.s01 == doctest::Approx(t.s10).epsilon(1e-12));
        CHECK(t.eph == doctest::Approx((t.t0r + t.t1l) / (t.s01 + t.s10))
                           .epsilon(1e-12));
    }
    SUBCASE("an ideal channel has essentially no phase errors") {
        ProtocolParams q{12, 0.001, 0.002, 0.4, 0.06, 1.1};
        const auto t = untagged_ground_truth(q, variant(100.0, 0.0, 0.0), 30);
        CHECK(t.eph < 1e-8);
        CHECK(t.s01 > 0.0);
    }
}

TEST_CASE("oracle_observables matches the analytic model on the one-side-"
          "vacuum rates") {
    // Those rates carry no interference term, so the two channel models
    // coincide there to truncation error.
    ProtocolParams p{8, 0.001, 0.002, 0.4, 0.06, 1.1};
    const auto exact = oracle_observables(p, kReference, 30);
    const auto lin = simulate_observables(p, kReference);
    CHECK(exact.s_oo == doctest::Approx(lin.s_oo).epsilon(1e-10));
    CHECK(exact.s_ox == doctest::Approx(lin.s_ox).epsilon(1e-10));
    CHECK(exact.s_oy == doctest::Approx(lin.s_oy).epsilon(1e-10));
    CHECK(exact.s_xo == doctest::Approx(lin.s_xo).epsilon(1e-10));
    CHECK(exact.s_yo == doctest::Approx(lin.s_yo).epsilon(1e-10));
    CHECK(exact.t_00 == doctest::Approx(lin.t_00).epsilon(1e-10));
    exact.validate();
}
