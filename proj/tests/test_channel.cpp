#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "snsqkd/channel.hpp"

using namespace snsqkd;

namespace {

const ChannelParams kReference{300.0, 0.2, 0.30, 1e-8, 0.03};

ChannelParams at_length(double l) {
    ChannelParams ch = kReference;
    ch.length_km = l;
    return ch;
}

}  // namespace

TEST_CASE("arm_transmittance") {
    CHECK(arm_transmittance(at_length(0.0)) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(arm_transmittance(at_length(100.0)) ==
          doctest::Approx(0.03).epsilon(1e-12));
    CHECK(arm_transmittance(at_length(300.0)) ==
          doctest::Approx(3e-4).epsilon(1e-12));
}

TEST_CASE("click_probs_coherent") {
    SUBCASE("dark counts only") {
        const auto c = click_probs_coherent(0.0, 0.0, 0.0, kReference);
        CHECK(c.p_left_only == doctest::Approx(1e-8 * (1 - 1e-8)).epsilon(1e-12));
        CHECK(c.p_right_only == c.p_left_only);
    }
    SUBCASE("perfect interference sends everything left") {
        ChannelParams ideal = kReference;
        ideal.p_d = 0.0;
        ideal.e_d = 0.0;
        const auto c = click_probs_coherent(0.3, 0.3, 0.0, ideal);
        CHECK(c.p_right_only == 0.0);
        CHECK(c.p_left_only ==
              doctest::Approx(1.0 - std::exp(-0.6)).epsilon(1e-14));
    }
    SUBCASE("frozen evaluation with misalignment and dark counts") {
        const auto c = click_probs_coherent(0.01, 0.01, 0.0, kReference);
        CHECK(c.p_left_only ==
              doctest::Approx(1.920151626722175e-02).epsilon(1e-12));
        CHECK(c.p_right_only ==
              doctest::Approx(5.883054711413896e-04).epsilon(1e-12));
    }
    SUBCASE("half-turn phase shift swaps the detectors") {
        for (double x : {0.0, 0.01, 0.2})
            for (double th : {0.0, 0.7, 2.0}) {
                const auto a = click_probs_coherent(x, 0.15, th, kReference);
                const auto b = click_probs_coherent(
                    x, 0.15, th + std::numbers::pi, kReference);
                CHECK(a.p_left_only ==
                      doctest::Approx(b.p_right_only).epsilon(1e-13));
                CHECK(a.p_right_only ==
                      doctest::Approx(b.p_left_only).epsilon(1e-13));
            }
    }
    SUBCASE("outcomes are probabilities") {
        for (double x : {0.0, 0.3, 2.0})
            for (double y : {0.0, 0.8})
                for (double th : {0.0, 1.0}) {
                    const auto c = click_probs_coherent(x, y, th, kReference);
                    CHECK(c.p_left_only >= 0.0);
                    CHECK(c.p_right_only >= 0.0);
                    CHECK(c.p_left_only + c.p_right_only <= 1.0);
                }
        CHECK_THROWS_AS(click_probs_coherent(-0.1, 0.0, 0.0, kReference),
                        std::domain_error);
    }
}

TEST_CASE("simulate_observables") {
    SUBCASE("vanishing send probability leaves only dark-count errors") {
        ProtocolParams p{12, 0.001, 0.002, 0.4, 1e-12, 1.1};
        const auto obs = simulate_observables(p, at_length(100.0));
        CHECK(obs.s_z == doctest::Approx(2e-8 * (1 - 1e-8)).epsilon(1e-5));
        CHECK(obs.e_z == doctest::Approx(1.0).epsilon(1e-5));
    }
    SUBCASE("always-send limit has only both-send heralds") {
        ChannelParams ch = at_length(100.0);
        ch.p_d = 0.0;
        ch.e_d = 0.0;
        ProtocolParams p{12, 0.001, 0.002, 0.4, 1.0 - 1e-12, 1.1};
        const auto obs = simulate_observables(p, ch);
        CHECK(obs.e_z == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("frozen record at the reference channel") {
        ProtocolParams p{12, 0.001, 0.002, 0.4, 0.06, 1.1};
        const auto obs = simulate_observables(p, at_length(300.0));
        CHECK(obs.s_oo == doctest::Approx(1.999999990050e-08).epsilon(1e-11));
        CHECK(obs.s_ox == doctest::Approx(3.199999233185e-07).epsilon(1e-11));
        CHECK(obs.s_oy == doctest::Approx(6.199997118835e-07).epsilon(1e-11));
        CHECK(obs.s_xo == doctest::Approx(3.199999233185e-07).epsilon(1e-11));
        CHECK(obs.s_yo == doctest::Approx(6.199997118835e-07).epsilon(1e-11));
        CHECK(obs.t_plus_r ==
              doctest::Approx(2.799998307620e-08).epsilon(1e-11));
        CHECK(obs.t_minus_l ==
              doctest::Approx(2.799998307620e-08).epsilon(1e-11));
        CHECK(obs.t_00 == doctest::Approx(9.999999950248e-09).epsilon(1e-11));
        CHECK(obs.t_00p == doctest::Approx(9.999999950248e-09).epsilon(1e-11));
        CHECK(obs.s_z == doctest::Approx(1.441864877946e-05).epsilon(1e-11));
        CHECK(obs.e_z == doctest::Approx(6.114382714759e-02).epsilon(1e-11));
        obs.validate();
    }
    SUBCASE("signal-window phase average ignores a global phase shift") {
        ProtocolParams p{8, 0.001, 0.002, 0.3, 0.1, 1.1};
        const ChannelParams ch = at_length(150.0);
        const double eta = arm_transmittance(ch);
        const auto one_det = [&](double th) {
            return click_probs_coherent(eta * p.mu_z, eta * p.mu_z, th, ch)
                .one_detector();
        };
        for (int shift : {1, 3}) {
            double plain = 0.0, shifted = 0.0;
            for (int d = 0; d < p.n_phases; ++d) {
                plain += one_det(2.0 * std::numbers::pi * d / p.n_phases);
                shifted += one_det(2.0 * std::numbers::pi * (d + shift) /
                                   p.n_phases);
            }
            CHECK(plain == doctest::Approx(shifted).epsilon(1e-12));
        }
    }
}

TEST_CASE("plob_bound") {
    SUBCASE("half transmittance is one bit") {
        ChannelParams ch = kReference;
        ch.length_km = 10.0 * std::log10(2.0) / ch.alpha_db_per_km;
        CHECK(plob_bound(ch) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("opaque channel carries nothing") {
        CHECK(plob_bound(at_length(5000.0)) <= 1e-30);
    }
    SUBCASE("reference value at 300 km") {
        CHECK(plob_bound(at_length(300.0)) ==
              doctest::Approx(1.442695762278450e-06).epsilon(1e-12));
    }
    SUBCASE("lossless channel saturates") {
        CHECK(std::isinf(plob_bound(at_length(0.0))));
    }
    SUBCASE("detector efficiency switch") {
        CHECK(plob_bound(at_length(300.0), true) <
              plob_bound(at_length(300.0), false));
        CHECK(plob_bound(at_length(300.0), true) ==
              doctest::Approx(-std::log2(1.0 - 0.3e-6)).epsilon(1e-12));
    }
}
