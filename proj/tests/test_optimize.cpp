#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "snsqkd/decoy.hpp"
#include "snsqkd/optimize.hpp"

using namespace snsqkd;

namespace {

const ChannelParams kTemplate{0.0, 0.2, 0.30, 1e-8, 0.03};

ChannelParams at_length(double l) {
    ChannelParams ch = kTemplate;
    ch.length_km = l;
    return ch;
}

OptimizationSpec spec_for(int n, Mode mode = Mode::four_intensity) {
    OptimizationSpec s;
    s.n_phases = n;
    s.mode = mode;
    return s;
}

bool same_params(const ProtocolParams& a, const ProtocolParams& b) {
    return a.mu_x == b.mu_x && a.mu_y == b.mu_y && a.mu_z == b.mu_z &&
           a.epsilon == b.epsilon;
}

}  // namespace

TEST_CASE("lossless-fiber optimum: frozen regression") {
    const auto r = optimize_rate(at_length(0.0), spec_for(12));
    REQUIRE(r.feasible);
    CHECK(r.rate > 1e-3);
    CHECK(r.rate == doctest::Approx(3.004847756081e-03).epsilon(1e-9));
    CHECK(r.params.mu_x == doctest::Approx(0.001).epsilon(1e-9));
    CHECK(r.params.mu_y == doctest::Approx(0.002).epsilon(1e-9));
    CHECK(r.params.mu_z == doctest::Approx(0.558563791611).epsilon(1e-9));
    CHECK(r.params.epsilon == doctest::Approx(0.0446137994445).epsilon(1e-9));
    // Error floor tracks the misalignment scale once dark counts are
    // negligible.
    CHECK(r.obs.e_z < 2.0 * kTemplate.e_d);
}

TEST_CASE("repeated runs are bit-identical") {
    const auto a = optimize_rate(at_length(150.0), spec_for(8));
    const auto b = optimize_rate(at_length(150.0), spec_for(8));
    REQUIRE(a.feasible);
    REQUIRE(b.feasible);
    CHECK(a.rate == b.rate);
    CHECK(same_params(a.params, b.params));
}

TEST_CASE("returned parameters satisfy every feasibility constraint") {
    const auto spec = spec_for(8);
    for (double l : {0.0, 100.0, 250.0}) {
        const auto r = optimize_rate(at_length(l), spec);
        REQUIRE(r.feasible);
        CHECK(bounds_feasible(r.params, spec.policy));
        CHECK(r.params.mu_x >= spec.mu_x.lo);
        CHECK(r.params.mu_x <= spec.mu_x.hi);
        CHECK(r.params.mu_y <= spec.mu_y.hi);
        CHECK(r.params.mu_x < r.params.mu_y);
        CHECK(r.params.mu_z <= spec.mu_z.hi);
        CHECK(r.params.epsilon <= spec.epsilon.hi);
    }
}

TEST_CASE("three-intensity mode pins mu_z to mu_y and never wins") {
    for (double l : {50.0, 150.0}) {
        const auto three =
            optimize_rate(at_length(l), spec_for(12, Mode::three_intensity));
        const auto four = optimize_rate(at_length(l), spec_for(12));
        REQUIRE(three.feasible);
        REQUIRE(four.feasible);
        CHECK(three.params.mu_z == three.params.mu_y);
        CHECK(three.rate <= four.rate + 1e-9);
    }
}

TEST_CASE("optimized rate decays with distance") {
    std::vector<double> ls{0.0, 50.0, 100.0, 150.0, 200.0, 250.0};
    const auto scan = scan_distances(kTemplate, spec_for(12), ls);
    REQUIRE(scan.points.size() == ls.size());
    for (std::size_t i = 1; i < scan.points.size(); ++i)
        CHECK(scan.points[i].rate <= scan.points[i - 1].rate + 1e-6);
}

TEST_CASE("rate improves with the number of phase values") {
    double prev = -1.0;
    for (int n : {4, 6, 8, 12}) {
        const auto r = optimize_rate(at_length(50.0), spec_for(n));
        REQUIRE(r.feasible);
        CHECK(r.rate >= prev * (1.0 - 0.01) - 1e-9);
        prev = r.rate;
    }
}

TEST_CASE("scan records zero rates past the protocol cutoff") {
    std::vector<double> ls{200.0, 250.0};
    const auto scan = scan_distances(kTemplate, spec_for(4), ls);
    for (const auto& pt : scan.points) {
        CHECK(pt.rate == 0.0);
        CHECK(pt.plob > 0.0);
    }
}

TEST_CASE("an empty feasible region is reported, not silently zeroed") {
    OptimizationSpec spec = spec_for(8);
    spec.mu_x = {0.05, 0.05};
    spec.mu_y = {0.002, 0.01};  // every candidate has mu_x >= mu_y
    const auto r = optimize_rate(at_length(100.0), spec);
    CHECK_FALSE(r.feasible);
    CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("distance lists are validated") {
    CHECK_THROWS_AS(scan_distances(kTemplate, spec_for(8), {}),
                    std::domain_error);
    CHECK_THROWS_AS(scan_distances(kTemplate, spec_for(8), {100.0, 50.0}),
                    std::domain_error);
}
