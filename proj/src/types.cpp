#include "snsqkd/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace snsqkd {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::domain_error(what);
}

bool in_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

void SeriesPolicy::validate() const {
    require(std::isfinite(rel_tol) && rel_tol > 0.0 && rel_tol <= 1e-10,
            "series rel_tol must be in (0, 1e-10]");
    require(k_max >= 10, "series k_max must be >= 10");
}

void ProtocolParams::validate() const {
    require(n_phases >= 4 && n_phases % 2 == 0,
            "n_phases must be an even integer >= 4");
    require(std::isfinite(mu_x) && mu_x >= 0.001,
            "mu_x must be >= 0.001");
    require(std::isfinite(mu_y) && mu_y >= 0.002,
            "mu_y must be >= 0.002");
    require(mu_x < mu_y, "mu_x must be < mu_y");
    require(std::isfinite(mu_z) && mu_z > 0.0, "mu_z must be > 0");
    require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon < 1.0,
            "epsilon must be in (0, 1)");
    require(std::isfinite(f) && f >= 1.0,
            "error-correction inefficiency f must be >= 1");
}

void ChannelParams::validate() const {
    require(std::isfinite(length_km) && length_km >= 0.0,
            "length_km must be >= 0");
    require(std::isfinite(alpha_db_per_km) && alpha_db_per_km >= 0.0,
            "alpha_db_per_km must be >= 0");
    require(std::isfinite(eta_d) && eta_d > 0.0 && eta_d <= 1.0,
            "eta_d must be in (0, 1]");
    require(std::isfinite(p_d) && p_d >= 0.0 && p_d < 1.0,
            "p_d must be in [0, 1)");
    require(std::isfinite(e_d) && e_d >= 0.0 && e_d < 0.5,
            "e_d must be in [0, 0.5)");
}

void ObservedRates::validate() const {
    require(in_unit(s_oo), "s_oo must be in [0, 1]");
    require(in_unit(s_ox), "s_ox must be in [0, 1]");
    require(in_unit(s_oy), "s_oy must be in [0, 1]");
    require(in_unit(s_xo), "s_xo must be in [0, 1]");
    require(in_unit(s_yo), "s_yo must be in [0, 1]");
    require(in_unit(t_plus_r), "t_plus_r must be in [0, 1]");
    require(in_unit(t_minus_l), "t_minus_l must be in [0, 1]");
    require(in_unit(t_00), "t_00 must be in [0, 1]");
    require(in_unit(t_00p), "t_00p must be in [0, 1]");
    require(in_unit(s_z), "s_z must be in [0, 1]");
    require(in_unit(e_z), "e_z must be in [0, 1]");
}

}  // namespace snsqkd
