#pragma once

namespace snsqkd {

/// Truncation policy for the modular photon-class series. Every series in the
/// library is an infinite sum over the wrap-around index k; summation stops
/// when the next term drops below rel_tol times the partial sum, with k_max
/// as a hard cap.
struct SeriesPolicy {
    double rel_tol = 1e-16;  // must satisfy 0 < rel_tol <= 1e-10
    int k_max = 64;          // must be >= 10

    void validate() const;
};

/// Source-side knobs: number of discrete phase values, the three pulse
/// intensities, the signal-window send probability and the error-correction
/// inefficiency.
struct ProtocolParams {
    int n_phases = 12;       // even, >= 4 (decoy analysis needs classes 0..2)
    double mu_x = 0.001;     // weaker decoy intensity, >= 0.001
    double mu_y = 0.002;     // stronger decoy intensity, > mu_x and >= 0.002
    double mu_z = 0.4;       // signal intensity, > 0
    double epsilon = 0.06;   // send probability in signal windows, in (0,1)
    double f = 1.1;          // error-correction inefficiency, >= 1

    void validate() const;
};

/// Symmetric-channel model parameters. The two arms Alice->node and
/// Bob->node each have length length_km/2 and identical detectors.
struct ChannelParams {
    double length_km = 300.0;
    double alpha_db_per_km = 0.2;
    double eta_d = 0.30;  // detector efficiency, in (0,1]
    double p_d = 1e-8;    // dark count probability per detector per window
    double e_d = 0.03;    // misalignment probability, in [0, 0.5)

    void validate() const;
};

/// Per-pulse-pair one-detector heralding rates for the decoy source pairs,
/// the matched/anti-phase click rates used for the phase-error estimate, and
/// the signal-window yield and error rate.
struct ObservedRates {
    double s_oo = 0;       // both vacuum
    double s_ox = 0;       // Alice vacuum, Bob mu_x
    double s_oy = 0;       // Alice vacuum, Bob mu_y
    double s_xo = 0;       // Alice mu_x, Bob vacuum
    double s_yo = 0;       // Alice mu_y, Bob vacuum
    double t_plus_r = 0;   // right-click rate, matched-phase mu_x pairs
    double t_minus_l = 0;  // left-click rate, anti-phase mu_x pairs
    double t_00 = 0;       // right-click rate, vacuum pairs
    double t_00p = 0;      // left-click rate, vacuum pairs
    double s_z = 0;        // signal-window heralding rate
    double e_z = 0;        // signal-window bit error rate

    void validate() const;
};

/// Output of the decoy analysis: yield lower bounds, click-probability upper
/// bounds and the resulting phase-flip error upper bound.
struct DecoyBounds {
    double s01_l = 0;    // lower bound on the vacuum x class-1 yield
    double s10_l = 0;    // lower bound on the class-1 x vacuum yield
    double s1_l = 0;     // (s01_l + s10_l) / 2
    double t0r_u = 1;    // upper bound on the wrong-detector rate, even state
    double t1l_u = 1;    // upper bound on the wrong-detector rate, odd state
    double eph_u = 0.5;  // phase-flip error upper bound, in [0, 0.5]
};

}  // namespace snsqkd
