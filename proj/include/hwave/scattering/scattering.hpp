/*
 * Copyright 2026 The hwave authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hwave/dynamics/aux_system.hpp"
#include "hwave/profiles/profiles.hpp"

namespace hwave {

// a = |w_plus|_{k+1} and b = sup_{t >= 1} |t^{gamma-1} s02(t)| in X^{l+1}.
// t^{gamma-1} s02(t) is a convex combination of s02(1) and
// grad g0(w_plus) / (1 - gamma), so the sup is the larger endpoint.
struct DatumConstants {
    double a = 0.0;
    double b = 0.0;
};
DatumConstants datum_constants(const AsymptoticDatum& d, const ModelParams& p, const AdmissiblePair& pair);

// C_cal (2 gamma - 1)^{-2} max((b + a^2)^{1/gamma}, a^4 b^{-2}).
double heuristic_T(const AsymptoticDatum& d, const ModelParams& p, const AdmissiblePair& pair,
                   double c_cal = 1.0);

// w = U(1/t0) w_plus, s = s02(t0), phi = phi02(t0).
AuxState seed_at_t0(const AsymptoticDatum& d, double t0, const ModelParams& p);

struct WaveOpConfig {
    std::vector<double> t0_schedule{100.0, 200.0, 400.0, 800.0};
    double T = 10.0;       // comparison window [T, T_max]
    double T_max = 100.0;
    double sample_ratio = 1.189207115002721;  // 2^{1/4}
    IntegratorConfig integrator;               // sample_times is overwritten
    QuadratureConfig quadrature;
    double c_cal = 1.0;
    bool calibrate = true;
    int max_retries = 4;
    // Accept a schedule that starts below heuristic_T; a warning is recorded.
    bool allow_override = true;
    bool richardson = false;
    // Snapshots are kept for the limit trajectory only when set.
    bool keep_limit_snapshots = false;
    // r of the physical L^r profile error column; 0 disables it.
    double profile_lr = 6.0;
    int workers = 0;  // 0: HWAVE_WORKERS, else hardware concurrency

    void validate() const;
};

struct CauchyDifference {
    double t0_a = 0.0, t0_b = 0.0;
    double value = 0.0;  // sup over J of |dw|_{k-1} + |ds|_{X^{l-1}}
    double t_at_sup = 0.0;
};

struct WaveOpRun {
    AsymptoticDatum datum;
    ModelParams params;
    AdmissiblePair pair;
    std::vector<double> t0_schedule;  // after calibration
    std::vector<double> sample_times;
    double T = 0.0, T_max = 0.0;
    double heuristic_T = 0.0;
    double c_cal = 1.0;
    double profile_lr = 0.0;  // r of the stored err_prof_lr column
    int calibration_retries = 0;
    std::string calibration_outcome;
    std::vector<TrajectoryRecord> trajectories;  // one per t0, schedule order
    std::vector<CauchyDifference> differences;
    bool divergence_flag = false;
    std::vector<std::string> warnings;
    // Richardson-extrapolated states at the sample times (optional).
    std::vector<AuxState> extrapolated;

    const TrajectoryRecord& limit() const { return trajectories.back(); }
    double limit_t0() const { return t0_schedule.back(); }
};

// Fills err_w_plus_k, err_s02_l, err_s0_l, err_prof_a, err_prof_b and
// err_prof_lr of each sample from the datum. `times` are the sample times
// the observer will see (the phase tail is precomputed there).
SampleObserver datum_error_observer(const AsymptoticDatum& d, const ModelParams& p,
                                    const AdmissiblePair& pair, const std::vector<double>& times,
                                    const QuadratureConfig& q, double lr_exponent);

// Seeds at every t0, integrates down to T and (when T_max > t0) up to
// T_max, then folds Cauchy differences in schedule order. Blow-up in any
// leg is recorded in that trajectory and turns on divergence_flag. The
// datum is projected onto the resolved band first; run.datum holds the
// projected copy that all errors refer to.
WaveOpRun wave_operator_W(const AsymptoticDatum& d, const ModelParams& p, const WaveOpConfig& cfg,
                          const SampleObserver& extra = {});

// Geometric sample grid T r^j, always containing T_max and T_max / 2.
std::vector<double> geometric_samples(double T, double T_max, double ratio);

struct ExtractedAmplitude {
    ComplexField w_plus;
    double error_proxy = 0.0;  // |w(t_max) - w(t_max / 2)|_{k-1}
    bool flagged = false;
};
ExtractedAmplitude extract_w_plus(const TrajectoryRecord& traj, const AdmissiblePair& pair,
                                  double tolerance = kInfinity);

struct ExtractedProfile {
    std::vector<double> t;
    std::vector<VectorField> s;
    double tail_norm = 0.0;   // X^l size of the extrapolated piece past t_max
    double tail_exponent = 0.0;
    bool flagged = false;
    std::string note;
};
// s0(t) = s(t) + int_t^inf [tau^{-2}(s.grad)s
//         + tau^{-gamma} grad(g0(U*(1/tau) w) - g0(U*(1/tau) w_plus))] dtau
// by three-point quadrature in log t over the snapshots plus a power-law
// tail. Needs snapshots on a geometric grid.
ExtractedProfile extract_s0(const TrajectoryRecord& traj, const ComplexField& w_plus,
                            const ModelParams& p, const AdmissiblePair& pair,
                            double tail_tolerance = kInfinity);
// s02(t) = s0(t) - grad D(t), with D the phase tail of the extracted w_plus.
ExtractedProfile extract_s02(const TrajectoryRecord& traj, const ComplexField& w_plus,
                             const ModelParams& p, const AdmissiblePair& pair,
                             const QuadratureConfig& q = {}, double tail_tolerance = kInfinity);

// Asymptotic data read back from one trajectory with snapshots: w_plus and
// s02(1), the latter taken at the largest sample time.
struct ExtractedDatum {
    ComplexField w_plus;
    VectorField s02_at_1;
    double t_extract = 0.0;
    double w_error_proxy = 0.0;
    double tail_norm = 0.0;
    double tail_exponent = 0.0;
    bool flagged = false;
    std::string note;
};
ExtractedDatum extract_datum(const TrajectoryRecord& traj, const ModelParams& p, const AdmissiblePair& pair,
                             const QuadratureConfig& q = {}, double tolerance = kInfinity);

struct RoundTripReport {
    double w_plus_rel = 0.0;  // |w'_+ - w_+|_{k-1} / |w_+|_{k-1}
    double s02_rel = 0.0;     // |s'_02(1) - s02(1)|_{X^{l-1}} / scale
    double s02_scale = 0.0;   // |s02(1)| in X^{l-1}, or |grad g0| if that vanishes
    double t_extract = 0.0;   // time at which s02(1) was read off
    double w_error_proxy = 0.0;
    double tail_norm = 0.0;
    bool flagged = false;
};
// Needs the limit trajectory of `run` to carry snapshots.
RoundTripReport round_trip_check(const WaveOpRun& run, const QuadratureConfig& q = {});
RoundTripReport round_trip_check(const AsymptoticDatum& d, const ModelParams& p, WaveOpConfig cfg);

struct GaugeFunction {
    RealField sigma;
};

// w'_+ = w_+ e^{i sigma}, phi'02(1) = phi02(1) + sigma.
AsymptoticDatum gauge_transform(const AsymptoticDatum& d, const GaugeFunction& g);

struct GaugeReport {
    std::vector<double> t;
    std::vector<double> v_discrepancy;  // ||v - v'||_2 at each sample
    std::vector<double> phase_drift;    // ||(phi' - phi) - sigma||_inf
    double w_norm = 0.0;
    double max_discrepancy = 0.0;
    bool failed = false;
    std::string failure;
};
GaugeReport gauge_covariance_check(const AsymptoticDatum& d, const GaugeFunction& g,
                                   const ModelParams& p, const WaveOpConfig& cfg);

// v = e^{-i phi} U*(1/t) w; throws if phi is missing.
ComplexField phi_map(const AuxState& state);

struct OmegaResult {
    WaveOpRun run;
    std::vector<double> t;
    std::vector<ComplexField> v;  // v-representation at each limit sample
};
OmegaResult omega_map(const ComplexField& u_plus_fourier, const ModelParams& p, const WaveOpConfig& cfg);

struct Omega1Result {
    ComplexField v1;          // v at t = 1
    double mass_in = 0.0;     // ||u_plus||_2
    double mass_out = 0.0;    // ||v(1)||_2
    double t_start = 0.0;     // limit time the rescaled evolution started from
    bool failed = false;
    std::string failure;
};
// Requires mu < 2. Continues the earliest limit sample down to t = 1 with
// the split-step rescaled solver.
Omega1Result omega1_map(const ComplexField& u_plus_fourier, const ModelParams& p, const WaveOpConfig& cfg,
                        double dt_rel = 0.01);

}  // namespace hwave
