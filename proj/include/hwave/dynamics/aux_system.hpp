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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hwave/model/model.hpp"
#include "hwave/spectral/field.hpp"
#include "hwave/spectral/norms.hpp"

namespace hwave {

// One time slice of the amplitude/phase system. phi is optional; when
// present it is transported alongside s and s = grad phi is monitored.
struct AuxState {
    double t = 1.0;
    ComplexField w;
    VectorField s;
    std::optional<RealField> phi;
};

struct AuxRhs {
    ComplexField dw;
    VectorField ds;
    RealField dphi;
};

struct IntegratorConfig {
    // Step: cfl_safety * min(dt_base, dt_rel * t, t^2 h / (1 + |s|_inf)).
    // dt_rel keeps steps proportional to t; it is what makes long log-time
    // spans affordable. Either cap can be disabled with kInfinity.
    double dt_base = kInfinity;
    double dt_rel = 0.05;
    double cfl_safety = 0.9;
    // Parabolic regularization strength. Applied as eta t^{-2} Delta on w, s
    // and phi, dissipative in the direction of integration.
    double eta = 0.0;
    std::vector<double> sample_times;
    double tol_grad = 1e-6;
    double tol_vort = 1e-6;
    double blowup_factor = 1e6;
    AdmissiblePair pair;
    bool keep_snapshots = false;
    // Optional amplitude whose free forcing t^{-gamma} grad g0(w_ref) (and
    // t^{-gamma} g0(w_ref) for phi) is integrated in closed form; RK4 then
    // only sees the remainder. Exact reformulation: the trajectory is the
    // same for any choice, the time-stepping error is not. Wave-operator
    // runs pass w_plus here.
    std::optional<ComplexField> forcing_reference;

    void validate() const;
};

struct TrajectorySample;
// Called once per recorded sample with the state at that time, after the
// built-in diagnostics are filled in. Lets callers attach datum-relative
// errors without keeping snapshots.
using SampleObserver = std::function<void(const AuxState&, TrajectorySample&)>;

struct TrajectorySample {
    double t = 0.0;
    double mass = 0.0;
    double norm_w_k = 0.0;
    double norm_w_km1 = 0.0;
    double norm_s_l = 0.0;
    double norm_s_lm1 = 0.0;
    double vort_max = 0.0;
    double grad_gap = 0.0;  // NaN when phi is not tracked
    double ds_max = 0.0;    // max |d_i s_j|
    double s_max = 0.0;     // max |s|
    // Filled in by the scattering and rate layers when a datum is known.
    std::optional<double> err_w_plus_k, err_s0_l, err_s02_l, err_prof_a, err_prof_b;
    std::optional<double> err_prof_lr;  // physical L^r variant of err_prof_a
    std::optional<AuxState> snapshot;
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;  // ascending in t
    bool failed = false;
    std::string failure;
    std::vector<std::string> flags;  // invariant or growth-monitor warnings
    long steps = 0;
    double t_start = 0.0;  // seed time
    double initial_mass = 0.0;
    bool has_phase = false;

    const TrajectorySample* at(double t, double rel_tol = 1e-12) const;
};

// dw = (2t^2)^{-1} U(1/t)(2 s.grad + div s) U*(1/t) w
// ds = t^{-2} (s.grad) s + t^{-gamma} grad g(w, w)
// dphi = (2t^2)^{-1} |s|^2 + t^{-gamma} g(w, w)
AuxRhs aux_rhs(const AuxState& state, const ModelParams& p);

// Classical RK4 (Lawson form when eta > 0) from initial.t to t_target in
// either direction, sampling at config.sample_times that fall inside the
// span. Never throws on blow-up; the record carries the failure instead.
TrajectoryRecord integrate_aux(const AuxState& initial, double t_target,
                               const IntegratorConfig& config, const ModelParams& p,
                               const SampleObserver& observer = {});

// max over i<j and nodes of |d_i s_j - d_j s_i|
double vorticity_max(const VectorField& s);
// max over nodes of |s - grad phi|
double gradient_gap(const VectorField& s, const RealField& phi);
// max over i, j and nodes of |d_i s_j|
double gradient_max(const VectorField& s);

// Merges two records (e.g. backward and forward legs from one seed),
// dropping duplicate sample times.
TrajectoryRecord merge_records(const TrajectoryRecord& a, const TrajectoryRecord& b);

}  // namespace hwave
