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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hwave/rates/rates.hpp"
#include "hwave/scattering/datum.hpp"
#include "hwave/spectral/gaussian.hpp"

namespace hwave {

// Closed-form check of U(t) = M(t) D(t) F M(t) on a complex Gaussian:
// largest difference of the resulting (amplitude, width) parameters.
double gaussian_identity_error(double t, const GaussianSymbol& g);

// F M(t) F* against the multiplier U*(1/t) on the self-dual grid
// h = sqrt(2 pi / N), where the unitary DFT (with (-1)^j sign modulation)
// maps the node lattice onto itself. Relative L^2 error on a localized,
// off-centre, modulated Gaussian.
double grid_identity_error(double t, int n, int N);

// Largest per-step relative change of ||v||_2 over `steps` split steps of
// the rescaled equation, starting at t = 1 with dt = 0.05 t.
double split_step_mass_drift(const ComplexField& v, const ModelParams& p, int steps);

struct AcceptanceConfig {
    GridSpec grid{3, 32, 16.0};
    AdmissiblePair pair;
    double lambda = 1.0;
    double mu = 1.0;
    GaussianDatumSpec datum;
    IntegratorConfig integrator;
    QuadratureConfig quadrature;

    std::vector<double> identity_times{1.0, 2.0, 10.0};
    int identity_grid_points = 32;

    // Decay-rate runs: one seed far beyond the window, sampled on [T, T_max].
    std::vector<double> rate_gammas{0.6, 0.75, 0.9};
    std::vector<double> rate_lambdas{1.0, -1.0};  // `lambda` is used elsewhere
    double rate_t0 = 1e8;
    double rate_T = 10.0;
    double rate_T_max = 1e6;
    FitWindow window{1e2, 1e4};
    double tol_rate = 0.2;

    double profile_gamma = 0.8;
    double tol_profile = 0.25;
    double profile_lr = 6.0;

    std::vector<double> cauchy_schedule{100.0, 200.0, 400.0, 800.0};
    double cauchy_T = 10.0;
    double cauchy_T_max = 100.0;

    double roundtrip_phase_amplitude = 1e-3;
    double roundtrip_lambda0_t0 = 1e12;

    double gauge_amplitude = 1e-4;
    double gauge_width = 1.5;
    double tol_gauge = 0.25;

    double robust_gamma = 0.75;
    double robust_eta = 1e-5;
    double tol_robust = 0.05;

    std::set<int> criteria{1, 2, 3, 4, 5, 6, 7, 8};
    int workers = 0;

    void validate() const;
};

struct AcceptanceResult {
    std::vector<Verdict> verdicts;                       // sorted by claim id
    std::map<std::string, TrajectoryRecord> trajectories;  // by run label, snapshots dropped
    std::map<std::string, WaveOpRun> runs;                 // by run label, snapshots dropped
    std::vector<std::string> warnings;

    bool all_pass() const;
    // criterion -> (passed, total)
    std::map<int, std::pair<int, int>> by_criterion() const;
};

using ProgressLog = std::function<void(const std::string&)>;

// Executes the selected criteria. Experiments run on a worker pool; the
// verdict table is assembled afterwards in a fixed order. Failures of an
// individual experiment become failing verdicts; the suite continues.
AcceptanceResult run_acceptance_suite(const AcceptanceConfig& cfg, const ProgressLog& log = {});

}  // namespace hwave
