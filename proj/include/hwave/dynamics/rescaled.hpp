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

#include <vector>

#include "hwave/dynamics/aux_system.hpp"

namespace hwave {

// One Strang step of i dv/dt = -(2t^2)^{-1} Delta v + t^{-gamma} g0(v, v) v:
// exact linear half-steps exp(-i |xi|^2 (1/t_a - 1/t_b) / 2) around an exact
// phase rotation exp(-i g0(v, v) int tau^{-gamma}). Both substeps are
// unitary, so ||v||_2 is conserved to round-off. dt may be negative.
ComplexField rescaled_nls_step(const ComplexField& v, double t, double dt, const ModelParams& p);

// Evolves v from t_from to t_to with steps |dt| <= dt_rel * t.
ComplexField rescaled_nls_evolve(const ComplexField& v, double t_from, double t_to,
                                 const ModelParams& p, double dt_rel);

// v = e^{-i phi} U*(1/t) w
ComplexField v_representation(const AuxState& st);

struct GaugeDiscrepancy {
    double t = 0.0;
    double discrepancy = 0.0;  // ||v_direct - e^{-i phi} U*(1/t) w||_2
    double w_norm = 0.0;
};

// Starts the direct solver from the earliest snapshot and compares it with
// the trajectory's v-representation at every later snapshot. Needs
// snapshots with phases.
std::vector<GaugeDiscrepancy> cross_check_gauge(const TrajectoryRecord& traj, const ModelParams& p,
                                                double dt_rel = 0.01);

}  // namespace hwave
