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

#include "hwave/dynamics/rescaled.hpp"

#include <cmath>

#include "hwave/core/error.hpp"
#include "hwave/spectral/engine.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

namespace {

// 1/t_a - 1/t_b without cancellation.
double tau_span(double ta, double tb) { return (tb - ta) / (ta * tb); }

// int_{ta}^{tb} tau^{-gamma} d tau
double power_integral(double ta, double tb, double gamma) {
    return (std::pow(tb, 1.0 - gamma) - std::pow(ta, 1.0 - gamma)) / (1.0 - gamma);
}

void linear_substep(CVec& c, const SpectralEngine& e, double ta, double tb) {
    // i dv/dt = -(2t^2)^{-1} Delta v  =>  v^ picks up exp(-i |xi|^2 (1/ta - 1/tb) / 2),
    // which is the free propagator U(1/ta - 1/tb).
    e.apply_propagator(tau_span(ta, tb), c.data());
}

}  // namespace

ComplexField rescaled_nls_step(const ComplexField& v, double t, double dt, const ModelParams& p) {
    if (!(t > 0.0)) throw ParameterError("rescaled_nls_step: t must be > 0");
    if (!(t + dt > 0.0)) throw ParameterError("rescaled_nls_step: t + dt must be > 0");
    const auto& e = *SpectralEngine::get(v.grid);
    const double tm = t + 0.5 * dt;
    CVec c = to_coefficients(v);
    linear_substep(c, e, t, tm);
    ComplexField mid = from_coefficients(v.grid, std::move(c));
    if (p.lambda != 0.0) {
        const RealField g = g0(mid, mid, p);
        const double weight = power_integral(t, t + dt, p.gamma);
        for (std::size_t i = 0; i < mid.values.size(); ++i)
            mid.values[i] *= std::polar(1.0, -g.values[i] * weight);
    }
    c = to_coefficients(mid);
    linear_substep(c, e, tm, t + dt);
    return from_coefficients(v.grid, std::move(c));
}

ComplexField rescaled_nls_evolve(const ComplexField& v, double t_from, double t_to,
                                 const ModelParams& p, double dt_rel) {
    if (!(dt_rel > 0.0)) throw ParameterError("rescaled_nls_evolve: dt_rel must be > 0");
    ComplexField cur = v;
    double t = t_from;
    const double dir = t_to >= t_from ? 1.0 : -1.0;
    while ((t_to - t) * dir > 0.0) {
        double h = dt_rel * t;
        const double remaining = std::abs(t_to - t);
        if (remaining <= h * (1.0 + 1e-9))
            h = remaining;
        else if (remaining < 2.0 * h)
            h = 0.5 * remaining;
        const bool lands = h == remaining;
        cur = rescaled_nls_step(cur, t, dir * h, p);
        t = lands ? t_to : t + dir * h;
    }
    return cur;
}

ComplexField v_representation(const AuxState& st) {
    if (!st.phi) throw ParameterError("v-representation needs the phase phi");
    RealField minus_phi = *st.phi;
    minus_phi *= -1.0;
    return multiply_phase(free_propagator(st.w, -1.0 / st.t), minus_phi);
}

std::vector<GaugeDiscrepancy> cross_check_gauge(const TrajectoryRecord& traj, const ModelParams& p,
                                                double dt_rel) {
    std::vector<const TrajectorySample*> snaps;
    for (const auto& s : traj.samples)
        if (s.snapshot) {
            if (!s.snapshot->phi) throw ParameterError("cross_check_gauge: trajectory has no phase data");
            snaps.push_back(&s);
        }
    if (snaps.empty()) throw ParameterError("cross_check_gauge: trajectory has no snapshots");
    std::vector<GaugeDiscrepancy> out;
    ComplexField v = v_representation(*snaps.front()->snapshot);
    double t = snaps.front()->t;
    for (const auto* s : snaps) {
        if (s->t > t) {
            v = rescaled_nls_evolve(v, t, s->t, p, dt_rel);
            t = s->t;
        }
        const ComplexField ref = v_representation(*s->snapshot);
        out.push_back({s->t, lr_norm(v - ref, 2.0), lr_norm(s->snapshot->w, 2.0)});
    }
    return out;
}

}  // namespace hwave
