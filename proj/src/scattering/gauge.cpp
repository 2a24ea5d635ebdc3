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

#include <algorithm>
#include <cmath>

#include "hwave/core/error.hpp"
#include "hwave/dynamics/rescaled.hpp"
#include "hwave/scattering/scattering.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

AsymptoticDatum gauge_transform(const AsymptoticDatum& d, const GaugeFunction& g) {
    require_same_grid(d.w_plus.grid, g.sigma.grid, "gauge_transform");
    require_finite(g.sigma, "gauge_transform sigma");
    return AsymptoticDatum{multiply_phase(d.w_plus, g.sigma), d.phi02_at_1 + g.sigma};
}

GaugeReport gauge_covariance_check(const AsymptoticDatum& d, const GaugeFunction& g, const ModelParams& p,
                                   const WaveOpConfig& cfg) {
    if (!(p.gamma > 0.5 && p.gamma < 1.0))
        throw ParameterError("gauge_covariance_check: gamma must lie in (1/2, 1)");
    WaveOpConfig c = cfg;
    c.keep_limit_snapshots = true;
    const WaveOpRun a = wave_operator_W(d, p, c);
    const WaveOpRun b = wave_operator_W(gauge_transform(d, g), p, c);

    GaugeReport rep;
    rep.w_norm = lr_norm(d.w_plus, 2.0);
    for (const WaveOpRun* r : {&a, &b})
        if (r->limit().failed) {
            rep.failed = true;
            rep.failure = r->limit().failure;
            return rep;
        }
    for (const auto& sa : a.limit().samples) {
        const TrajectorySample* sb = b.limit().at(sa.t);
        if (!sb || !sa.snapshot || !sb->snapshot) continue;
        const double disc = lr_norm(phi_map(*sa.snapshot) - phi_map(*sb->snapshot), 2.0);
        const RealField drift = *sb->snapshot->phi - *sa.snapshot->phi - g.sigma;
        rep.t.push_back(sa.t);
        rep.v_discrepancy.push_back(disc);
        rep.phase_drift.push_back(lr_norm(drift, kInfinity));
        rep.max_discrepancy = std::max(rep.max_discrepancy, disc);
    }
    return rep;
}

ComplexField phi_map(const AuxState& state) {
    if (!state.phi) throw ParameterError("phi_map: state carries no phase");
    return v_representation(state);
}

OmegaResult omega_map(const ComplexField& u_plus_fourier, const ModelParams& p, const WaveOpConfig& cfg) {
    if (!(p.gamma > 0.5 && p.gamma < 1.0)) throw ParameterError("omega_map: gamma must lie in (1/2, 1)");
    WaveOpConfig c = cfg;
    c.keep_limit_snapshots = true;
    OmegaResult out{wave_operator_W(AsymptoticDatum::from_w_plus(u_plus_fourier), p, c), {}, {}};
    for (auto& smp : out.run.trajectories.back().samples) {
        if (!smp.snapshot) continue;
        out.t.push_back(smp.t);
        out.v.push_back(phi_map(*smp.snapshot));
    }
    return out;
}

Omega1Result omega1_map(const ComplexField& u_plus_fourier, const ModelParams& p, const WaveOpConfig& cfg,
                        double dt_rel) {
    if (!(p.mu < 2.0)) throw ParameterError("omega1_map: unsupported for mu >= 2 (global solvability needs mu < 2)");
    const OmegaResult om = omega_map(u_plus_fourier, p, cfg);
    Omega1Result out;
    out.mass_in = lr_norm(u_plus_fourier, 2.0);
    if (om.run.limit().failed || om.v.empty()) {
        out.failed = true;
        out.failure = om.run.limit().failed ? om.run.limit().failure : "no limit samples";
        out.v1 = ComplexField(u_plus_fourier.grid);
        return out;
    }
    out.t_start = om.t.front();
    out.v1 = rescaled_nls_evolve(om.v.front(), out.t_start, 1.0, p, dt_rel);
    out.mass_out = lr_norm(out.v1, 2.0);
    if (!std::isfinite(out.mass_out)) {
        out.failed = true;
        out.failure = "rescaled evolution to t = 1 blew up";
    }
    return out;
}

}  // namespace hwave
