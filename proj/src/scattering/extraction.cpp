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
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "hwave/core/error.hpp"
#include "hwave/scattering/scattering.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

namespace {

std::vector<const TrajectorySample*> snapshots_of(const TrajectoryRecord& traj, const char* what) {
    std::vector<const TrajectorySample*> out;
    for (const auto& s : traj.samples)
        if (s.snapshot) out.push_back(&s);
    if (out.size() < 3) throw ParameterError(std::string(what) + ": needs at least three snapshots");
    return out;
}

// Integral over [a, b] of the quadratic through (a, fa), (b, fb), (c, fc),
// returned as weights on (fa, fb, fc).
std::array<double, 3> quad_weights(double a, double b, double c) {
    auto prim = [](double x, double p, double q) {  // int (x - p)(x - q)
        return x * x * x / 3.0 - (p + q) * x * x / 2.0 + p * q * x;
    };
    auto integ = [&](double p, double q) { return prim(b, p, q) - prim(a, p, q); };
    return {integ(b, c) / ((a - b) * (a - c)), integ(a, c) / ((b - a) * (b - c)),
            integ(a, b) / ((c - a) * (c - b))};
}

// (s.grad) s, alias-free.
VectorField convective(const VectorField& s) {
    const int n = s.grid.n;
    VectorField out(s.grid);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.components[i] +=
                real_part(dealiased_product(to_complex(s.components[j]), to_complex(partial(s.components[i], j))));
    return out;
}

}  // namespace

ExtractedAmplitude extract_w_plus(const TrajectoryRecord& traj, const AdmissiblePair& pair, double tolerance) {
    const auto snaps = snapshots_of(traj, "extract_w_plus");
    const TrajectorySample* last = snaps.back();
    const double half = last->t / 2.0;
    const TrajectorySample* mid = snaps.front();
    for (const auto* s : snaps)
        if (std::abs(std::log(s->t / half)) < std::abs(std::log(mid->t / half))) mid = s;
    ExtractedAmplitude out;
    out.w_plus = last->snapshot->w;
    out.error_proxy = sobolev_norm(last->snapshot->w - mid->snapshot->w, pair.k - 1);
    out.flagged = out.error_proxy > tolerance;
    return out;
}

ExtractedProfile extract_s0(const TrajectoryRecord& traj, const ComplexField& w_plus, const ModelParams& p,
                            const AdmissiblePair& pair, double tail_tolerance) {
    if (!(p.gamma > 0.5)) throw ParameterError("extract_s0: needs gamma > 1/2");
    const auto snaps = snapshots_of(traj, "extract_s0");
    const std::size_t m = snaps.size();

    // Integrand in log time: tau F(tau).
    std::vector<VectorField> G;
    std::vector<double> u;
    for (const auto* smp : snaps) {
        const AuxState& st = *smp->snapshot;
        const double tau = st.t;
        VectorField F = (1.0 / (tau * tau)) * convective(st.s);
        if (p.lambda != 0.0) {
            const RealField dg = g_diag(st.w, tau, p) - g_diag(w_plus, tau, p);
            F += std::pow(tau, -p.gamma) * gradient(dg);
        }
        G.push_back(tau * F);
        u.push_back(std::log(tau));
    }

    ExtractedProfile out;
    // Power-law tail from the last two samples.
    const double gN = x_norm(G[m - 1], pair.l), gM = x_norm(G[m - 2], pair.l);
    VectorField tail(w_plus.grid);
    if (gN > 0.0) {
        // G ~ tau^{1-q}; int_T^inf F = G(T) / (q - 1).
        const double slope = std::log(gN / gM) / (u[m - 1] - u[m - 2]);
        out.tail_exponent = 1.0 - slope;
        if (out.tail_exponent > 1.0) {
            tail = (1.0 / (out.tail_exponent - 1.0)) * G[m - 1];
        } else {
            tail = G[m - 1];
            out.flagged = true;
            out.note = fmt::format("integrand does not decay faster than 1/t (exponent {:.3g})", out.tail_exponent);
        }
    }
    out.tail_norm = x_norm(tail, pair.l);
    if (out.tail_norm > tail_tolerance) {
        out.flagged = true;
        if (out.note.empty())
            out.note = fmt::format("tail {:.3e} above tolerance {:.3e} (power-law bound)", out.tail_norm, tail_tolerance);
    }

    // Cumulative from the top: I_i = int_{t_i}^{t_max}.
    std::vector<VectorField> I(m, VectorField(w_plus.grid));
    for (std::size_t i = m - 1; i-- > 0;) {
        const std::size_t c = i + 2 < m ? i + 2 : i - 1;
        const auto wts = quad_weights(u[i], u[i + 1], u[c]);
        I[i] = I[i + 1] + wts[0] * G[i] + wts[1] * G[i + 1] + wts[2] * G[c];
    }
    for (std::size_t i = 0; i < m; ++i) {
        out.t.push_back(snaps[i]->t);
        out.s.push_back(snaps[i]->snapshot->s + I[i] + tail);
    }
    return out;
}

ExtractedProfile extract_s02(const TrajectoryRecord& traj, const ComplexField& w_plus, const ModelParams& p,
                             const AdmissiblePair& pair, const QuadratureConfig& q, double tail_tolerance) {
    ExtractedProfile out = extract_s0(traj, w_plus, p, pair, tail_tolerance);
    const AsymptoticDatum d{w_plus, RealField(w_plus.grid)};
    const std::vector<RealField> D = phase_tail_series(d, out.t, p, q);
    for (std::size_t i = 0; i < out.t.size(); ++i) out.s[i] -= gradient(D[i]);
    return out;
}

ExtractedDatum extract_datum(const TrajectoryRecord& traj, const ModelParams& p, const AdmissiblePair& pair,
                             const QuadratureConfig& q, double tolerance) {
    ExtractedDatum out;
    const ExtractedAmplitude ew = extract_w_plus(traj, pair, tolerance);
    out.w_plus = ew.w_plus;
    out.w_error_proxy = ew.error_proxy;
    const ExtractedProfile e02 = extract_s02(traj, ew.w_plus, p, pair, q, tolerance);
    out.tail_norm = e02.tail_norm;
    out.tail_exponent = e02.tail_exponent;
    out.flagged = ew.flagged || e02.flagged;
    out.note = e02.note;
    // Read s02(1) off at the largest time, where the correction is smallest.
    const std::size_t i = e02.t.size() - 1;
    out.t_extract = e02.t[i];
    out.s02_at_1 = e02.s[i];
    if (p.lambda != 0.0)
        out.s02_at_1 -= free_growth_factor(out.t_extract, p.gamma) * gradient(g0(ew.w_plus, ew.w_plus, p));
    return out;
}

RoundTripReport round_trip_check(const WaveOpRun& run, const QuadratureConfig& q) {
    const auto& p = run.params;
    const auto& pair = run.pair;
    const auto& d = run.datum;
    RoundTripReport rep;

    const ExtractedDatum ex = extract_datum(run.limit(), p, pair, q);
    const double wn = sobolev_norm(d.w_plus, pair.k - 1);
    const double dw = sobolev_norm(ex.w_plus - d.w_plus, pair.k - 1);
    rep.w_plus_rel = wn > 0.0 ? dw / wn : dw;
    rep.w_error_proxy = ex.w_error_proxy;
    rep.tail_norm = ex.tail_norm;
    rep.flagged = ex.flagged;
    rep.t_extract = ex.t_extract;

    const VectorField ref = d.s02_at_1();
    rep.s02_scale = x_norm(ref, pair.l - 1);
    if (rep.s02_scale == 0.0 && p.lambda != 0.0)
        rep.s02_scale = x_norm(gradient(g0(d.w_plus, d.w_plus, p)), pair.l - 1);
    const double ds = x_norm(ex.s02_at_1 - ref, pair.l - 1);
    rep.s02_rel = rep.s02_scale > 0.0 ? ds / rep.s02_scale : ds;
    return rep;
}

RoundTripReport round_trip_check(const AsymptoticDatum& d, const ModelParams& p, WaveOpConfig cfg) {
    if (!(p.gamma > 0.5 && p.gamma < 1.0)) throw ParameterError("round_trip_check: gamma must lie in (1/2, 1)");
    cfg.keep_limit_snapshots = true;
    const WaveOpRun run = wave_operator_W(d, p, cfg);
    if (run.limit().failed) throw NumericalError("round_trip_check: " + run.limit().failure);
    return round_trip_check(run, cfg.quadrature);
}

}  // namespace hwave
