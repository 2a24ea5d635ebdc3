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

#include "hwave/scattering/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hwave/core/error.hpp"
#include "hwave/core/parallel.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

namespace {

double cauchy_norm(const AuxState& a, const AuxState& b, const AdmissiblePair& pair) {
    return sobolev_norm(a.w - b.w, pair.k - 1) + x_norm(a.s - b.s, pair.l - 1);
}

}  // namespace

DatumConstants datum_constants(const AsymptoticDatum& d, const ModelParams& p, const AdmissiblePair& pair) {
    d.validate();
    DatumConstants c;
    c.a = sobolev_norm(d.w_plus, pair.k + 1);
    const double at_one = x_norm(d.s02_at_1(), pair.l + 1);
    const double at_inf = p.lambda == 0.0
                              ? 0.0
                              : x_norm(gradient(g0(d.w_plus, d.w_plus, p)), pair.l + 1) / (1.0 - p.gamma);
    c.b = std::max(at_one, at_inf);
    return c;
}

double heuristic_T(const AsymptoticDatum& d, const ModelParams& p, const AdmissiblePair& pair, double c_cal) {
    if (!(p.gamma > 0.5 && p.gamma < 1.0)) throw ParameterError("heuristic_T: gamma must lie in (1/2, 1)");
    if (!(c_cal > 0.0)) throw ParameterError("heuristic_T: C_cal must be > 0");
    const DatumConstants c = datum_constants(d, p, pair);
    // Without coupling and without a phase correction the state is a free
    // wave and every seed time is admissible.
    if (p.lambda == 0.0 && c.b == 0.0) return 1.0;
    const double a2 = c.a * c.a;
    double m = std::pow(c.b + a2, 1.0 / p.gamma);
    if (c.a > 0.0) m = std::max(m, c.b > 0.0 ? a2 * a2 / (c.b * c.b) : kInfinity);
    const double q = 2.0 * p.gamma - 1.0;
    return c_cal * m / (q * q);
}

AuxState seed_at_t0(const AsymptoticDatum& d, double t0, const ModelParams& p) {
    if (!(t0 >= 1.0)) throw ParameterError("seed_at_t0: t0 must be >= 1");
    d.validate();
    return AuxState{t0, free_propagator(d.w_plus, 1.0 / t0), s02_of_t(d, t0, p), phi02_of_t(d, t0, p)};
}

void WaveOpConfig::validate() const {
    if (t0_schedule.empty()) throw ParameterError("wave operator: empty t0 schedule");
    for (std::size_t i = 1; i < t0_schedule.size(); ++i)
        if (!(t0_schedule[i] > t0_schedule[i - 1]))
            throw ParameterError("wave operator: t0 schedule must be strictly increasing");
    if (!(T >= 1.0)) throw ParameterError("wave operator: T must be >= 1");
    if (!(T_max > T)) throw ParameterError("wave operator: T_max must exceed T");
    if (!(t0_schedule.front() >= T)) throw ParameterError("wave operator: schedule must start at or above T");
    if (!(sample_ratio > 1.0)) throw ParameterError("wave operator: sample ratio must be > 1");
    if (max_retries < 0) throw ParameterError("wave operator: max_retries must be >= 0");
    if (!(c_cal > 0.0)) throw ParameterError("wave operator: C_cal must be > 0");
    integrator.validate();
}

std::vector<double> geometric_samples(double T, double T_max, double ratio) {
    if (!(T > 0.0 && T_max > T && ratio > 1.0)) throw ParameterError("geometric_samples: bad window");
    std::vector<double> out;
    for (int j = 0;; ++j) {
        const double t = T * std::pow(ratio, j);
        if (t >= T_max * (1.0 - 1e-12)) break;
        out.push_back(t);
    }
    out.push_back(T_max);
    if (T_max / 2.0 > T) out.push_back(T_max / 2.0);
    std::sort(out.begin(), out.end());
    // Drop near-duplicates so the integrator never sees two stops 1e-12 apart.
    std::vector<double> uniq;
    for (double t : out)
        if (uniq.empty() || t > uniq.back() * (1.0 + 1e-9)) uniq.push_back(t);
        else if (t == T_max || t == T_max / 2.0) uniq.back() = t;
    return uniq;
}

SampleObserver datum_error_observer(const AsymptoticDatum& d, const ModelParams& p,
                                    const AdmissiblePair& pair, const std::vector<double>& times,
                                    const QuadratureConfig& q, double lr_exponent) {
    struct Shared {
        AsymptoticDatum d;
        ModelParams p;
        AdmissiblePair pair;
        VectorField s02_1, grad_g0;
        RealField g0f;
        std::vector<double> times;
        std::vector<RealField> tail;  // D(t)
        double lr = 0.0;
    };
    auto sh = std::make_shared<Shared>();
    sh->d = d;
    sh->p = p;
    sh->pair = pair;
    sh->s02_1 = d.s02_at_1();
    sh->g0f = p.lambda == 0.0 ? RealField(d.w_plus.grid) : g0(d.w_plus, d.w_plus, p);
    sh->grad_g0 = gradient(sh->g0f);
    sh->times = times;
    if (p.gamma > 0.5 && !times.empty()) sh->tail = phase_tail_series(d, times, p, q);
    sh->lr = lr_exponent;

    return [sh](const AuxState& st, TrajectorySample& smp) {
        const double t = st.t;
        const double c = free_growth_factor(t, sh->p.gamma);
        const int k = sh->pair.k, l = sh->pair.l;
        VectorField s02 = sh->s02_1 + c * sh->grad_g0;
        smp.err_w_plus_k = sobolev_norm(st.w - sh->d.w_plus, k);
        smp.err_s02_l = x_norm(st.s - s02, l);

        const RealField* D = nullptr;
        for (std::size_t i = 0; i < sh->times.size() && i < sh->tail.size(); ++i)
            if (std::abs(sh->times[i] - t) <= 1e-12 * t) D = &sh->tail[i];
        if (D) smp.err_s0_l = x_norm(st.s - s02 - gradient(*D), l);

        if (!st.phi) return;
        RealField phi02 = sh->d.phi02_at_1 + c * sh->g0f;
        const ComplexField V = half_propagate(st.w, t);
        const ComplexField a = multiply_phase(V, phi02 - *st.phi) - sh->d.w_plus;
        smp.err_prof_a = sobolev_norm(a, k);
        if (sh->lr > 0.0)
            smp.err_prof_lr = std::pow(t, -delta_r(st.w.grid.n, sh->lr)) * lr_norm(a, sh->lr);
        if (D)
            smp.err_prof_b =
                sobolev_norm(multiply_phase(V, phi02 + *D - *st.phi) - half_propagate(sh->d.w_plus, t), k);
    };
}

WaveOpRun wave_operator_W(const AsymptoticDatum& datum, const ModelParams& p, const WaveOpConfig& cfg,
                          const SampleObserver& extra) {
    cfg.validate();
    datum.validate();
    // The solver cannot carry Nyquist modes; references must not either,
    // or every error series picks up a constant floor.
    const AsymptoticDatum d{project_band(datum.w_plus), project_band(datum.phi02_at_1)};
    p.validate_for_scattering();
    if (p.n != d.w_plus.grid.n) throw ParameterError("wave operator: model dimension differs from grid");
    const AdmissiblePair pair = cfg.integrator.pair;
    const AdmissibilityResult adm = check_admissible(p.n, p.mu, pair.k, pair.l);
    if (!adm.admissible)
        throw ParameterError(fmt::format("wave operator: pair (k, l) = ({}, {}) not admissible: violates {}",
                                         pair.k, pair.l, fmt::join(adm.violations, "; ")));

    WaveOpRun run;
    run.datum = d;
    run.params = p;
    run.pair = pair;
    run.T = cfg.T;
    run.T_max = cfg.T_max;
    run.c_cal = cfg.c_cal;
    run.profile_lr = cfg.profile_lr;
    run.t0_schedule = cfg.t0_schedule;
    run.sample_times = geometric_samples(cfg.T, cfg.T_max, cfg.sample_ratio);

    const SampleObserver errors =
        datum_error_observer(d, p, pair, run.sample_times, cfg.quadrature, cfg.profile_lr);
    SampleObserver observer = [&](const AuxState& st, TrajectorySample& smp) {
        errors(st, smp);
        if (extra) extra(st, smp);
    };
    const bool cauchy = cfg.t0_schedule.size() > 1;

    for (int attempt = 0;; ++attempt) {
        run.heuristic_T = heuristic_T(d, p, pair, run.c_cal);
        if (run.t0_schedule.front() < run.heuristic_T) {
            if (!cfg.allow_override)
                throw ParameterError(fmt::format("wave operator: schedule starts at {:.6g}, below heuristic T = {:.6g}",
                                                 run.t0_schedule.front(), run.heuristic_T));
            run.warnings.push_back(fmt::format(
                "schedule starts at t0 = {:.6g}, below heuristic T = {:.6g} (C_cal = {:g}); user override",
                run.t0_schedule.front(), run.heuristic_T, run.c_cal));
        }

        const std::size_t m = run.t0_schedule.size();
        run.trajectories.assign(m, TrajectoryRecord{});
        IntegratorConfig ic = cfg.integrator;
        ic.sample_times = run.sample_times;
        ic.keep_snapshots = cauchy || cfg.keep_limit_snapshots || cfg.richardson;
        ic.forcing_reference = d.w_plus;
        parallel_for(m, worker_count(cfg.workers, m), [&](std::size_t i) {
            const double t0 = run.t0_schedule[i];
            const AuxState seed = seed_at_t0(d, t0, p);
            TrajectoryRecord rec = integrate_aux(seed, cfg.T, ic, p, observer);
            if (!rec.failed && cfg.T_max > t0)
                rec = merge_records(rec, integrate_aux(seed, cfg.T_max, ic, p, observer));
            run.trajectories[i] = std::move(rec);
        });

        // Ordered fold of successive differences.
        run.differences.clear();
        for (std::size_t i = 0; i + 1 < m; ++i) {
            CauchyDifference cd{run.t0_schedule[i], run.t0_schedule[i + 1], 0.0, 0.0};
            const auto& A = run.trajectories[i];
            const auto& B = run.trajectories[i + 1];
            for (const auto& sa : A.samples) {
                const TrajectorySample* sb = B.at(sa.t);
                if (!sb || !sa.snapshot || !sb->snapshot) continue;
                const double v = cauchy_norm(*sa.snapshot, *sb->snapshot, pair);
                if (v >= cd.value) {
                    cd.value = v;
                    cd.t_at_sup = sa.t;
                }
            }
            run.differences.push_back(cd);
        }

        bool any_failed = false;
        for (const auto& tr : run.trajectories) any_failed = any_failed || tr.failed;
        const bool decreasing_start = run.differences.size() < 2 || run.differences[1].value < run.differences[0].value;
        if (!cfg.calibrate || any_failed || decreasing_start || attempt >= cfg.max_retries) {
            if (!cauchy)
                run.calibration_outcome = "single t0; no calibration";
            else if (decreasing_start)
                run.calibration_outcome = fmt::format("accepted after {} retr{}", attempt, attempt == 1 ? "y" : "ies");
            else
                run.calibration_outcome =
                    fmt::format("first differences still non-decreasing after {} retries", attempt);
            break;
        }
        for (double& t0 : run.t0_schedule) t0 *= 2.0;
        run.c_cal *= 2.0;
        ++run.calibration_retries;
        run.warnings.push_back(fmt::format("calibration: first Cauchy differences did not decrease; "
                                           "doubling T and the schedule (retry {})",
                                           run.calibration_retries));
    }

    for (std::size_t i = 1; i < run.differences.size(); ++i)
        if (!(run.differences[i].value < run.differences[i - 1].value)) run.divergence_flag = true;
    for (const auto& tr : run.trajectories)
        if (tr.failed) run.divergence_flag = true;
    if (run.divergence_flag)
        run.warnings.push_back("divergence flag: Cauchy differences not strictly decreasing or a leg failed");

    if (cfg.richardson && run.trajectories.size() >= 2) {
        const auto& A = run.trajectories[run.trajectories.size() - 2];
        const auto& B = run.trajectories.back();
        const double rho = run.t0_schedule.back() / run.t0_schedule[run.t0_schedule.size() - 2];
        const double f = 1.0 / (std::pow(rho, std::min(p.gamma, 0.5)) - 1.0);
        for (const auto& sb : B.samples) {
            const TrajectorySample* sa = A.at(sb.t);
            if (!sa || !sa->snapshot || !sb.snapshot) continue;
            AuxState x = *sb.snapshot;
            x.w += cplx(f, 0.0) * (sb.snapshot->w - sa->snapshot->w);
            x.s += f * (sb.snapshot->s - sa->snapshot->s);
            if (x.phi && sa->snapshot->phi) *x.phi += f * (*sb.snapshot->phi - *sa->snapshot->phi);
            run.extrapolated.push_back(std::move(x));
        }
    }

    // Snapshots served the fold; keep only what was asked for.
    for (std::size_t i = 0; i < run.trajectories.size(); ++i) {
        const bool keep = cfg.keep_limit_snapshots && i + 1 == run.trajectories.size();
        if (!keep)
            for (auto& smp : run.trajectories[i].samples) smp.snapshot.reset();
    }
    return run;
}

}  // namespace hwave
