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

#include "hwave/rates/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "hwave/core/error.hpp"
#include "hwave/core/parallel.hpp"
#include "hwave/dynamics/rescaled.hpp"
#include "hwave/spectral/engine.hpp"
#include "hwave/spectral/gaussian.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

double gaussian_identity_error(double t, const GaussianSymbol& g) {
    const GaussianSymbol lhs = gaussian_apply(g, GaussianOp::U, t);
    GaussianSymbol r = gaussian_apply(g, GaussianOp::M, t);
    r = gaussian_apply(r, GaussianOp::F);
    r = gaussian_apply(r, GaussianOp::D, t);
    r = gaussian_apply(r, GaussianOp::M, t);
    return std::max(std::abs(lhs.amplitude - r.amplitude), std::abs(lhs.a - r.a));
}

namespace {

// (-1)^{j_1 + ... + j_n} for flat index i.
double parity(const GridSpec& g, std::size_t i) {
    int s = 0;
    for (int a = 0; a < g.n; ++a) {
        std::size_t stride = 1;
        for (int b = g.n - 1; b > a; --b) stride *= static_cast<std::size_t>(g.points);
        s += static_cast<int>((i / stride) % static_cast<std::size_t>(g.points));
    }
    return (s % 2) ? -1.0 : 1.0;
}

// Unitary DFT of the self-dual grid: x_j = (j - N/2) h and xi_m on the
// same lattice, (F f)_m = N^{-n/2} sum_j e^{-i x_j xi_m} f_j.
CVec self_dual_transform(const SpectralEngine& e, const GridSpec& g, CVec f, bool inverse) {
    const double scale = std::pow(static_cast<double>(g.points), 0.5 * g.n);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= parity(g, i);
    if (inverse) {
        e.backward(f.data());
        for (auto& v : f) v /= scale;
    } else {
        e.forward(f.data());
        for (auto& v : f) v *= scale;
    }
    for (std::size_t i = 0; i < f.size(); ++i) f[i] *= parity(g, i);
    return f;
}

}  // namespace

double grid_identity_error(double t, int n, int N) {
    if (N % 4 != 0) throw ParameterError("grid_identity_error: N must be a multiple of 4");
    if (!(t > 0.0)) throw ParameterError("grid_identity_error: t must be > 0");
    const double h = std::sqrt(2.0 * std::numbers::pi / N);
    const GridSpec g{n, N, 0.5 * N * h};
    const auto e = SpectralEngine::get(g);

    const std::vector<double> shift{0.3, -0.2, 0.1, 0.05};
    ComplexField f(g);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        double r2 = 0.0;
        const double x0 = node_coordinate(g, i, 0);
        for (int a = 0; a < n; ++a) {
            const double x = node_coordinate(g, i, a) - shift[a % 4];
            r2 += x * x;
        }
        f.values[i] = std::exp(cplx(-0.5 * r2, 0.5 * x0));
    }

    CVec y = self_dual_transform(*e, g, f.values, true);
    for (std::size_t i = 0; i < y.size(); ++i) {
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) r2 += std::pow(node_coordinate(g, i, a), 2);
        y[i] *= std::exp(cplx(0.0, r2 / (2.0 * t)));
    }
    y = self_dual_transform(*e, g, std::move(y), false);
    ComplexField lhs(g);
    lhs.values = std::move(y);
    const ComplexField rhs = free_propagator(f, -1.0 / t);
    return lr_norm(lhs - rhs, 2.0) / lr_norm(f, 2.0);
}

double split_step_mass_drift(const ComplexField& v0, const ModelParams& p, int steps) {
    ComplexField v = v0;
    double t = 1.0, worst = 0.0;
    double m = lr_norm(v, 2.0);
    for (int i = 0; i < steps; ++i) {
        const double dt = 0.05 * t;
        v = rescaled_nls_step(v, t, dt, p);
        t += dt;
        const double m1 = lr_norm(v, 2.0);
        worst = std::max(worst, std::abs(m1 - m) / m);
        m = m1;
    }
    return worst;
}

void AcceptanceConfig::validate() const {
    grid.validate();
    integrator.validate();
    for (int c : criteria)
        if (c < 1 || c > 8) throw ParameterError(fmt::format("acceptance: unknown criterion {}", c));
    if (!(window.t_min >= rate_T && window.t_max <= rate_T_max))
        throw ParameterError("acceptance: fit window must lie inside [rate_T, rate_T_max]");
    if (!(rate_t0 >= rate_T_max)) throw ParameterError("acceptance: rate_t0 must be >= rate_T_max");
}

bool AcceptanceResult::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::map<int, std::pair<int, int>> AcceptanceResult::by_criterion() const {
    std::map<int, std::pair<int, int>> out;
    for (const auto& v : verdicts) {
        auto& e = out[v.criterion];
        e.first += v.pass ? 1 : 0;
        e.second += 1;
    }
    return out;
}

namespace {

struct Job {
    std::string label;
    ModelParams p;
    AsymptoticDatum datum;
    WaveOpConfig cfg;
    std::optional<WaveOpRun> run = {};
    std::string error = {};
    double seconds = 0.0;
};

std::string glabel(const char* stem, double gamma) { return fmt::format("{}_g{:.2f}", stem, gamma); }
std::string rate_label(double gamma, double lambda) { return fmt::format("rates_g{:.2f}_l{:+g}", gamma, lambda); }

void strip(WaveOpRun& run) {
    for (auto& tr : run.trajectories)
        for (auto& s : tr.samples) s.snapshot.reset();
    run.extrapolated.clear();
}

}  // namespace

AcceptanceResult run_acceptance_suite(const AcceptanceConfig& cfg, const ProgressLog& log) {
    cfg.validate();
    auto say = [&](const std::string& m) {
        if (log) log(m);
    };
    auto want = [&](int c) { return cfg.criteria.count(c) > 0; };
    AcceptanceResult res;
    std::vector<Verdict> V;

    const AsymptoticDatum base = make_gaussian_datum(cfg.datum, cfg.grid, cfg.pair);
    for (const auto& m : check_gaussian_datum(cfg.datum, cfg.grid).messages) res.warnings.push_back(m);
    auto params = [&](double gamma) { return ModelParams{cfg.grid.n, cfg.lambda, gamma, cfg.mu}; };

    WaveOpConfig rate_cfg;
    rate_cfg.t0_schedule = {cfg.rate_t0};
    rate_cfg.T = cfg.rate_T;
    rate_cfg.T_max = cfg.rate_T_max;
    rate_cfg.integrator = cfg.integrator;
    rate_cfg.integrator.pair = cfg.pair;
    rate_cfg.quadrature = cfg.quadrature;
    rate_cfg.profile_lr = cfg.profile_lr;
    rate_cfg.workers = 1;

    // ---- experiment list
    std::vector<Job> jobs;
    std::vector<std::pair<double, double>> rate_runs;  // (gamma, lambda)
    if (want(3))
        for (double l : cfg.rate_lambdas)
            for (double g : cfg.rate_gammas) rate_runs.emplace_back(g, l);
    if (want(8) && std::find(rate_runs.begin(), rate_runs.end(), std::pair{cfg.robust_gamma, cfg.lambda}) ==
                       rate_runs.end())
        rate_runs.emplace_back(cfg.robust_gamma, cfg.lambda);
    for (auto [g, l] : rate_runs) {
        ModelParams p = params(g);
        p.lambda = l;
        jobs.push_back({rate_label(g, l), p, base, rate_cfg});
    }

    GaugeFunction sigma;
    if (want(4) || want(7)) {
        Job j{glabel("profile", cfg.profile_gamma), params(cfg.profile_gamma), base, rate_cfg};
        j.cfg.keep_limit_snapshots = want(7);
        jobs.push_back(j);
    }
    if (want(7)) {
        sigma.sigma = real_part(sample_gaussian(
            GaussianSymbol{cplx(cfg.gauge_amplitude, 0.0), cplx(1.0 / (cfg.gauge_width * cfg.gauge_width), 0.0),
                           cfg.grid.n},
            cfg.grid));
        sigma.sigma = project_band(sigma.sigma);
        Job j{glabel("gauge", cfg.profile_gamma), params(cfg.profile_gamma), gauge_transform(base, sigma), rate_cfg};
        j.cfg.keep_limit_snapshots = true;
        jobs.push_back(j);
    }
    if (want(5)) {
        Job j{glabel("cauchy", cfg.profile_gamma), params(cfg.profile_gamma), base, rate_cfg};
        j.cfg.t0_schedule = cfg.cauchy_schedule;
        j.cfg.T = cfg.cauchy_T;
        j.cfg.T_max = cfg.cauchy_T_max;
        jobs.push_back(j);
    }
    if (want(6)) {
        GaussianDatumSpec ds = cfg.datum;
        ds.phase_amplitude = cfg.roundtrip_phase_amplitude;
        Job j{glabel("roundtrip", cfg.profile_gamma), params(cfg.profile_gamma),
              make_gaussian_datum(ds, cfg.grid, cfg.pair), rate_cfg};
        j.cfg.keep_limit_snapshots = true;
        jobs.push_back(j);
        // lambda = 0 and s02(1) = 0: the right-hand side vanishes
        // identically, so any step size is exact; only the seed offset
        // (U(1/t0) - 1) w_plus remains, hence the very large t0.
        ModelParams p0 = params(cfg.profile_gamma);
        p0.lambda = 0.0;
        Job z{"roundtrip_lambda0", p0, base, rate_cfg};
        z.cfg.t0_schedule = {cfg.roundtrip_lambda0_t0};
        z.cfg.integrator.dt_rel = 1.0;
        z.cfg.keep_limit_snapshots = true;
        jobs.push_back(z);
    }
    if (want(8)) {
        const GridSpec big{cfg.grid.n, 2 * cfg.grid.points, 2.0 * cfg.grid.half_width};
        Job a{glabel("robust_box", cfg.robust_gamma), params(cfg.robust_gamma),
              make_gaussian_datum(cfg.datum, big, cfg.pair), rate_cfg};
        jobs.push_back(a);
        Job b{glabel("robust_eta", cfg.robust_gamma), params(cfg.robust_gamma), base, rate_cfg};
        b.cfg.integrator.eta = cfg.robust_eta;
        jobs.push_back(b);
    }

    // ---- run
    parallel_for(jobs.size(), worker_count(cfg.workers, jobs.size()), [&](std::size_t i) {
        Job& j = jobs[i];
        say(fmt::format("start {}", j.label));
        const auto c0 = std::chrono::steady_clock::now();
        try {
            j.run = wave_operator_W(j.datum, j.p, j.cfg);
        } catch (const std::exception& ex) {
            j.error = ex.what();
        }
        j.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
        say(fmt::format("done  {} ({:.1f} s){}", j.label, j.seconds, j.error.empty() ? "" : " error: " + j.error));
    });

    auto find = [&](const std::string& label) -> Job* {
        for (auto& j : jobs)
            if (j.label == label) return &j;
        return nullptr;
    };
    // Runs a verdict builder; a missing run or an exception becomes a
    // failing verdict carrying the reason.
    auto guarded = [&](const std::string& id, int crit, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& ex) {
            V.push_back(flag_verdict(id, crit, false, ex.what()));
        }
    };
    auto need = [&](const std::string& label) -> const WaveOpRun& {
        Job* j = find(label);
        if (!j) throw std::runtime_error("run " + label + " not scheduled");
        if (!j->run) throw std::runtime_error("run " + label + " failed: " + j->error);
        if (j->run->limit().failed) throw std::runtime_error("run " + label + ": " + j->run->limit().failure);
        return *j->run;
    };
    auto fit_col = [&](const WaveOpRun& r, Column c) {
        const Series s = column(r.limit(), c);
        return fit_power_law(s.t, s.v, cfg.window);
    };

    // ---- 1: operator identities
    if (want(1)) {
        say("identities");
        const GaussianSymbol g{cplx(0.7, 0.2), cplx(0.8, 0.3), cfg.grid.n};
        for (double t : cfg.identity_times) {
            guarded(fmt::format("c1.gaussian_U_eq_MDFM.t{:g}", t), 1, [&] {
                V.push_back(bound_verdict(fmt::format("c1.gaussian_U_eq_MDFM.t{:g}", t), 1,
                                          gaussian_identity_error(t, g), 1e-12));
            });
            guarded(fmt::format("c1.grid_FMF_eq_Ustar.t{:g}", t), 1, [&] {
                V.push_back(bound_verdict(fmt::format("c1.grid_FMF_eq_Ustar.t{:g}", t), 1,
                                          grid_identity_error(t, cfg.grid.n, cfg.identity_grid_points), 1e-6));
            });
        }
    }

    // ---- 2: conservation and structure on every trajectory
    if (want(2)) {
        guarded("c2.split_step_mass", 2, [&] {
            V.push_back(bound_verdict("c2.split_step_mass", 2,
                                      split_step_mass_drift(base.w_plus, params(cfg.profile_gamma), 100), 1e-13,
                                      "max per-step relative change of ||v||_2"));
        });
        for (auto& j : jobs) {
            if (!j.run) {
                V.push_back(flag_verdict("c2.run." + j.label, 2, false, j.error));
                continue;
            }
            for (std::size_t k = 0; k < j.run->trajectories.size(); ++k) {
                const auto& tr = j.run->trajectories[k];
                const std::string name =
                    j.run->trajectories.size() > 1 ? fmt::format("{}.t0_{:g}", j.label, j.run->t0_schedule[k]) : j.label;
                if (tr.failed) {
                    V.push_back(flag_verdict("c2.completed." + name, 2, false, tr.failure));
                    continue;
                }
                double drift = 0.0, vort = 0.0, gap = 0.0;
                for (const auto& s : tr.samples) {
                    const double span = std::max(std::abs(std::log(s.t / tr.t_start)), 1.0);
                    drift = std::max(drift, std::abs(s.mass - tr.initial_mass) / tr.initial_mass / span);
                    vort = std::max(vort, s.vort_max / (1.0 + s.ds_max));
                    if (tr.has_phase) gap = std::max(gap, s.grad_gap / (1.0 + s.s_max));
                }
                // eta > 0 dissipates mass by design; only the inviscid runs
                // are held to conservation.
                if (tr.initial_mass > 0.0 && j.cfg.integrator.eta == 0.0)
                    V.push_back(bound_verdict("c2.mass_drift." + name, 2, drift, 1e-8, "per unit log-time"));
                V.push_back(bound_verdict("c2.vorticity." + name, 2, vort, 1e-6, "max vort / (1 + |ds|_inf)"));
                if (tr.has_phase)
                    V.push_back(bound_verdict("c2.s_minus_grad_phi." + name, 2, gap, 1e-6,
                                              "max |s - grad phi| / (1 + |s|_inf)"));
                for (const auto& f : tr.flags) res.warnings.push_back(name + ": " + f);
            }
        }
    }

    // ---- 3: decay rates of the constructed solution
    if (want(3)) {
        for (auto [g, l] : rate_runs) {
            if (std::find(cfg.rate_gammas.begin(), cfg.rate_gammas.end(), g) == cfg.rate_gammas.end() ||
                std::find(cfg.rate_lambdas.begin(), cfg.rate_lambdas.end(), l) == cfg.rate_lambdas.end())
                continue;
            const std::string L = rate_label(g, l);
            const std::string tag = fmt::format("g{:.2f}_l{:+g}", g, l);
            struct Item {
                const char* name;
                Column col;
                double theory;
            };
            for (const Item& it : {Item{"w_minus_w_plus", Column::ErrWPlus, -g},
                                   Item{"s_minus_s02", Column::ErrS02, 0.5 - g},
                                   Item{"s_minus_s0", Column::ErrS0, 1.0 - 2.0 * g}}) {
                const std::string id = fmt::format("c3.{}.{}", it.name, tag);
                guarded(id, 3, [&] { V.push_back(exponent_verdict(id, 3, it.theory, fit_col(need(L), it.col), cfg.tol_rate)); });
            }
        }
    }

    // ---- 4: profile errors
    if (want(4)) {
        const double g = cfg.profile_gamma;
        const std::string L = glabel("profile", g);
        const std::string tag = fmt::format("g{:.2f}", g);
        guarded("c4.profile_phi02." + tag, 4, [&] {
            V.push_back(exponent_verdict("c4.profile_phi02." + tag, 4, 0.5 - g, fit_col(need(L), Column::ProfA),
                                         cfg.tol_profile));
        });
        guarded("c4.profile_phi0." + tag, 4, [&] {
            V.push_back(exponent_verdict("c4.profile_phi0." + tag, 4, 1.0 - 2.0 * g, fit_col(need(L), Column::ProfB),
                                         cfg.tol_profile));
        });
        guarded("c4.phi0_below_phi02." + tag, 4, [&] {
            const ProfileSeries ps = profile_error_series(need(L));
            if (ps.phi0.empty()) throw std::runtime_error("phi0 series unavailable");
            bool below = true;
            int checked = 0;
            for (std::size_t i = 0; i < ps.t.size(); ++i)
                if (ps.t[i] >= cfg.window.t_max) {
                    below = below && ps.phi0[i] < ps.phi02[i];
                    ++checked;
                }
            V.push_back(flag_verdict("c4.phi0_below_phi02." + tag, 4, below && checked > 0,
                                     fmt::format("checked {} samples with t >= {:g}", checked, cfg.window.t_max)));
        });
        guarded("c4.profile_lr_shift." + tag, 4, [&] {
            const WaveOpRun& r = need(L);
            const LrSeries lr = lr_profile_errors(r, cfg.profile_lr);
            const RateFit flr = fit_power_law(lr.t, lr.value, cfg.window);
            const RateFit fa = fit_col(r, Column::ProfA);
            Verdict v{"c4.profile_lr_shift." + tag, 4, VerdictKind::TwoSided, -lr.delta, flr.exponent - fa.exponent,
                      cfg.tol_profile, flr.r_squared, false,
                      fmt::format("L^{:g} exponent minus L^2 exponent", cfg.profile_lr)};
            v.pass = evaluate(v);
            V.push_back(v);
            V.push_back(exponent_verdict("c4.profile_lr_exponent." + tag, 4, -lr.delta + 0.5 - g, flr, cfg.tol_profile));
        });
    }

    // ---- 5: Cauchy in t0
    if (want(5)) {
        const double g = cfg.profile_gamma;
        const std::string L = glabel("cauchy", g);
        const std::string tag = fmt::format("g{:.2f}", g);
        guarded("c5.cauchy_decreasing." + tag, 5, [&] {
            const WaveOpRun& r = need(L);
            bool dec = !r.differences.empty();
            for (std::size_t i = 1; i < r.differences.size(); ++i)
                dec = dec && r.differences[i].value < r.differences[i - 1].value;
            V.push_back(flag_verdict("c5.cauchy_decreasing." + tag, 5, dec, r.calibration_outcome));
            std::vector<double> t0, d;
            for (const auto& c : r.differences) {
                t0.push_back(c.t0_a);
                d.push_back(c.value);
            }
            // Four seeds give three differences; the fit accepts three.
            const RateFit f = fit_power_law(t0, d, FitWindow{t0.front(), t0.back()}, 3);
            Verdict v{"c5.cauchy_t0_exponent." + tag, 5, VerdictKind::Upper, -std::min(g, 0.5), f.exponent, 0.2,
                      f.r_squared, false, "fitted exponent must not exceed -(min(gamma, 1/2) - 0.2)"};
            v.pass = evaluate(v);
            V.push_back(v);
        });
    }

    // ---- 6: round trip
    if (want(6)) {
        const std::string tag = fmt::format("g{:.2f}", cfg.profile_gamma);
        guarded("c6.round_trip." + tag, 6, [&] {
            const RoundTripReport rt = round_trip_check(need(glabel("roundtrip", cfg.profile_gamma)), cfg.quadrature);
            V.push_back(bound_verdict("c6.round_trip_w_plus." + tag, 6, rt.w_plus_rel, 1e-2, "relative, H^{k-1}"));
            V.push_back(bound_verdict("c6.round_trip_s02." + tag, 6, rt.s02_rel, 2e-2,
                                      fmt::format("relative, X^(l-1), read at t = {:g}", rt.t_extract)));
        });
        guarded("c6.round_trip_lambda0", 6, [&] {
            const RoundTripReport rt = round_trip_check(need("roundtrip_lambda0"), cfg.quadrature);
            V.push_back(bound_verdict("c6.round_trip_lambda0_w_plus", 6, rt.w_plus_rel, 1e-10));
            V.push_back(bound_verdict("c6.round_trip_lambda0_s02", 6, rt.s02_rel, 1e-10, "absolute (s02(1) = 0)"));
        });
    }

    // ---- 7: gauge covariance
    if (want(7)) {
        const double g = cfg.profile_gamma;
        const std::string tag = fmt::format("g{:.2f}", g);
        guarded("c7.gauge." + tag, 7, [&] {
            const WaveOpRun& a = need(glabel("profile", g));
            const WaveOpRun& b = need(glabel("gauge", g));
            const double wn = lr_norm(a.datum.w_plus, 2.0);
            double worst = 0.0;
            std::vector<double> t, drift;
            for (const auto& sa : a.limit().samples) {
                const TrajectorySample* sb = b.limit().at(sa.t);
                if (!sb || !sa.snapshot || !sb->snapshot) continue;
                worst = std::max(worst, lr_norm(phi_map(*sa.snapshot) - phi_map(*sb->snapshot), 2.0));
                t.push_back(sa.t);
                drift.push_back(
                    lr_norm(*sb->snapshot->phi - *sa.snapshot->phi - project_band(sigma.sigma), kInfinity));
            }
            if (t.empty()) throw std::runtime_error("no common snapshots");
            V.push_back(bound_verdict("c7.gauge_v_discrepancy." + tag, 7, worst / wn, 1e-3,
                                      "max ||v - v'||_2 / ||w||_2 over the window"));
            V.push_back(exponent_verdict("c7.gauge_phase_drift." + tag, 7, -g, fit_power_law(t, drift, cfg.window),
                                         cfg.tol_gauge, "||(phi' - phi) - sigma||_inf"));
        });
    }

    // ---- 8: robustness of exponents
    if (want(8)) {
        const double g = cfg.robust_gamma;
        const std::string tag = fmt::format("g{:.2f}", g);
        struct Item {
            const char* name;
            Column col;
        };
        const Item items[] = {{"w_minus_w_plus", Column::ErrWPlus}, {"s_minus_s02", Column::ErrS02},
                              {"s_minus_s0", Column::ErrS0},        {"profile_phi02", Column::ProfA},
                              {"profile_phi0", Column::ProfB}};
        for (const char* variant : {"robust_box", "robust_eta"})
            for (const Item& it : items) {
                const std::string id = fmt::format("c8.{}.{}.{}", variant, it.name, tag);
                guarded(id, 8, [&] {
                    const RateFit f0 = fit_col(need(rate_label(g, cfg.lambda)), it.col);
                    const RateFit f1 = fit_col(need(glabel(variant, g)), it.col);
                    Verdict v{id, 8, VerdictKind::TwoSided, f0.exponent, f1.exponent, cfg.tol_robust, f1.r_squared,
                              false, "theory column holds the baseline exponent"};
                    v.pass = evaluate(v);
                    V.push_back(v);
                });
            }
    }

    // ---- collect
    for (auto& j : jobs) {
        if (!j.run) continue;
        strip(*j.run);
        for (const auto& w : j.run->warnings) res.warnings.push_back(j.label + ": " + w);
        for (std::size_t k = 0; k < j.run->trajectories.size(); ++k) {
            const std::string name =
                j.run->trajectories.size() > 1 ? fmt::format("{}_t0_{:g}", j.label, j.run->t0_schedule[k]) : j.label;
            res.trajectories.emplace(name, j.run->trajectories[k]);
        }
        res.runs.emplace(j.label, std::move(*j.run));
    }
    res.verdicts = sorted(std::move(V));
    return res;
}

}  // namespace hwave
