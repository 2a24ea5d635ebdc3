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

#include "hwave/dynamics/aux_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "aux_evaluator.hpp"
#include "hwave/core/error.hpp"
#include "hwave/kernels/kernels.hpp"
#include "hwave/spectral/engine.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

using detail::AuxEvaluator;

void IntegratorConfig::validate() const {
    if (!(dt_base > 0.0)) throw ParameterError("dt_base must be > 0");
    if (!(dt_rel > 0.0)) throw ParameterError("dt_rel must be > 0");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ParameterError("cfl_safety must lie in (0, 1]");
    if (!(eta >= 0.0)) throw ParameterError("eta must be >= 0");
    for (std::size_t i = 1; i < sample_times.size(); ++i)
        if (!(sample_times[i] > sample_times[i - 1]))
            throw ParameterError("sample_times must be strictly increasing");
    for (double t : sample_times)
        if (!(t > 0.0)) throw ParameterError("sample_times must be positive");
}

const TrajectorySample* TrajectoryRecord::at(double t, double rel_tol) const {
    for (const auto& s : samples)
        if (std::abs(s.t - t) <= rel_tol * std::abs(t)) return &s;
    return nullptr;
}

namespace {

void check_state(const AuxState& st, const char* what) {
    if (!(st.t > 0.0)) throw ParameterError(std::string(what) + ": t must be > 0");
    require_same_grid(st.w.grid, st.s.grid, what);
    if (st.phi) require_same_grid(st.w.grid, st.phi->grid, what);
    if (static_cast<int>(st.s.components.size()) != st.w.grid.n)
        throw ParameterError(std::string(what) + ": s must have n components");
}

CVec pack_state(const AuxState& st, const AuxEvaluator& ev) {
    const std::size_t N = ev.block();
    const auto& e = ev.engine();
    CVec y(ev.state_size());
    auto put = [&](CVec c, std::size_t blk) {
        e.project(c.data());
        std::copy(c.begin(), c.end(), y.begin() + static_cast<std::ptrdiff_t>(blk * N));
    };
    put(to_coefficients(st.w), 0);
    for (int j = 0; j < st.w.grid.n; ++j) put(to_coefficients(st.s.components[j]), 1 + j);
    if (ev.with_phase()) put(to_coefficients(*st.phi), 1 + st.w.grid.n);
    return y;
}

CVec block_copy(const cplx* y, std::size_t blk, std::size_t N) {
    return CVec(y + blk * N, y + (blk + 1) * N);
}

AuxState unpack_state(double t, const cplx* y, const AuxEvaluator& ev, const GridSpec& g) {
    const std::size_t N = ev.block();
    AuxState st;
    st.t = t;
    st.w = from_coefficients(g, block_copy(y, 0, N));
    st.s = VectorField(g);
    for (int j = 0; j < g.n; ++j)
        st.s.components[j] = real_from_coefficients(g, block_copy(y, 1 + j, N));
    if (ev.with_phase()) st.phi = real_from_coefficients(g, block_copy(y, 1 + g.n, N));
    return st;
}

// Physical d_a of a real field given by coefficients.
RVec derivative_values(const SpectralEngine& e, const cplx* coeffs, int axis) {
    CVec c(e.size());
    const auto& k = e.xi(axis);
    const auto& band = e.band();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = cplx(0.0, k[i] * band[i]) * coeffs[i];
    e.backward(c.data());
    RVec out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
    return out;
}

struct Structure {
    double vort = 0.0, grad_gap = std::numeric_limits<double>::quiet_NaN(), ds_max = 0.0;
};

Structure structure_from_coeffs(const SpectralEngine& e, const GridSpec& g, const cplx* y,
                                bool with_phase, const std::vector<RVec>& s_vals) {
    const std::size_t N = e.size();
    const int n = g.n;
    Structure out;
    std::vector<std::vector<RVec>> d(n);  // d[i][j] = d_i s_j
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i].push_back(derivative_values(e, y + (1 + j) * N, i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (double v : d[i][j]) out.ds_max = std::max(out.ds_max, std::abs(v));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (std::size_t x = 0; x < N; ++x)
                out.vort = std::max(out.vort, std::abs(d[i][j][x] - d[j][i][x]));
    if (with_phase) {
        RVec gap2(N, 0.0);
        for (int j = 0; j < n; ++j) {
            const RVec dphi = derivative_values(e, y + (1 + n) * N, j);
            for (std::size_t x = 0; x < N; ++x) {
                const double q = s_vals[j][x] - dphi[x];
                gap2[x] += q * q;
            }
        }
        out.grad_gap = std::sqrt(*std::max_element(gap2.begin(), gap2.end()));
    }
    return out;
}

class Integrator {
public:
    Integrator(const AuxState& init, const IntegratorConfig& cfg, const ModelParams& p,
               SampleObserver observer)
        : g_(init.w.grid), cfg_(cfg), p_(p), ev_(init.w.grid, p, init.phi.has_value()),
          observer_(std::move(observer)) {}

    TrajectoryRecord run(const AuxState& init, double t_target);

private:
    TrajectorySample diagnose(double t, const cplx* y);
    void step(double t, double h, CVec& y);
    void lawson_factor(double ta, double tb, RVec& out) const;
    void scale_blocks(cplx* v, const RVec& f) const;

    // Closed-form forcing. The stepped variable is z = y - F(t) A with
    // F(t) = int_{t_init}^t tau^{-gamma} and A the coefficients of
    // (grad g0(w_ref), g0(w_ref)); without a reference A is empty and z = y.
    void setup_forcing(double t_init, int dir);
    double forcing_weight(double t) const;
    void materialize(double t, const cplx* z, cplx* y) const;
    void rhs(double t, const cplx* z, cplx* dz);

    GridSpec g_;
    IntegratorConfig cfg_;
    ModelParams p_;
    AuxEvaluator ev_;
    SampleObserver observer_;
    CVec k1_, k2_, k3_, k4_, tmp_, acc_, full_;
    RVec e_nm_, e_ne_, e_me_;
    CVec forcing_;
    double t_init_ = 1.0;
    int dir_ = 1;
};

void Integrator::setup_forcing(double t_init, int dir) {
    t_init_ = t_init;
    dir_ = dir;
    forcing_.clear();
    if (!cfg_.forcing_reference) return;
    const ComplexField& ref = *cfg_.forcing_reference;
    require_same_grid(g_, ref.grid, "integrate_aux: forcing_reference");
    const auto& e = ev_.engine();
    const std::size_t N = ev_.block();
    CVec R(N);
    {
        // |w_ref|^2 as an exact band projection, matching the evaluator.
        CVec c = to_coefficients(ref), pad(e.padded_size());
        e.project(c.data());
        e.to_padded(c.data(), pad.data());
        for (auto& v : pad) v = cplx(std::norm(v), 0.0);
        e.from_padded(pad.data(), R.data());
    }
    const auto& riesz = e.riesz_symbol(p_.mu);
    CVec G(N);
    for (std::size_t i = 0; i < N; ++i) G[i] = p_.lambda * riesz[i] * R[i];
    forcing_.assign(ev_.state_size(), cplx{});
    const cplx I(0.0, 1.0);
    for (int j = 0; j < g_.n; ++j) {
        const auto& kj = e.xi(j);
        for (std::size_t i = 0; i < N; ++i) forcing_[(1 + j) * N + i] = I * kj[i] * G[i];
    }
    if (ev_.with_phase())
        std::copy(G.begin(), G.end(), forcing_.begin() + static_cast<std::ptrdiff_t>((1 + g_.n) * N));
}

double Integrator::forcing_weight(double t) const {
    const double a = 1.0 - p_.gamma;
    if (std::abs(a) < 1e-12) return std::log(t / t_init_);
    return (std::pow(t, a) - std::pow(t_init_, a)) / a;
}

void Integrator::materialize(double t, const cplx* z, cplx* y) const {
    const std::size_t S = ev_.state_size();
    if (forcing_.empty()) {
        std::copy(z, z + S, y);
        return;
    }
    kernels::active().lincomb(y, z, forcing_weight(t), forcing_.data(), S);
}

void Integrator::rhs(double t, const cplx* z, cplx* dz) {
    if (forcing_.empty()) {
        ev_.rhs(t, z, dz);
        return;
    }
    const std::size_t S = ev_.state_size();
    full_.resize(S);
    materialize(t, z, full_.data());
    ev_.rhs(t, full_.data(), dz);
    kernels::active().axpy(dz, -std::pow(t, -p_.gamma), forcing_.data(), S);
    if (cfg_.eta > 0.0) {
        // The Lawson factor acts on z only; the dissipation of F(t) A is
        // returned here as an ordinary source.
        const auto& k2 = ev_.engine().xi2();
        const std::size_t N = ev_.block();
        const double c = -dir_ * cfg_.eta * forcing_weight(t) / (t * t);
        for (std::size_t b = 1; b < static_cast<std::size_t>(ev_.blocks()); ++b)
            for (std::size_t i = 0; i < N; ++i) dz[b * N + i] += c * k2[i] * forcing_[b * N + i];
    }
}

void Integrator::lawson_factor(double ta, double tb, RVec& out) const {
    const auto& k2 = ev_.engine().xi2();
    const double span = std::abs(1.0 / ta - 1.0 / tb);
    out.resize(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i) out[i] = std::exp(-cfg_.eta * k2[i] * span);
}

void Integrator::scale_blocks(cplx* v, const RVec& f) const {
    for (int b = 0; b < ev_.blocks(); ++b)
        kernels::active().scale_real(v + b * ev_.block(), f.data(), ev_.block());
}

// Classical RK4; with eta > 0 the Lawson (integrating-factor) variant with
// exact propagators exp(-eta |xi|^2 |1/t_a - 1/t_b|) between stages.
void Integrator::step(double t, double h, CVec& y) {
    const auto& kt = kernels::active();
    const std::size_t S = y.size();
    for (CVec* v : {&k1_, &k2_, &k3_, &k4_, &tmp_, &acc_}) v->resize(S);
    const bool visc = cfg_.eta > 0.0;
    const double tm = t + 0.5 * h, te = t + h;
    if (visc) {
        lawson_factor(t, tm, e_nm_);
        lawson_factor(t, te, e_ne_);
        lawson_factor(tm, te, e_me_);
    }

    rhs(t, y.data(), k1_.data());

    kt.lincomb(tmp_.data(), y.data(), 0.5 * h, k1_.data(), S);
    if (visc) scale_blocks(tmp_.data(), e_nm_);
    rhs(tm, tmp_.data(), k2_.data());

    std::copy(y.begin(), y.end(), tmp_.begin());
    if (visc) scale_blocks(tmp_.data(), e_nm_);
    kt.axpy(tmp_.data(), 0.5 * h, k2_.data(), S);
    rhs(tm, tmp_.data(), k3_.data());

    if (visc) {
        std::copy(k3_.begin(), k3_.end(), acc_.begin());
        scale_blocks(acc_.data(), e_me_);
        std::copy(y.begin(), y.end(), tmp_.begin());
        scale_blocks(tmp_.data(), e_ne_);
        kt.axpy(tmp_.data(), h, acc_.data(), S);
    } else {
        kt.lincomb(tmp_.data(), y.data(), h, k3_.data(), S);
    }
    rhs(te, tmp_.data(), k4_.data());

    if (visc) {
        // y <- E_ne (y + h/6 k1) + h/3 E_me (k2 + k3) + h/6 k4
        kt.axpy(y.data(), h / 6.0, k1_.data(), S);
        scale_blocks(y.data(), e_ne_);
        kt.lincomb(acc_.data(), k2_.data(), 1.0, k3_.data(), S);
        scale_blocks(acc_.data(), e_me_);
        kt.axpy(y.data(), h / 3.0, acc_.data(), S);
        kt.axpy(y.data(), h / 6.0, k4_.data(), S);
    } else {
        kt.axpy(y.data(), h / 6.0, k1_.data(), S);
        kt.axpy(y.data(), h / 3.0, k2_.data(), S);
        kt.axpy(y.data(), h / 3.0, k3_.data(), S);
        kt.axpy(y.data(), h / 6.0, k4_.data(), S);
    }
}

TrajectorySample Integrator::diagnose(double t, const cplx* y) {
    const auto& e = ev_.engine();
    const std::size_t N = ev_.block();
    const int n = g_.n;
    const auto& kt = kernels::active();
    TrajectorySample smp;
    smp.t = t;
    const CVec W = block_copy(y, 0, N);
    std::vector<CVec> S;
    for (int j = 0; j < n; ++j) S.push_back(block_copy(y, 1 + j, N));

    smp.mass = std::sqrt(kt.sum_abs2(W.data(), N) * g_.box_volume());
    const int k = cfg_.pair.k, l = cfg_.pair.l;
    smp.norm_w_k = sobolev_norm_coeffs(g_, W, k);
    smp.norm_w_km1 = sobolev_norm_coeffs(g_, W, k - 1);

    std::vector<RVec> s_vals(n);
    VectorField s(g_);
    for (int j = 0; j < n; ++j) {
        s.components[j] = real_from_coefficients(g_, S[j]);
        s_vals[j] = s.components[j].values;
    }
    const double lr = lr_norm(s, x_norm_exponent(n));
    const double low = homogeneous_norm_coeffs(g_, S, x_norm_low_order(n));
    smp.norm_s_l = lr + low + homogeneous_norm_coeffs(g_, S, l + 1);
    smp.norm_s_lm1 = lr + low + homogeneous_norm_coeffs(g_, S, l);
    smp.s_max = lr_norm(s, kInfinity);

    const Structure st = structure_from_coeffs(e, g_, y, ev_.with_phase(), s_vals);
    smp.vort_max = st.vort;
    smp.grad_gap = st.grad_gap;
    smp.ds_max = st.ds_max;
    if (cfg_.keep_snapshots || observer_) {
        AuxState state = unpack_state(t, y, ev_, g_);
        if (observer_) observer_(state, smp);
        if (cfg_.keep_snapshots) smp.snapshot = std::move(state);
    }
    return smp;
}

TrajectoryRecord Integrator::run(const AuxState& init, double t_target) {
    TrajectoryRecord rec;
    rec.has_phase = ev_.with_phase();
    rec.t_start = init.t;
    CVec y = pack_state(init, ev_);
    const auto& kt = kernels::active();
    const std::size_t N = ev_.block();
    double t = init.t;
    const double dir = t_target >= t ? 1.0 : -1.0;
    setup_forcing(t, dir > 0.0 ? 1 : -1);
    CVec yf(y.size());
    auto actual = [&](double tt) -> const CVec& {
        materialize(tt, y.data(), yf.data());
        return yf;
    };

    // Stops: sample times strictly inside the span (plus the endpoints when listed).
    std::vector<double> stops;
    for (double ts : cfg_.sample_times)
        if ((ts - t) * dir > 0.0 && (t_target - ts) * dir >= 0.0) stops.push_back(ts);
    if (dir < 0.0) std::reverse(stops.begin(), stops.end());
    if (stops.empty() || stops.back() != t_target) stops.push_back(t_target);
    auto is_sample = [&](double ts) {
        return std::find(cfg_.sample_times.begin(), cfg_.sample_times.end(), ts) !=
               cfg_.sample_times.end();
    };

    auto guard_norm = [&](const CVec& v) {
        double sum = 0.0;
        for (int b = 0; b < 1 + g_.n; ++b) sum += kt.sum_abs2(v.data() + b * N, N);
        return std::sqrt(sum);
    };
    const double norm0 = guard_norm(actual(t));
    rec.initial_mass = std::sqrt(kt.sum_abs2(y.data(), N) * g_.box_volume());

    std::vector<TrajectorySample> samples;
    if (is_sample(t)) samples.push_back(diagnose(t, actual(t).data()));

    // Primes last_s_max for the first step size.
    {
        CVec scratch(y.size());
        rhs(t, y.data(), scratch.data());
    }
    const double h_grid = g_.spacing();
    std::size_t next = 0;
    while (next < stops.size()) {
        const double stop = stops[next];
        double h = cfg_.cfl_safety * std::min({cfg_.dt_base, cfg_.dt_rel * t,
                                               t * t * h_grid / (1.0 + ev_.last_s_max())});
        const double remaining = std::abs(stop - t);
        if (remaining <= h * (1.0 + 1e-9))
            h = remaining;
        else if (remaining < 2.0 * h)
            h = 0.5 * remaining;
        const bool lands = h == remaining;
        step(t, dir * h, y);
        ++rec.steps;
        t = lands ? stop : t + dir * h;

        const double gn = guard_norm(actual(t));
        if (!std::isfinite(gn) || gn > cfg_.blowup_factor * norm0) {
            rec.failed = true;
            rec.failure = fmt::format("blow-up guard triggered at t = {:.6g} (norm {:.3e}, initial {:.3e})",
                                      t, gn, norm0);
            break;
        }
        if (lands) {
            if (is_sample(stop)) samples.push_back(diagnose(stop, yf.data()));
            ++next;
        }
    }

    std::sort(samples.begin(), samples.end(),
              [](const TrajectorySample& a, const TrajectorySample& b) { return a.t < b.t; });
    for (const auto& smp : samples) {
        if (smp.vort_max > cfg_.tol_vort * (1.0 + smp.ds_max))
            rec.flags.push_back(fmt::format("vorticity {:.3e} above tolerance at t = {:.6g}{}", smp.vort_max,
                                            smp.t, smp.vort_max > 10 * cfg_.tol_vort * (1.0 + smp.ds_max)
                                                       ? " (invariant violation)" : ""));
        if (rec.has_phase && smp.grad_gap > cfg_.tol_grad * (1.0 + smp.s_max))
            rec.flags.push_back(fmt::format("s - grad phi gap {:.3e} above tolerance at t = {:.6g}{}",
                                            smp.grad_gap, smp.t,
                                            smp.grad_gap > 10 * cfg_.tol_grad * (1.0 + smp.s_max)
                                                ? " (invariant violation)" : ""));
    }
    // Discrete shadow of d|w|_k/dt <= C t^{-2} |s|_l |w|_k with C = 10.
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const auto& a = samples[i - 1];
        const auto& b = samples[i];
        const double rate = std::abs(b.norm_w_k - a.norm_w_k) / (b.t - a.t);
        const double bound = 10.0 * std::max(a.norm_s_l * a.norm_w_k / (a.t * a.t),
                                             b.norm_s_l * b.norm_w_k / (b.t * b.t));
        if (rate > bound && rate > 1e-14)
            rec.flags.push_back(fmt::format("growth monitor exceeded on [{:.6g}, {:.6g}]", a.t, b.t));
    }
    rec.samples = std::move(samples);
    return rec;
}

}  // namespace

AuxRhs aux_rhs(const AuxState& state, const ModelParams& p) {
    check_state(state, "aux_rhs");
    if (p.n != state.w.grid.n) throw ParameterError("aux_rhs: model dimension differs from grid");
    AuxState st = state;
    if (!st.phi) st.phi = RealField(st.w.grid);
    AuxEvaluator ev(st.w.grid, p, true);
    CVec y = pack_state(st, ev);
    CVec dy(y.size());
    ev.rhs(st.t, y.data(), dy.data());
    AuxState d = unpack_state(st.t, dy.data(), ev, st.w.grid);
    return AuxRhs{std::move(d.w), std::move(d.s), std::move(*d.phi)};
}

TrajectoryRecord integrate_aux(const AuxState& initial, double t_target,
                               const IntegratorConfig& config, const ModelParams& p,
                               const SampleObserver& observer) {
    check_state(initial, "integrate_aux");
    config.validate();
    p.validate_for_solver();
    if (p.n != initial.w.grid.n) throw ParameterError("integrate_aux: model dimension differs from grid");
    if (!(t_target > 0.0)) throw ParameterError("integrate_aux: t_target must be > 0");
    Integrator integ(initial, config, p, observer);
    return integ.run(initial, t_target);
}

double vorticity_max(const VectorField& s) {
    const int n = s.grid.n;
    double m = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const RealField c = partial(s.components[j], i) - partial(s.components[i], j);
            m = std::max(m, lr_norm(c, kInfinity));
        }
    return m;
}

double gradient_gap(const VectorField& s, const RealField& phi) {
    require_same_grid(s.grid, phi.grid, "gradient_gap");
    return lr_norm(s - gradient(phi), kInfinity);
}

double gradient_max(const VectorField& s) {
    double m = 0.0;
    for (int i = 0; i < s.grid.n; ++i)
        for (const auto& c : s.components) m = std::max(m, lr_norm(partial(c, i), kInfinity));
    return m;
}

TrajectoryRecord merge_records(const TrajectoryRecord& a, const TrajectoryRecord& b) {
    TrajectoryRecord out = a;
    for (const auto& smp : b.samples)
        if (!out.at(smp.t)) out.samples.push_back(smp);
    std::sort(out.samples.begin(), out.samples.end(),
              [](const TrajectorySample& x, const TrajectorySample& y) { return x.t < y.t; });
    out.failed = a.failed || b.failed;
    if (b.failed) out.failure += (out.failure.empty() ? "" : "; ") + b.failure;
    out.flags.insert(out.flags.end(), b.flags.begin(), b.flags.end());
    out.steps += b.steps;
    out.has_phase = a.has_phase && b.has_phase;
    return out;
}

}  // namespace hwave
