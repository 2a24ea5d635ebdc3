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

#include "hwave/profiles/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/quadrature/gauss.hpp>

#include "hwave/core/error.hpp"
#include "hwave/kernels/kernels.hpp"
#include "hwave/spectral/engine.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

AsymptoticDatum AsymptoticDatum::from_w_plus(const ComplexField& w_plus) {
    return AsymptoticDatum{project_band(w_plus), RealField(w_plus.grid)};
}

VectorField AsymptoticDatum::s02_at_1() const { return gradient(phi02_at_1); }

void AsymptoticDatum::validate() const {
    require_same_grid(w_plus.grid, phi02_at_1.grid, "AsymptoticDatum");
    require_finite(w_plus, "AsymptoticDatum w_plus");
    require_finite(phi02_at_1, "AsymptoticDatum phi02(1)");
}

double free_growth_factor(double t, double gamma) {
    if (gamma == 1.0) throw ParameterError("gamma = 1 needs logarithmic formulas; not supported");
    if (!(t > 0.0)) throw ParameterError("free profiles need t > 0");
    return std::expm1((1.0 - gamma) * std::log(t)) / (1.0 - gamma);
}

RealField phi02_of_t(const AsymptoticDatum& d, double t, const ModelParams& p) {
    const double c = free_growth_factor(t, p.gamma);
    RealField out = d.phi02_at_1;
    if (c != 0.0 && p.lambda != 0.0) out += c * g0(d.w_plus, d.w_plus, p);
    return out;
}

VectorField s02_of_t(const AsymptoticDatum& d, double t, const ModelParams& p) {
    const double c = free_growth_factor(t, p.gamma);
    VectorField out = d.s02_at_1();
    if (c != 0.0 && p.lambda != 0.0) out += c * gradient(g0(d.w_plus, d.w_plus, p));
    return out;
}

namespace {

double coeff_l2(const GridSpec& g, const CVec& c) {
    return std::sqrt(kernels::active().sum_abs2(c.data(), c.size()) * g.box_volume());
}

// Coefficients of g0(U*(1/tau) w+) for fixed w+.
class FreeIntegrand {
public:
    FreeIntegrand(const ComplexField& w_plus, const ModelParams& p)
        : eng_(SpectralEngine::get(w_plus.grid)), p_(p), W_(to_coefficients(w_plus)) {
        eng_->project(W_.data());
        g_inf_ = eval_coeffs(W_);
    }

    CVec at(double tau) const {
        CVec v = W_;
        eng_->apply_propagator(-1.0 / tau, v.data());
        return eval_coeffs(v);
    }
    const CVec& at_infinity() const { return g_inf_; }
    // Phase speed of U*(1/tau): |xi|^2_max / 2.
    double oscillation() const {
        const auto& k2 = eng_->xi2();
        return 0.5 * *std::max_element(k2.begin(), k2.end());
    }
    const GridSpec& grid() const { return eng_->grid(); }

private:
    CVec eval_coeffs(const CVec& v) const {
        const auto& e = *eng_;
        CVec pad(e.padded_size()), out(e.size());
        e.to_padded(v.data(), pad.data());
        for (auto& z : pad) z = cplx(std::norm(z), 0.0);
        e.from_padded(pad.data(), out.data());
        const auto& r = e.riesz_symbol(p_.mu);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] *= p_.lambda * r[i];
        return out;
    }

    std::shared_ptr<const SpectralEngine> eng_;
    ModelParams p_;
    CVec W_, g_inf_;
};

// Panel edges a = e_0 < ... < e_m = b (or decreasing), geometric ratio
// `ratio`, each further split so the U*(1/tau) phase turns by <= 0.5 rad.
std::vector<double> panel_edges(double a, double b, double ratio, double oscillation) {
    std::vector<double> edges{a};
    const bool up = b > a;
    double x = a;
    while (up ? x < b : x > b) {
        double nx = up ? std::min(x * ratio, b) : std::max(x / ratio, b);
        if (up ? nx > b * (1 - 1e-14) : nx < b * (1 + 1e-14)) nx = b;
        const double turn = oscillation * std::abs(1.0 / x - 1.0 / nx);
        const int sub = std::max(1, static_cast<int>(std::ceil(turn / 0.5)));
        for (int k = 1; k <= sub; ++k) {
            // geometric sub-division
            edges.push_back(k == sub ? nx : x * std::pow(nx / x, static_cast<double>(k) / sub));
        }
        x = nx;
    }
    return edges;
}

using Gauss = boost::math::quadrature::gauss<double, 8>;

// sum over panels of GL-8; integrand already includes all weights.
CVec integrate_edges(const std::function<CVec(double)>& f, const std::vector<double>& edges) {
    CVec acc;
    const auto& xs = Gauss::abscissa();
    const auto& ws = Gauss::weights();
    for (std::size_t p = 1; p < edges.size(); ++p) {
        const double a = edges[p - 1], b = edges[p];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            for (int sgn : {-1, 1}) {
                if (xs[k] == 0.0 && sgn < 0) continue;
                const CVec v = f(mid + sgn * half * xs[k]);
                if (acc.empty()) acc.assign(v.size(), cplx{});
                kernels::active().axpy(acc.data(), half * ws[k], v.data(), v.size());
            }
        }
    }
    return acc;
}

// int_a^b tau^{-gamma} g(tau) d tau with panel doubling until converged.
CVec integrate_free(const FreeIntegrand& F, double a, double b, const ModelParams& p,
                    const QuadratureConfig& q) {
    auto f = [&](double tau) {
        CVec v = F.at(tau);
        const double w = std::pow(tau, -p.gamma);
        for (auto& z : v) z *= w;
        return v;
    };
    if (a == b) return CVec(SpectralEngine::get(F.grid())->size());
    double ratio = 2.0;
    CVec prev = integrate_edges(f, panel_edges(a, b, ratio, F.oscillation()));
    for (int d = 0; d < q.max_doublings; ++d) {
        ratio = std::sqrt(ratio);
        CVec cur = integrate_edges(f, panel_edges(a, b, ratio, F.oscillation()));
        CVec diff = cur;
        kernels::active().axpy(diff.data(), -1.0, prev.data(), diff.size());
        if (coeff_l2(F.grid(), diff) < q.tolerance) return cur;
        prev = std::move(cur);
    }
    throw NumericalError("free-profile quadrature did not converge after panel doublings");
}

// int_a^b tau^{-gamma} (g(tau) - g(inf)) d tau on a single panel sequence.
CVec integrate_tail_piece(const FreeIntegrand& F, double a, double b, const ModelParams& p) {
    auto f = [&](double tau) {
        CVec v = F.at(tau);
        kernels::active().axpy(v.data(), -1.0, F.at_infinity().data(), v.size());
        const double w = std::pow(tau, -p.gamma);
        for (auto& z : v) z *= w;
        return v;
    };
    return integrate_edges(f, panel_edges(a, b, 2.0, F.oscillation()));
}

// Geometric panels [t 2^j, t 2^{j+1}] until the contributions, which decay
// like a power of tau, leave an extrapolated remainder below tolerance.
TailResult tail_from(const FreeIntegrand& F, double t, const ModelParams& p, const QuadratureConfig& q) {
    if (!(p.gamma > 0.5)) throw ParameterError("phase tail needs gamma > 1/2");
    const GridSpec& g = F.grid();
    TailResult r;
    CVec total(SpectralEngine::get(g)->size());
    double a = t, prev_norm = -1.0;
    CVec last;
    for (int j = 0; j < q.max_tail_panels; ++j) {
        CVec c = integrate_tail_piece(F, a, 2.0 * a, p);
        kernels::active().axpy(total.data(), 1.0, c.data(), c.size());
        a *= 2.0;
        ++r.panels;
        const double cn = coeff_l2(g, c);
        if (cn == 0.0) {
            last.clear();
            break;
        }
        if (prev_norm > 0.0) {
            const double rho = cn / prev_norm;
            if (rho < 1.0) {
                const double rem = cn * rho / (1.0 - rho);
                if (rem < q.tolerance) {
                    for (auto& z : c) z *= rho / (1.0 - rho);
                    kernels::active().axpy(total.data(), 1.0, c.data(), c.size());
                    r.remainder = rem;
                    last.clear();
                    break;
                }
            }
        }
        prev_norm = cn;
        last = std::move(c);
        if (j + 1 == q.max_tail_panels)
            throw NumericalError("phase tail did not decay below tolerance");
    }
    r.t_cut = a;
    for (auto& z : total) z = -z;
    r.value = real_from_coefficients(g, std::move(total));
    return r;
}

}  // namespace

CVec integrate_panels(const std::function<CVec(double)>& f, double a, double b, const PanelRule& rule) {
    return integrate_edges(f, panel_edges(a, b, rule.ratio, 0.0));
}

RealField phi0_of_t(const AsymptoticDatum& d, const RealField& phi0_at_1, double t,
                    const ModelParams& p, const QuadratureConfig& q) {
    if (!(t >= 1.0)) throw ParameterError("phi0_of_t: t must be >= 1");
    require_same_grid(d.w_plus.grid, phi0_at_1.grid, "phi0_of_t");
    RealField out = phi0_at_1;
    if (p.lambda == 0.0 || t == 1.0) return out;
    FreeIntegrand F(d.w_plus, p);
    out += real_from_coefficients(d.w_plus.grid, integrate_free(F, 1.0, t, p, q));
    return out;
}

VectorField s0_of_t(const AsymptoticDatum& d, const VectorField& s0_at_1, double t,
                    const ModelParams& p, const QuadratureConfig& q) {
    if (!(t >= 1.0)) throw ParameterError("s0_of_t: t must be >= 1");
    require_same_grid(d.w_plus.grid, s0_at_1.grid, "s0_of_t");
    VectorField out = s0_at_1;
    if (p.lambda == 0.0 || t == 1.0) return out;
    FreeIntegrand F(d.w_plus, p);
    out += gradient(real_from_coefficients(d.w_plus.grid, integrate_free(F, 1.0, t, p, q)));
    return out;
}

TailResult phase_tail(const AsymptoticDatum& d, double t, const ModelParams& p, const QuadratureConfig& q) {
    if (!(p.gamma > 0.5)) throw ParameterError("phase tail needs gamma > 1/2");
    if (!(t > 0.0)) throw ParameterError("phase tail needs t > 0");
    if (p.lambda == 0.0 || std::isinf(t)) {
        TailResult r;
        r.value = RealField(d.w_plus.grid);
        r.t_cut = t;
        return r;
    }
    FreeIntegrand F(d.w_plus, p);
    return tail_from(F, t, p, q);
}

std::vector<RealField> phase_tail_series(const AsymptoticDatum& d, const std::vector<double>& times,
                                         const ModelParams& p, const QuadratureConfig& q) {
    if (!(p.gamma > 0.5)) throw ParameterError("phase tail needs gamma > 1/2");
    std::vector<RealField> out(times.size(), RealField(d.w_plus.grid));
    if (times.empty() || p.lambda == 0.0) return out;
    std::vector<std::size_t> order(times.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return times[a] > times[b]; });
    FreeIntegrand F(d.w_plus, p);
    CVec D = to_coefficients(tail_from(F, times[order[0]], p, q).value);
    out[order[0]] = real_from_coefficients(d.w_plus.grid, D);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const double hi = times[order[k - 1]], lo = times[order[k]];
        if (lo < hi) {
            const CVec piece = integrate_tail_piece(F, lo, hi, p);
            kernels::active().axpy(D.data(), -1.0, piece.data(), D.size());
        }
        out[order[k]] = real_from_coefficients(d.w_plus.grid, D);
    }
    return out;
}

VectorField s0_minus_s02_tail(const AsymptoticDatum& d, double t, const ModelParams& p,
                              const QuadratureConfig& q) {
    return gradient(phase_tail(d, t, p, q).value);
}

RealField phi0_from_phi02(const AsymptoticDatum& d, double t, const ModelParams& p,
                          const QuadratureConfig& q) {
    return phi02_of_t(d, t, p) + phase_tail(d, t, p, q).value;
}

}  // namespace hwave
