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

#include "hwave/spectral/norms.hpp"

#include <algorithm>
#include <cmath>

#include "hwave/core/error.hpp"
#include "hwave/kernels/kernels.hpp"
#include "hwave/spectral/engine.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

namespace {

// Calls fn(alpha) for every multi-index with |alpha| = j.
template <class Fn>
void for_each_multi_index(int n, int j, Fn&& fn) {
    std::vector<int> alpha(n, 0);
    auto rec = [&](auto&& self, int axis, int left) -> void {
        if (axis == n - 1) {
            alpha[axis] = left;
            fn(alpha);
            return;
        }
        for (int a = left; a >= 0; --a) {
            alpha[axis] = a;
            self(self, axis + 1, left - a);
        }
    };
    rec(rec, 0, j);
}

// Physical-normalized ||d^alpha f||_2^2 summed over the given components.
double derivative_energy(const SpectralEngine& e, const std::vector<const CVec*>& comps,
                         const std::vector<int>& alpha, RVec& weight) {
    const std::size_t N = e.size();
    bool trivial = true;
    for (int a : alpha) trivial = trivial && a == 0;
    if (trivial) {
        std::fill(weight.begin(), weight.end(), 1.0);
    } else {
        const auto& band = e.band();
        for (std::size_t i = 0; i < N; ++i) {
            double w = band[i];
            for (std::size_t a = 0; a < alpha.size(); ++a)
                for (int p = 0; p < alpha[a]; ++p) w *= e.xi(static_cast<int>(a))[i];
            weight[i] = w * w;
        }
    }
    double sum = 0.0;
    for (const CVec* c : comps) sum += kernels::active().weighted_sum_abs2(c->data(), weight.data(), N);
    return sum * e.grid().box_volume();
}

double sobolev_impl(const GridSpec& g, const std::vector<const CVec*>& comps, int k) {
    if (k < 0) throw ParameterError("sobolev_norm: k must be >= 0");
    const auto& e = *SpectralEngine::get(g);
    RVec weight(e.size());
    double total = 0.0;
    for (int j = 0; j <= k; ++j)
        for_each_multi_index(g.n, j, [&](const std::vector<int>& alpha) {
            total += std::sqrt(derivative_energy(e, comps, alpha, weight));
        });
    return total;
}

double homogeneous_impl(const GridSpec& g, const std::vector<const CVec*>& comps, double s) {
    const auto& e = *SpectralEngine::get(g);
    RVec weight(e.size());
    const auto& k2 = e.xi2();
    for (std::size_t i = 0; i < e.size(); ++i)
        weight[i] = s == 0.0 ? 1.0 : (k2[i] == 0.0 ? 0.0 : std::pow(k2[i], s));
    double sum = 0.0;
    for (const CVec* c : comps) sum += kernels::active().weighted_sum_abs2(c->data(), weight.data(), e.size());
    return std::sqrt(sum * g.box_volume());
}

std::vector<CVec> component_coeffs(const VectorField& s) {
    std::vector<CVec> out;
    for (const auto& c : s.components) out.push_back(to_coefficients(c));
    return out;
}

std::vector<const CVec*> pointers(const std::vector<CVec>& v) {
    std::vector<const CVec*> p;
    for (const auto& c : v) p.push_back(&c);
    return p;
}

template <class It, class Abs>
double lr_impl(const GridSpec& g, It begin, It end, double r, Abs&& abs) {
    if (!(r >= 1.0)) throw ParameterError("lr_norm: r must be >= 1");
    if (std::isinf(r)) {
        double m = 0.0;
        for (auto it = begin; it != end; ++it) m = std::max(m, abs(*it));
        return m;
    }
    double sum = 0.0;
    for (auto it = begin; it != end; ++it) sum += std::pow(abs(*it), r);
    return std::pow(sum * g.cell_volume(), 1.0 / r);
}

}  // namespace

double sobolev_norm_coeffs(const GridSpec& g, const CVec& coeffs, int k) {
    return sobolev_impl(g, {&coeffs}, k);
}

double sobolev_norm_coeffs(const GridSpec& g, const std::vector<CVec>& comps, int k) {
    return sobolev_impl(g, pointers(comps), k);
}

double homogeneous_norm_coeffs(const GridSpec& g, const std::vector<CVec>& comps, double s) {
    return homogeneous_impl(g, pointers(comps), s);
}

double sobolev_norm(const ComplexField& f, int k) {
    const CVec c = to_coefficients(f);
    return sobolev_impl(f.grid, {&c}, k);
}

double sobolev_norm(const RealField& f, int k) {
    const CVec c = to_coefficients(f);
    return sobolev_impl(f.grid, {&c}, k);
}

double sobolev_norm(const VectorField& s, int k) {
    const auto c = component_coeffs(s);
    return sobolev_impl(s.grid, pointers(c), k);
}

double homogeneous_norm(const ComplexField& f, double s) {
    const CVec c = to_coefficients(f);
    return homogeneous_impl(f.grid, {&c}, s);
}

double homogeneous_norm(const RealField& f, double s) {
    const CVec c = to_coefficients(f);
    return homogeneous_impl(f.grid, {&c}, s);
}

double homogeneous_norm(const VectorField& f, double s) {
    const auto c = component_coeffs(f);
    return homogeneous_impl(f.grid, pointers(c), s);
}

double lr_norm(const ComplexField& f, double r) {
    return lr_impl(f.grid, f.values.begin(), f.values.end(), r,
                   [](const cplx& z) { return std::abs(z); });
}

double lr_norm(const RealField& f, double r) {
    return lr_impl(f.grid, f.values.begin(), f.values.end(), r,
                   [](double x) { return std::abs(x); });
}

double lr_norm(const VectorField& s, double r) { return lr_norm(pointwise_norm(s), r); }

int x_norm_low_order(int n) { return n / 2; }

double x_norm_exponent(int n) { return n % 2 == 1 ? 2.0 * n : kInfinity; }

XNormParts x_norm_parts(const VectorField& s, int ell) {
    if (ell < 0) throw ParameterError("x_norm: ell must be >= 0");
    const auto c = component_coeffs(s);
    const auto p = pointers(c);
    XNormParts out;
    out.lr = lr_norm(s, x_norm_exponent(s.grid.n));
    out.hdot_low = homogeneous_impl(s.grid, p, x_norm_low_order(s.grid.n));
    out.hdot_high = homogeneous_impl(s.grid, p, ell + 1);
    return out;
}

double x_norm(const VectorField& s, int ell) { return x_norm_parts(s, ell).total(); }

double galilei_norm(const ComplexField& v, int k) {
    if (k < 0) throw ParameterError("galilei_norm: k must be >= 0");
    const auto& e = *SpectralEngine::get(v.grid);
    const CVec c = to_coefficients(v);
    RVec weight(e.size());
    const auto& k2 = e.xi2();
    for (std::size_t i = 0; i < e.size(); ++i) weight[i] = std::pow(1.0 + k2[i], k);
    return std::sqrt(kernels::active().weighted_sum_abs2(c.data(), weight.data(), e.size()) *
                     v.grid.box_volume());
}

double delta_r(int n, double r) { return 0.5 * n - (std::isinf(r) ? 0.0 : n / r); }

NormReport norm_report(const ComplexField& f, int k_max, const std::vector<double>& rs) {
    NormReport rep;
    const CVec c = to_coefficients(f);
    for (int j = 0; j <= k_max; ++j) {
        rep.h_norms.push_back(sobolev_impl(f.grid, {&c}, j));
        rep.hdot_norms.push_back(homogeneous_impl(f.grid, {&c}, j));
    }
    for (double r : rs) rep.lr_norms[r] = lr_norm(f, r);
    return rep;
}

NormReport norm_report(const VectorField& s, int k_max, int ell, const std::vector<double>& rs) {
    NormReport rep;
    const auto c = component_coeffs(s);
    const auto p = pointers(c);
    for (int j = 0; j <= k_max; ++j) {
        rep.h_norms.push_back(sobolev_impl(s.grid, p, j));
        rep.hdot_norms.push_back(homogeneous_impl(s.grid, p, j));
    }
    for (double r : rs) rep.lr_norms[r] = lr_norm(s, r);
    rep.x = x_norm_parts(s, ell);
    return rep;
}

}  // namespace hwave
