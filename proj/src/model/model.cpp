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

#include "hwave/model/model.hpp"

#include <algorithm>
#include <cmath>

#include "hwave/core/error.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

void ModelParams::validate_for_solver() const {
    if (n < 1) throw ParameterError("n must be >= 1");
    if (!(mu > 0.0 && mu < n)) throw ParameterError("mu must lie in (0, n)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ParameterError("gamma must lie in (0, 1)");
    if (!std::isfinite(lambda)) throw ParameterError("lambda must be finite");
}

void ModelParams::validate_for_scattering() const {
    validate_for_solver();
    if (n < 3) throw ParameterError("scattering requires n >= 3");
    if (mu > n - 2 + 1e-12) throw ParameterError("scattering requires mu <= n - 2");
    if (!(gamma > 0.5 && gamma < 1.0))
        throw ParameterError("scattering requires 1/2 < gamma < 1");
}

AdmissibilityResult check_admissible(int n, double mu, int k, int l) {
    if (!(mu > 0.0 && mu < n)) throw ParameterError("check_admissible: mu must lie in (0, n)");
    if (n < 1 || k < 0 || l < 0) throw ParameterError("check_admissible: negative index");
    constexpr double eps = 1e-12;
    const double half_n = 0.5 * n;
    const double bound = std::min(half_n + 2.0 * k, static_cast<double>(n + k));
    AdmissibilityResult r;
    auto fail = [&](const char* clause) {
        r.admissible = false;
        r.violations.emplace_back(clause);
    };
    if (!(k <= l)) fail("k <= l");
    if (!(l > half_n)) fail("l > n/2");
    if (!(l + 2.0 + mu <= bound + eps)) fail("l + 2 + mu <= min(n/2 + 2k, n + k)");
    if (std::abs(l + 2.0 + mu - (n + k)) <= eps && !(k > half_n))
        fail("k > n/2 when l + 2 + mu = n + k");
    if (n % 2 == 0 && !(half_n + 3.0 + mu < bound - eps))
        fail("n/2 + 3 + mu < min(n/2 + 2k, n + k) for even n");
    return r;
}

RealField g0(const ComplexField& w1, const ComplexField& w2, const ModelParams& p) {
    require_same_grid(w1.grid, w2.grid, "g0");
    if (p.n != w1.grid.n) throw ParameterError("g0: model dimension differs from grid dimension");
    if (p.lambda == 0.0) return RealField(w1.grid);
    RealField out = real_part(riesz_potential(dealiased_product_conj(w1, w2), p.mu));
    out *= p.lambda;
    return out;
}

ComplexField half_propagate(const ComplexField& w, double t) {
    if (!(t > 0.0)) throw ParameterError("U*(1/t) needs t > 0");
    return free_propagator(w, -1.0 / t);
}

RealField g_diag(const ComplexField& w, double t, const ModelParams& p) {
    if (!(t > 0.0)) throw ParameterError("g_diag: t must be > 0");
    const ComplexField v = half_propagate(w, t);
    return g0(v, v, p);
}

}  // namespace hwave
