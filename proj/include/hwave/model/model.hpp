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

#include <string>
#include <vector>

#include "hwave/spectral/field.hpp"

namespace hwave {

// Coupling lambda, long-range exponent gamma and Riesz order mu of the
// nonlinearity lambda t^{mu-gamma} (|x|^{-mu} * |u|^2) u in dimension n.
struct ModelParams {
    int n = 3;
    double lambda = 1.0;
    double gamma = 0.75;
    double mu = 1.0;

    // Plain solver: 0 < mu < n, 0 < gamma < 1.
    void validate_for_solver() const;
    // Wave-operator entry points: n >= 3, 0 < mu <= n - 2, 1/2 < gamma < 1.
    void validate_for_scattering() const;

    bool operator==(const ModelParams&) const = default;
};

// Regularity indices for w (k) and s (l).
struct AdmissiblePair {
    int k = 2;
    int l = 2;
    bool operator==(const AdmissiblePair&) const = default;
};

struct AdmissibilityResult {
    bool admissible = true;
    std::vector<std::string> violations;  // one entry per failed clause
};

// Clauses checked, each reported by its inequality:
//   "k <= l", "l > n/2", "l + 2 + mu <= min(n/2 + 2k, n + k)",
//   "k > n/2 when l + 2 + mu = n + k",
//   "n/2 + 3 + mu < min(n/2 + 2k, n + k) for even n".
AdmissibilityResult check_admissible(int n, double mu, int k, int l);

// lambda Re omega^{mu-n}(w1 conj(w2)); the product is formed alias-free.
RealField g0(const ComplexField& w1, const ComplexField& w2, const ModelParams& p);

// g(w, w) at time t, i.e. g0 of U*(1/t) w.
RealField g_diag(const ComplexField& w, double t, const ModelParams& p);

// U*(1/t) w, the multiplier exp(+i|xi|^2 / 2t).
ComplexField half_propagate(const ComplexField& w, double t);

}  // namespace hwave
