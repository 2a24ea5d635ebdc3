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

#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "hwave/core/error.hpp"
#include "hwave/model/model.hpp"

using namespace hwave;

namespace {

bool cites(const AdmissibilityResult& r, const std::string& clause) {
    return std::find(r.violations.begin(), r.violations.end(), clause) != r.violations.end();
}

}  // namespace

TEST_CASE("admissible pairs in three dimensions") {
    CHECK(check_admissible(3, 1.0, 2, 2).admissible);
    CHECK(check_admissible(3, 1.0, 3, 3).admissible);
    CHECK(check_admissible(3, 1.0, 2, 3).admissible == false);  // l + 2 + mu = 6 > n + k = 5
}

TEST_CASE("each failing clause is reported") {
    const auto r = check_admissible(3, 1.0, 2, 1);
    CHECK_FALSE(r.admissible);
    CHECK(cites(r, "k <= l"));
    CHECK(cites(r, "l > n/2"));

    const auto q = check_admissible(3, 1.0, 1, 2);
    CHECK(cites(q, "l + 2 + mu <= min(n/2 + 2k, n + k)"));

    // Equality l + 2 + mu = n + k with k <= n/2: n = 5, mu = 1, k = 2, l = 4.
    const auto e = check_admissible(5, 1.0, 2, 4);
    CHECK(cites(e, "k > n/2 when l + 2 + mu = n + k"));

    const auto even = check_admissible(4, 1.0, 2, 3);
    CHECK(cites(even, "n/2 + 3 + mu < min(n/2 + 2k, n + k) for even n"));
}

TEST_CASE("admissibility rejects out-of-range inputs") {
    CHECK_THROWS_AS(check_admissible(3, 3.0, 2, 2), ParameterError);
    CHECK_THROWS_AS(check_admissible(3, 1.0, -1, 2), ParameterError);
}

TEST_CASE("parameter ranges") {
    ModelParams p;
    CHECK_NOTHROW(p.validate_for_scattering());
    p.gamma = 0.5;
    CHECK_THROWS_AS(p.validate_for_scattering(), ParameterError);
    CHECK_NOTHROW(p.validate_for_solver());
    p.gamma = 0.75;
    p.mu = 1.5;  // above n - 2
    CHECK_THROWS_AS(p.validate_for_scattering(), ParameterError);
    p.n = 2;
    p.mu = 0.5;
    CHECK_THROWS_AS(p.validate_for_scattering(), ParameterError);
}

TEST_CASE("g0 is real-linear in lambda and vanishes at lambda = 0") {
    const GridSpec g = test::small_grid();
    const ComplexField w = test::gaussian(g, 1.2, 0.5);
    ModelParams p;
    p.lambda = 0.0;
    CHECK(lr_norm(g0(w, w, p), kInfinity) == 0.0);
    p.lambda = 1.0;
    const RealField a = g0(w, w, p);
    p.lambda = -2.5;
    CHECK(test::max_abs_diff(g0(w, w, p), -2.5 * a) < 1e-14);
    // Peak of the potential sits on the peak of the density, with the sign of lambda.
    const RealField rho = abs_squared(w);
    const auto peak = std::max_element(rho.values.begin(), rho.values.end()) - rho.values.begin();
    CHECK(a.values[peak] > 0.0);
}

TEST_CASE("g_diag is g0 of the half-propagated amplitude") {
    const GridSpec g = test::small_grid();
    const ComplexField w = test::gaussian(g, 1.0, 0.5, cplx(1.0, 0.5));
    const ModelParams p;
    const ComplexField v = half_propagate(w, 3.0);
    CHECK(test::max_abs_diff(v, free_propagator(w, -1.0 / 3.0)) < 1e-14);
    CHECK(test::max_abs_diff(g_diag(w, 3.0, p), g0(v, v, p)) < 1e-14);
}
