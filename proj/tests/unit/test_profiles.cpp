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

#include <cmath>

#include "helpers.hpp"
#include "hwave/model/model.hpp"
#include "hwave/profiles/profiles.hpp"

using namespace hwave;
using hwave::test::max_abs_diff;

namespace {

AsymptoticDatum datum() { return AsymptoticDatum::from_w_plus(test::gaussian(test::small_grid(), 1.2, 0.5)); }

}  // namespace

TEST_CASE("free growth factor") {
    CHECK(free_growth_factor(1.0, 0.75) == 0.0);
    CHECK(free_growth_factor(4.0, 0.5) == doctest::Approx(2.0));
    // Near t = 1 it behaves like log t.
    CHECK(free_growth_factor(1.0 + 1e-9, 0.75) == doctest::Approx(1e-9).epsilon(1e-6));
    CHECK(free_growth_factor(0.5, 0.75) < 0.0);
}

TEST_CASE("profiles are frozen at lambda = 0") {
    ModelParams p;
    p.lambda = 0.0;
    const AsymptoticDatum d = datum();
    CHECK(lr_norm(s02_of_t(d, 1e3, p) - d.s02_at_1(), kInfinity) == 0.0);
    CHECK(lr_norm(phi02_of_t(d, 1e3, p), kInfinity) == 0.0);
    CHECK(lr_norm(phase_tail(d, 50.0, p).value, kInfinity) == 0.0);
}

TEST_CASE("s02 grows along grad g0(w_plus)") {
    const ModelParams p;
    const AsymptoticDatum d = datum();
    const VectorField grad_g = gradient(g0(d.w_plus, d.w_plus, p));
    const double t = 250.0;
    CHECK(lr_norm(s02_of_t(d, t, p) - free_growth_factor(t, p.gamma) * grad_g - d.s02_at_1(), kInfinity) < 1e-13);
    CHECK(lr_norm(gradient(phi02_of_t(d, t, p)) - s02_of_t(d, t, p), kInfinity) < 1e-12);
}

TEST_CASE("s0 is the gradient of phi0") {
    const ModelParams p;
    const AsymptoticDatum d = datum();
    const RealField phi1 = d.phi02_at_1;
    const VectorField s1 = d.s02_at_1();
    for (double t : {2.0, 30.0}) {
        const VectorField s0 = s0_of_t(d, s1, t, p);
        const RealField phi0 = phi0_of_t(d, phi1, t, p);
        CHECK(lr_norm(gradient(phi0) - s0, kInfinity) < 1e-10);
    }
}

TEST_CASE("phase tail links the two profiles and decays") {
    const ModelParams p;
    const AsymptoticDatum d = datum();
    const TailResult a = phase_tail(d, 10.0, p);
    const TailResult b = phase_tail(d, 100.0, p);
    CHECK(lr_norm(b.value, 2.0) < lr_norm(a.value, 2.0));
    CHECK(lr_norm(s0_minus_s02_tail(d, 10.0, p) - gradient(a.value), kInfinity) < 1e-10);
    const auto series = phase_tail_series(d, {100.0, 10.0}, p);
    REQUIRE(series.size() == 2);
    CHECK(max_abs_diff(series[1], a.value) <= 1e-6 * lr_norm(a.value, kInfinity));
}

TEST_CASE("panel quadrature of a power") {
    const auto f = [](double tau) { return CVec{cplx(std::pow(tau, -1.5), 0.0)}; };
    const CVec r = integrate_panels(f, 1.0, 1e4, PanelRule{});
    CHECK(r[0].real() == doctest::Approx(2.0 * (1.0 - 1e-2)).epsilon(1e-10));
    const CVec back = integrate_panels(f, 1e4, 1.0, PanelRule{});
    CHECK(back[0].real() == doctest::Approx(-r[0].real()));
}
