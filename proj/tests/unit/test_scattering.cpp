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
#include <cmath>

#include "helpers.hpp"
#include "hwave/core/error.hpp"
#include "hwave/model/model.hpp"
#include "hwave/scattering/datum.hpp"
#include "hwave/scattering/scattering.hpp"

using namespace hwave;
using hwave::test::max_abs_diff;

namespace {

AsymptoticDatum datum() { return AsymptoticDatum::from_w_plus(test::gaussian(test::small_grid(), 1.2, 0.5)); }

WaveOpConfig small_config(std::vector<double> schedule) {
    WaveOpConfig c;
    c.t0_schedule = std::move(schedule);
    c.calibrate = false;
    c.workers = 1;
    return c;
}

}  // namespace

TEST_CASE("seed is the free evolution of the datum") {
    const ModelParams p;
    const AsymptoticDatum d = datum();
    const AuxState s = seed_at_t0(d, 400.0, p);
    CHECK(s.t == 400.0);
    CHECK(max_abs_diff(s.w, free_propagator(d.w_plus, 1.0 / 400.0)) < 1e-15);
    CHECK(lr_norm(s.s - s02_of_t(d, 400.0, p), kInfinity) == 0.0);
    REQUIRE(s.phi.has_value());
    CHECK(vorticity_max(s.s) < 1e-12);
}

TEST_CASE("calibration time") {
    const AsymptoticDatum d = datum();
    ModelParams p;
    double prev = kInfinity;
    for (double gamma : {0.55, 0.6, 0.75}) {
        p.gamma = gamma;
        const double T = heuristic_T(d, p, {});
        CHECK(T < prev);
        prev = T;
    }
    p.gamma = 0.75;
    CHECK(heuristic_T(d, p, {}, 2.0) == doctest::Approx(2.0 * heuristic_T(d, p, {})));
    p.lambda = 0.0;
    CHECK(heuristic_T(d, p, {}) == 1.0);
}

TEST_CASE("geometric sample grid") {
    const auto s = geometric_samples(10.0, 100.0, std::pow(2.0, 0.25));
    REQUIRE(s.size() >= 2);
    CHECK(s.front() == doctest::Approx(10.0));
    CHECK(s.back() == 100.0);
    CHECK(std::find(s.begin(), s.end(), 50.0) != s.end());
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
}

TEST_CASE("wave operator refuses inadmissible input") {
    const AsymptoticDatum d = datum();
    WaveOpConfig c = small_config({100.0, 200.0});
    c.integrator.pair = {2, 1};
    try {
        wave_operator_W(d, ModelParams{}, c);
        FAIL("expected ParameterError");
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("l > n/2") != std::string::npos);
    }
    ModelParams p;
    p.gamma = 0.45;
    CHECK_THROWS_AS(wave_operator_W(d, p, small_config({100.0})), ParameterError);
}

TEST_CASE("Cauchy differences at lambda = 0 match the free closed form") {
    ModelParams p;
    p.lambda = 0.0;
    const AsymptoticDatum d = datum();
    const WaveOpRun run = wave_operator_W(d, p, small_config({100.0, 200.0}));
    REQUIRE(run.differences.size() == 1);
    REQUIRE_FALSE(run.divergence_flag);
    const ComplexField dw = free_propagator(d.w_plus, 1.0 / 100.0) - free_propagator(d.w_plus, 1.0 / 200.0);
    const double expected = sobolev_norm(dw, 1);
    CHECK(run.differences[0].value == doctest::Approx(expected).epsilon(1e-10));
    for (const auto& tr : run.trajectories)
        for (const auto& s : tr.samples) CHECK(s.err_s02_l.value_or(0.0) < 1e-14);
}

TEST_CASE("extraction recovers the datum at lambda = 0") {
    ModelParams p;
    p.lambda = 0.0;
    const AsymptoticDatum d = datum();
    WaveOpConfig c = small_config({1e6});
    c.keep_limit_snapshots = true;
    const WaveOpRun run = wave_operator_W(d, p, c);
    const ExtractedDatum e = extract_datum(run.limit(), p, {});
    const double rel = sobolev_norm(e.w_plus - run.datum.w_plus, 1) / sobolev_norm(run.datum.w_plus, 1);
    CHECK(rel < 1e-5);
    CHECK(lr_norm(e.s02_at_1, kInfinity) < 1e-12);
}

TEST_CASE("Gaussian datum checks") {
    const GridSpec g{3, 32, 16.0};
    GaussianDatumSpec s;
    const DatumChecks ok = check_gaussian_datum(s, g);
    CHECK(ok.width_ok);
    CHECK(ok.mass_ok);
    CHECK(ok.full_width == doctest::Approx(2.0 * std::sqrt(2.0) * 1.5));
    CHECK(ok.min_width == doctest::Approx(4.0));

    s.width = 0.5;
    CHECK_FALSE(check_gaussian_datum(s, g).width_ok);
    s.width = 6.0;
    const DatumChecks wide = check_gaussian_datum(s, g);
    CHECK_FALSE(wide.mass_ok);
    CHECK(wide.messages.size() == 1);
}

TEST_CASE("Gaussian datum is normalized in H^{k+1}") {
    const GridSpec g{3, 32, 16.0};
    GaussianDatumSpec s;
    s.phase_amplitude = 1e-3;
    const AsymptoticDatum d = make_gaussian_datum(s, g, {});
    CHECK(sobolev_norm(d.w_plus, 3) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(lr_norm(d.phi02_at_1, kInfinity) == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("gauge transform multiplies by e^{i sigma} and shifts the phase") {
    const AsymptoticDatum d = datum();
    const RealField sigma = test::real_gaussian(d.w_plus.grid, 0.2, 1.5);
    const AsymptoticDatum t = gauge_transform(d, GaugeFunction{sigma});
    CHECK(max_abs_diff(t.w_plus, multiply_phase(d.w_plus, sigma)) < 1e-15);
    CHECK(max_abs_diff(t.phi02_at_1, d.phi02_at_1 + sigma) < 1e-15);
}
