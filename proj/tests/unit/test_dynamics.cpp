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
#include <filesystem>

#include "helpers.hpp"
#include "hwave/core/error.hpp"
#include "hwave/dynamics/aux_system.hpp"
#include "hwave/dynamics/rescaled.hpp"
#include "hwave/dynamics/trajectory_io.hpp"
#include "hwave/model/model.hpp"

using namespace hwave;
using hwave::test::max_abs_diff;

namespace {

AuxState start(double t, double norm_h3, bool phase = true) {
    const GridSpec g = test::small_grid();
    AuxState st;
    st.t = t;
    st.w = test::gaussian(g, 1.2, norm_h3, cplx(1.0, 0.3), {0.4, 0.0, -0.2});
    st.s = VectorField(g);
    if (phase) st.phi = RealField(g);
    return st;
}

AuxState final_state(const TrajectoryRecord& r) {
    REQUIRE_FALSE(r.failed);
    REQUIRE(!r.samples.empty());
    REQUIRE(r.samples.back().snapshot.has_value());
    return *r.samples.back().snapshot;
}

AuxState evolve(const AuxState& st, double t1, double dt_rel, const ModelParams& p) {
    IntegratorConfig c;
    c.dt_rel = dt_rel;
    c.sample_times = {t1};
    c.keep_snapshots = true;
    return final_state(integrate_aux(st, t1, c, p));
}

}  // namespace

TEST_CASE("right-hand side vanishes at lambda = 0 and s = 0") {
    ModelParams p;
    p.lambda = 0.0;
    const AuxRhs r = aux_rhs(start(10.0, 0.5), p);
    CHECK(lr_norm(r.dw, kInfinity) == 0.0);
    CHECK(lr_norm(r.ds, kInfinity) == 0.0);
    CHECK(lr_norm(r.dphi, kInfinity) == 0.0);
}

TEST_CASE("lambda = 0 with s = 0 is stationary") {
    ModelParams p;
    p.lambda = 0.0;
    const AuxState st = start(10.0, 0.5);
    const AuxState e = evolve(st, 1000.0, 0.05, p);
    CHECK(max_abs_diff(e.w, st.w) < 1e-13);
    CHECK(lr_norm(e.s, kInfinity) < 1e-13);
}

TEST_CASE("mass, curl-freeness and s = grad phi along a coupled run") {
    for (double lambda : {1.0, -1.0}) {
        CAPTURE(lambda);
        ModelParams p;
        p.lambda = lambda;
        IntegratorConfig c;
        c.sample_times = {10.0, 31.6, 100.0, 316.0, 1000.0};
        const TrajectoryRecord r = integrate_aux(start(10.0, 0.5), 1000.0, c, p);
        REQUIRE_FALSE(r.failed);
        REQUIRE(r.samples.size() == 5);
        for (const auto& s : r.samples) {
            CHECK(std::abs(s.mass - r.initial_mass) <= 1e-12 * r.initial_mass);
            CHECK(s.vort_max <= 1e-6 * (1.0 + s.ds_max));
            CHECK(s.grad_gap <= 1e-6);
        }
        CHECK(r.samples.back().norm_s_l > 0.0);
    }
}

TEST_CASE("backward leg retraces the forward leg") {
    const ModelParams p;
    const AuxState st = start(100.0, 0.5);
    const AuxState down = evolve(st, 10.0, 0.02, p);
    const AuxState back = evolve(down, 100.0, 0.02, p);
    CHECK(max_abs_diff(back.w, st.w) < 1e-8);
    CHECK(lr_norm(back.s - st.s, kInfinity) < 1e-8);
}

TEST_CASE("RK4 converges at fourth order") {
    const ModelParams p;
    const AuxState st = start(2.0, 2.0);
    const AuxState a = evolve(st, 8.0, 0.2, p);
    const AuxState b = evolve(st, 8.0, 0.1, p);
    const AuxState c = evolve(st, 8.0, 0.05, p);
    const double e1 = lr_norm(a.w - b.w, 2.0) + lr_norm(a.s - b.s, 2.0);
    const double e2 = lr_norm(b.w - c.w, 2.0) + lr_norm(b.s - c.s, 2.0);
    CAPTURE(e1);
    CAPTURE(e2);
    REQUIRE(e2 > 1e-13);
    CHECK(e1 / e2 > 10.0);
}

TEST_CASE("regularization dissipates mass in the integration direction") {
    ModelParams p;
    p.lambda = 0.0;
    IntegratorConfig c;
    c.eta = 1e-2;
    c.sample_times = {2.0, 20.0};
    const AuxState st = start(2.0, 0.5);
    const TrajectoryRecord r = integrate_aux(st, 20.0, c, p);
    REQUIRE_FALSE(r.failed);
    CHECK(r.samples.back().mass < r.initial_mass);
    const TrajectoryRecord down = integrate_aux(AuxState{20.0, st.w, st.s, st.phi}, 2.0, c, p);
    CHECK(down.samples.front().mass < down.initial_mass);
}

TEST_CASE("integrator rejects bad configurations") {
    IntegratorConfig c;
    c.dt_rel = -1.0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = {};
    c.sample_times = {10.0, 5.0};
    CHECK_THROWS_AS(c.validate(), ParameterError);
}

TEST_CASE("diagnostics of an explicit gradient field") {
    const GridSpec g = test::small_grid();
    const RealField phi = test::real_gaussian(g, 0.3, 1.5);
    const VectorField s = gradient(phi);
    CHECK(vorticity_max(s) < 1e-14);
    CHECK(gradient_gap(s, phi) < 1e-14);
    VectorField rot(g);
    for (std::size_t i = 0; i < rot.components[0].values.size(); ++i) {
        rot.components[0].values[i] = -std::sin(g.dk() * node_coordinate(g, i, 1));
        rot.components[1].values[i] = std::sin(g.dk() * node_coordinate(g, i, 0));
    }
    CHECK(vorticity_max(rot) == doctest::Approx(2.0 * g.dk()).epsilon(1e-10));
}

TEST_CASE("split step conserves mass to round-off") {
    const ComplexField v = start(1.0, 1.0).w;
    for (double lambda : {1.0, -1.0}) {
        ModelParams p;
        p.lambda = lambda;
        ComplexField u = v;
        double t = 1.0;
        const double m0 = lr_norm(v, 2.0);
        for (int i = 0; i < 50; ++i) {
            const double dt = 0.05 * t;
            const ComplexField next = rescaled_nls_step(u, t, dt, p);
            CHECK(std::abs(lr_norm(next, 2.0) - lr_norm(u, 2.0)) <= 1e-13 * m0);
            u = next;
            t += dt;
        }
    }
}

TEST_CASE("split step at lambda = 0 composes exactly") {
    ModelParams p;
    p.lambda = 0.0;
    const ComplexField v = start(1.0, 1.0).w;
    const ComplexField one = rescaled_nls_step(v, 2.0, 1.0, p);
    const ComplexField two = rescaled_nls_step(rescaled_nls_step(v, 2.0, 0.5, p), 2.5, 0.5, p);
    CHECK(max_abs_diff(one, two) < 1e-13);
    // i v_t = -(2t^2)^{-1} Delta v is solved by U(1/2 - 1/3) on [2, 3].
    CHECK(max_abs_diff(one, free_propagator(v, 0.5 - 1.0 / 3.0)) < 1e-13);
}

TEST_CASE("split step converges at second order") {
    const ModelParams p;
    const ComplexField v = start(1.0, 2.0).w;
    const ComplexField a = rescaled_nls_evolve(v, 1.0, 4.0, p, 0.1);
    const ComplexField b = rescaled_nls_evolve(v, 1.0, 4.0, p, 0.05);
    const ComplexField c = rescaled_nls_evolve(v, 1.0, 4.0, p, 0.025);
    const double e1 = lr_norm(a - b, 2.0), e2 = lr_norm(b - c, 2.0);
    CAPTURE(e1);
    CAPTURE(e2);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("direct solver agrees with the v-representation") {
    const ModelParams p;
    IntegratorConfig c;
    c.dt_rel = 0.01;
    c.sample_times = {10.0, 20.0, 40.0};
    c.keep_snapshots = true;
    const TrajectoryRecord r = integrate_aux(start(10.0, 0.5), 40.0, c, p);
    REQUIRE_FALSE(r.failed);
    const auto d = cross_check_gauge(r, p, 0.005);
    REQUIRE(d.size() == 3);
    CHECK(d[0].discrepancy == 0.0);
    for (const auto& x : d) CHECK(x.discrepancy <= 1e-6 * x.w_norm);
}

TEST_CASE("trajectory CSV round trip") {
    namespace fs = std::filesystem;
    TrajectoryRecord r;
    r.t_start = 100.0;
    r.initial_mass = 0.123456789012345678;
    r.has_phase = true;
    for (int i = 0; i < 3; ++i) {
        TrajectorySample s;
        s.t = 10.0 * (i + 1);
        s.mass = 1.0 / 3.0 + i;
        s.norm_w_k = std::sqrt(2.0) * i;
        s.grad_gap = i == 1 ? std::nan("") : 1e-17 * i;
        if (i != 0) s.err_w_plus_k = std::exp(-i);
        if (i == 2) s.err_prof_lr = 1e-300;
        r.samples.push_back(s);
    }
    const fs::path path = fs::temp_directory_path() / "hwave_test_traj.csv";
    write_trajectory_csv(path, r);
    const TrajectoryRecord q = read_trajectory_csv(path);
    REQUIRE(q.samples.size() == 3);
    CHECK(trajectory_csv(q) == trajectory_csv(r));
    CHECK(q.samples[1].err_w_plus_k.value() == r.samples[1].err_w_plus_k.value());
    CHECK_FALSE(q.samples[0].err_w_plus_k.has_value());
    CHECK(std::isnan(q.samples[1].grad_gap));
    fs::remove(path);

    const auto& cols = trajectory_csv_columns();
    CHECK(cols.front() == "t");
    CHECK(std::find(cols.begin(), cols.end(), "err_prof_7_46") != cols.end());
    CHECK(std::find(cols.begin(), cols.end(), "err_prof_7_47") != cols.end());
}

TEST_CASE("merging legs drops duplicate times") {
    TrajectoryRecord a, b;
    auto at = [](double t) {
        TrajectorySample s;
        s.t = t;
        return s;
    };
    for (double t : {10.0, 20.0, 40.0}) a.samples.push_back(at(t));
    for (double t : {40.0, 80.0}) b.samples.push_back(at(t));
    const TrajectoryRecord m = merge_records(a, b);
    REQUIRE(m.samples.size() == 4);
    CHECK(m.samples.back().t == 80.0);
    CHECK(m.at(20.0) != nullptr);
    CHECK(m.at(30.0) == nullptr);
}
