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
#include <filesystem>
#include <fstream>
#include <numbers>

#include "helpers.hpp"
#include "hwave/core/error.hpp"
#include "hwave/rates/acceptance.hpp"
#include "hwave/spectral/field_io.hpp"

using namespace hwave;
using hwave::test::max_abs_diff;

TEST_CASE("coefficient round trip is the identity") {
    const GridSpec g = test::small_grid();
    const ComplexField f = test::gaussian(g, 1.3, 0.0, cplx(0.3, -0.4), {0.5, -1.0, 0.25});
    CHECK(max_abs_diff(from_coefficients(g, to_coefficients(f)), f) < 1e-14);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec({3, 12, 8.0}).validate(), ParameterError);  // not a power of two
    CHECK_THROWS_AS(GridSpec({3, 4, 8.0}).validate(), ParameterError);   // below 8 points
    CHECK_THROWS_AS(GridSpec({3, 16, -1.0}).validate(), ParameterError);
    CHECK_NOTHROW(GridSpec({3, 32, 16.0}).validate());
}

TEST_CASE("free propagator matches the Gaussian closed form") {
    const GridSpec g{3, 32, 16.0};
    const GaussianSymbol s{cplx(1.0, 0.0), cplx(0.25, 0.0), 3};
    const ComplexField f = sample_gaussian(s, g);
    for (double t : {0.5, 1.0, 2.0}) {
        CAPTURE(t);
        const ComplexField num = free_propagator(f, t);
        const ComplexField ref = sample_gaussian(gaussian_apply(s, GaussianOp::U, t), g);
        CHECK(max_abs_diff(num, ref) < 1e-8);
    }
}

TEST_CASE("free propagator is a group and unitary") {
    const GridSpec g = test::small_grid();
    const ComplexField f = test::gaussian(g, 1.2);
    const ComplexField a = free_propagator(free_propagator(f, 0.3), 0.9);
    CHECK(max_abs_diff(a, free_propagator(f, 1.2)) < 1e-13);
    CHECK(lr_norm(a, 2.0) == doctest::Approx(lr_norm(f, 2.0)).epsilon(1e-13));
    CHECK(max_abs_diff(free_propagator(free_propagator(f, 0.7), -0.7), f) < 1e-13);
}

TEST_CASE("Gaussian calculus identity U = M D F M") {
    const GaussianSymbol g{cplx(0.7, 0.2), cplx(0.8, 0.3), 3};
    for (double t : {1.0, 2.0, 10.0}) CHECK(gaussian_identity_error(t, g) <= 1e-12);
}

TEST_CASE("grid identity F M(t) F* = U*(1/t) on the self-dual grid") {
    for (double t : {1.0, 2.0, 10.0}) CHECK(grid_identity_error(t, 3, 32) <= 1e-6);
    CHECK(grid_identity_error(3.0, 1, 64) <= 1e-6);
    CHECK_THROWS_AS(grid_identity_error(1.0, 3, 30), ParameterError);
}

TEST_CASE("Gaussian operators reject degenerate times") {
    const GaussianSymbol g{};
    CHECK_THROWS_AS(gaussian_apply(g, GaussianOp::M, 0.0), ParameterError);
    CHECK_THROWS_AS(gaussian_apply(g, GaussianOp::D, 0.0), ParameterError);
}

TEST_CASE("norms of a plane wave") {
    const GridSpec g = test::small_grid();
    ComplexField f(g);
    const double xi = 3.0 * g.dk();
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = std::polar(1.0, xi * node_coordinate(g, i, 0));
    const double l2 = std::sqrt(g.box_volume());
    CHECK(lr_norm(f, 2.0) == doctest::Approx(l2));
    CHECK(sobolev_norm(f, 1) == doctest::Approx(l2 * (1.0 + xi)));
    CHECK(sobolev_norm(f, 2) == doctest::Approx(l2 * (1.0 + xi + xi * xi)));
    CHECK(homogeneous_norm(f, 1.5) == doctest::Approx(l2 * std::pow(xi, 1.5)));
    CHECK(lr_norm(f, kInfinity) == doctest::Approx(1.0));
    CHECK(lr_norm(f, 4.0) == doctest::Approx(std::pow(g.box_volume(), 0.25)));
}

TEST_CASE("delta(r) = n/2 - n/r") {
    CHECK(delta_r(3, 6.0) == doctest::Approx(1.0));
    CHECK(delta_r(3, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("band projection drops the Nyquist planes and is idempotent") {
    const GridSpec g = test::small_grid();
    ComplexField f(g);
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = std::polar(1.0, std::numbers::pi * node_coordinate(g, i, 1));
    CHECK(lr_norm(project_band(f), 2.0) < 1e-12);
    const ComplexField a = project_band(test::gaussian(g, 0.8));
    CHECK(max_abs_diff(project_band(a), a) < 1e-15);
}

TEST_CASE("dealiased product of low modes equals the pointwise product") {
    const GridSpec g = test::small_grid();
    ComplexField a(g), b(g), ab(g);
    const double k1 = 2.0 * g.dk(), k2 = -3.0 * g.dk();
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double x = node_coordinate(g, i, 2);
        a.values[i] = std::polar(1.0, k1 * x);
        b.values[i] = std::polar(2.0, k2 * x);
        ab.values[i] = a.values[i] * b.values[i];
    }
    CHECK(max_abs_diff(dealiased_product(a, b), ab) < 1e-13);
}

TEST_CASE("gradient of a Gaussian") {
    const GridSpec g{3, 32, 16.0};
    const RealField f = real_part(sample_gaussian(GaussianSymbol{cplx(1.0, 0.0), cplx(0.2, 0.0), 3}, g));
    const VectorField s = gradient(f);
    double err = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        err = std::max(err, std::abs(s.components[1].values[i] + 0.2 * node_coordinate(g, i, 1) * f.values[i]));
    CHECK(err < 1e-9);
    CHECK(lr_norm(divergence(s) - real_part(laplacian(to_complex(f))), kInfinity) < 1e-9);
}

TEST_CASE("Riesz potential removes the zero mode and scales like |xi|^(mu-n)") {
    const GridSpec g = test::small_grid();
    RealField c(g);
    for (auto& v : c.values) v = 1.0;
    CHECK(lr_norm(riesz_potential(c, 1.0), kInfinity) < 1e-14);
    RealField w(g);
    const double xi = 2.0 * g.dk();
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] = std::cos(xi * node_coordinate(g, i, 0));
    const RealField r = riesz_potential(w, 1.0);
    CHECK(max_abs_diff(r, std::pow(xi, -2.0) * w) < 1e-12);
    CHECK_THROWS_AS(riesz_potential(w, 3.0), ParameterError);
}

TEST_CASE("grid mismatch is rejected") {
    ComplexField a(GridSpec{3, 16, 8.0}), b(GridSpec{3, 16, 4.0});
    CHECK_THROWS_AS(a += b, GridMismatch);
}

TEST_CASE("field binaries round trip") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hwave_test_field_io";
    fs::create_directories(dir);
    const GridSpec g = test::small_grid();
    const ComplexField f = test::gaussian(g, 1.1, 0.0, cplx(0.2, 0.9));
    const RealField r = real_part(f);
    const VectorField s = gradient(r);
    write_field(dir / "f.bin", f);
    write_field(dir / "r.bin", r);
    write_field(dir / "s.bin", s);
    CHECK(max_abs_diff(read_complex_field(dir / "f.bin"), f) == 0.0);
    CHECK(max_abs_diff(read_real_field(dir / "r.bin"), r) == 0.0);
    CHECK(max_abs_diff(read_vector_field(dir / "s.bin"), s) == 0.0);
    CHECK_THROWS(read_real_field(dir / "f.bin"));  // kind mismatch
    {
        std::ofstream bad(dir / "bad.bin", std::ios::binary);
        bad << "nope";
    }
    CHECK_THROWS(read_complex_field(dir / "bad.bin"));
    fs::remove_all(dir);
}
