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

#include <complex>
#include <random>
#include <vector>

#include "hwave/kernels/kernels.hpp"

using hwave::cplx;
namespace k = hwave::kernels;

namespace {

struct Data {
    std::vector<cplx> a, b;
    std::vector<double> w;
};

Data make(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    Data out;
    for (std::size_t i = 0; i < n; ++i) {
        out.a.emplace_back(d(rng), d(rng));
        out.b.emplace_back(d(rng), d(rng));
        out.w.push_back(std::abs(d(rng)));
    }
    return out;
}

bool close(cplx x, cplx y) { return std::abs(x - y) <= 1e-14 * (1.0 + std::abs(x)); }
bool close(double x, double y) { return std::abs(x - y) <= 1e-13 * (1.0 + std::abs(x)); }

}  // namespace

TEST_CASE("active kernel table is one of the known ISAs") {
    const auto isa = k::active().isa;
    CHECK((isa == "scalar" || isa == "avx2"));
}

TEST_CASE("avx2 kernels agree with the scalar table") {
    const k::KernelTable* v = k::avx2_table();
    if (!v) {
        MESSAGE("AVX2 not available on this host; equivalence not exercised");
        return;
    }
    const k::KernelTable& s = k::scalar_table();
    // Lengths around the vector width exercise the remainder loops.
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 64u, 1001u}) {
        CAPTURE(n);
        const Data d = make(n, 17 + static_cast<unsigned>(n));
        std::vector<cplx> o1(n), o2(n);

        s.product(o1.data(), d.a.data(), d.b.data(), n);
        v->product(o2.data(), d.a.data(), d.b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]));

        s.product_conj(o1.data(), d.a.data(), d.b.data(), n);
        v->product_conj(o2.data(), d.a.data(), d.b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]));

        s.lincomb(o1.data(), d.a.data(), 0.37, d.b.data(), n);
        v->lincomb(o2.data(), d.a.data(), 0.37, d.b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]));

        o1 = d.a;
        o2 = d.a;
        s.axpy(o1.data(), -1.25, d.b.data(), n);
        v->axpy(o2.data(), -1.25, d.b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]));

        o1 = d.a;
        o2 = d.a;
        s.scale_real(o1.data(), d.w.data(), n);
        v->scale_real(o2.data(), d.w.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]));

        o1 = d.a;
        o2 = d.a;
        s.scale_complex(o1.data(), d.b.data(), n);
        v->scale_complex(o2.data(), d.b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(o1[i], o2[i]));

        CHECK(close(s.sum_abs2(d.a.data(), n), v->sum_abs2(d.a.data(), n)));
        CHECK(close(s.weighted_sum_abs2(d.a.data(), d.w.data(), n), v->weighted_sum_abs2(d.a.data(), d.w.data(), n)));
        CHECK(s.max_abs(d.a.data(), n) == v->max_abs(d.a.data(), n));
    }
}
