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

#include <algorithm>
#include <cmath>

#include "hwave/kernels/kernels.hpp"

namespace hwave::kernels {
namespace {

// Complex values are handled as interleaved (re, im) doubles so the scalar
// path does exactly the arithmetic the vector path does, minus the FMA.

void scale_real(cplx* a, const double* sym, std::size_t n) {
    auto* d = reinterpret_cast<double*>(a);
    for (std::size_t i = 0; i < n; ++i) {
        d[2 * i] *= sym[i];
        d[2 * i + 1] *= sym[i];
    }
}

void scale_complex(cplx* a, const cplx* sym, std::size_t n) {
    auto* d = reinterpret_cast<double*>(a);
    const auto* s = reinterpret_cast<const double*>(sym);
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = d[2 * i], ai = d[2 * i + 1];
        const double br = s[2 * i], bi = s[2 * i + 1];
        d[2 * i] = ar * br - ai * bi;
        d[2 * i + 1] = ai * br + ar * bi;
    }
}

void product(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* x = reinterpret_cast<const double*>(a);
    const auto* y = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = x[2 * i], ai = x[2 * i + 1];
        const double br = y[2 * i], bi = y[2 * i + 1];
        o[2 * i] = ar * br - ai * bi;
        o[2 * i + 1] = ai * br + ar * bi;
    }
}

void product_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* x = reinterpret_cast<const double*>(a);
    const auto* y = reinterpret_cast<const double*>(b);
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = x[2 * i], ai = x[2 * i + 1];
        const double br = y[2 * i], bi = y[2 * i + 1];
        o[2 * i] = ar * br + ai * bi;
        o[2 * i + 1] = ai * br - ar * bi;
    }
}

void axpy(cplx* y, double alpha, const cplx* x, std::size_t n) {
    auto* o = reinterpret_cast<double*>(y);
    const auto* v = reinterpret_cast<const double*>(x);
    for (std::size_t i = 0; i < 2 * n; ++i) o[i] += alpha * v[i];
}

void lincomb(cplx* out, const cplx* x, double alpha, const cplx* y, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* a = reinterpret_cast<const double*>(x);
    const auto* b = reinterpret_cast<const double*>(y);
    for (std::size_t i = 0; i < 2 * n; ++i) o[i] = a[i] + alpha * b[i];
}

double sum_abs2(const cplx* a, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(a);
    double s = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) s += d[i] * d[i];
    return s;
}

double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(a);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += w[i] * (d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
    return s;
}

double max_abs(const cplx* a, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(a);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        m = std::max(m, d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
    return std::sqrt(m);
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar",     scale_real, scale_complex, product,
                                   product_conj, axpy,       lincomb,       sum_abs2,
                                   weighted_sum_abs2, max_abs};
    return table;
}

}  // namespace hwave::kernels
