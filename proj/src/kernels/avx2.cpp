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

// Built with -mavx2 -mfma; nothing in here may run before the dispatcher
// has confirmed CPU support.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "hwave/kernels/kernels.hpp"

namespace hwave::kernels {
namespace {

// Two complex doubles per register: [r0 i0 r1 i1].
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d br = _mm256_movedup_pd(b);
    const __m256d bi = _mm256_permute_pd(b, 0xF);
    const __m256d as = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

inline __m256d cmul_conj(__m256d a, __m256d b) {
    const __m256d br = _mm256_movedup_pd(b);
    const __m256d bi = _mm256_permute_pd(b, 0xF);
    const __m256d as = _mm256_permute_pd(a, 0x5);
    return _mm256_fmsubadd_pd(a, br, _mm256_mul_pd(as, bi));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void scale_real(cplx* a, const double* sym, std::size_t n) {
    auto* d = reinterpret_cast<double*>(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // [s0 s0 s1 s1]
        const __m128d s = _mm_loadu_pd(sym + i);
        const __m256d ss = _mm256_permute4x64_pd(_mm256_castpd128_pd256(s), 0x50);
        _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(d + 2 * i), ss));
    }
    for (; i < n; ++i) {
        d[2 * i] *= sym[i];
        d[2 * i + 1] *= sym[i];
    }
}

void scale_complex(cplx* a, const cplx* sym, std::size_t n) {
    auto* d = reinterpret_cast<double*>(a);
    const auto* s = reinterpret_cast<const double*>(sym);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(d + 2 * i,
                         cmul(_mm256_loadu_pd(d + 2 * i), _mm256_loadu_pd(s + 2 * i)));
    for (; i < n; ++i) {
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
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(o + 2 * i,
                         cmul(_mm256_loadu_pd(x + 2 * i), _mm256_loadu_pd(y + 2 * i)));
    for (; i < n; ++i) {
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
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(o + 2 * i,
                         cmul_conj(_mm256_loadu_pd(x + 2 * i), _mm256_loadu_pd(y + 2 * i)));
    for (; i < n; ++i) {
        const double ar = x[2 * i], ai = x[2 * i + 1];
        const double br = y[2 * i], bi = y[2 * i + 1];
        o[2 * i] = ar * br + ai * bi;
        o[2 * i + 1] = ai * br - ar * bi;
    }
}

void axpy(cplx* y, double alpha, const cplx* x, std::size_t n) {
    auto* o = reinterpret_cast<double*>(y);
    const auto* v = reinterpret_cast<const double*>(x);
    const __m256d al = _mm256_set1_pd(alpha);
    const std::size_t m = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4)
        _mm256_storeu_pd(o + i, _mm256_fmadd_pd(al, _mm256_loadu_pd(v + i),
                                                _mm256_loadu_pd(o + i)));
    for (; i < m; ++i) o[i] += alpha * v[i];
}

void lincomb(cplx* out, const cplx* x, double alpha, const cplx* y, std::size_t n) {
    auto* o = reinterpret_cast<double*>(out);
    const auto* a = reinterpret_cast<const double*>(x);
    const auto* b = reinterpret_cast<const double*>(y);
    const __m256d al = _mm256_set1_pd(alpha);
    const std::size_t m = 2 * n;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4)
        _mm256_storeu_pd(o + i, _mm256_fmadd_pd(al, _mm256_loadu_pd(b + i),
                                                _mm256_loadu_pd(a + i)));
    for (; i < m; ++i) o[i] = a[i] + alpha * b[i];
}

double sum_abs2(const cplx* a, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(a);
    const std::size_t m = 2 * n;
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) {
        const __m256d x0 = _mm256_loadu_pd(d + i);
        const __m256d x1 = _mm256_loadu_pd(d + i + 4);
        acc0 = _mm256_fmadd_pd(x0, x0, acc0);
        acc1 = _mm256_fmadd_pd(x1, x1, acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < m; ++i) s += d[i] * d[i];
    return s;
}

double weighted_sum_abs2(const cplx* a, const double* w, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = _mm256_loadu_pd(d + 2 * i);
        const __m128d ww = _mm_loadu_pd(w + i);
        const __m256d wv = _mm256_permute4x64_pd(_mm256_castpd128_pd256(ww), 0x50);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(x, x), wv, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * (d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
    return s;
}

double max_abs(const cplx* a, std::size_t n) {
    const auto* d = reinterpret_cast<const double*>(a);
    __m256d mx = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = _mm256_loadu_pd(d + 2 * i);
        const __m256d sq = _mm256_mul_pd(x, x);
        // pairwise sums re^2 + im^2 land in both lanes of each complex slot
        mx = _mm256_max_pd(mx, _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, mx);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
    return std::sqrt(m);
}

}  // namespace

const KernelTable& avx2_table_impl() {
    static const KernelTable table{"avx2",       scale_real, scale_complex, product,
                                   product_conj, axpy,       lincomb,       sum_abs2,
                                   weighted_sum_abs2, max_abs};
    return table;
}

}  // namespace hwave::kernels
