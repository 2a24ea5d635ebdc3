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

#include <cstddef>
#include <string_view>

#include "hwave/core/aligned.hpp"

namespace hwave::kernels {

// Flat array kernels used by every spectral operation and by the RK4
// stage assembly. Each ISA provides the same table; the scalar one is the
// reference the others are tested against.
struct KernelTable {
    std::string_view isa;

    // a[i] *= sym[i]
    void (*scale_real)(cplx* a, const double* sym, std::size_t n);
    // a[i] *= sym[i]
    void (*scale_complex)(cplx* a, const cplx* sym, std::size_t n);
    // out[i] = a[i] * b[i]
    void (*product)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
    // out[i] = a[i] * conj(b[i])
    void (*product_conj)(cplx* out, const cplx* a, const cplx* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(cplx* y, double alpha, const cplx* x, std::size_t n);
    // out[i] = x[i] + alpha * y[i]
    void (*lincomb)(cplx* out, const cplx* x, double alpha, const cplx* y, std::size_t n);
    // sum |a[i]|^2
    double (*sum_abs2)(const cplx* a, std::size_t n);
    // sum w[i] |a[i]|^2
    double (*weighted_sum_abs2)(const cplx* a, const double* w, std::size_t n);
    // max |a[i]|
    double (*max_abs)(const cplx* a, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table();

// Table picked at first use. HWAVE_SIMD=scalar|avx2 forces a choice; the
// default takes the widest ISA the CPU supports.
const KernelTable& active();

}  // namespace hwave::kernels
