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

#include <cstdlib>
#include <string>

#include "hwave/core/error.hpp"
#include "hwave/kernels/kernels.hpp"

namespace hwave::kernels {

#ifdef HWAVE_HAVE_AVX2
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#ifdef HWAVE_HAVE_AVX2
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &avx2_table_impl() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const KernelTable& select() {
    const char* env = std::getenv("HWAVE_SIMD");
    const std::string want = env ? env : "auto";
    if (want == "scalar") return scalar_table();
    if (want == "avx2") {
        if (const auto* t = avx2_table()) return *t;
        throw ParameterError("HWAVE_SIMD=avx2 requested but AVX2/FMA is unavailable");
    }
    if (want != "auto" && !want.empty())
        throw ParameterError("HWAVE_SIMD must be scalar, avx2 or auto, got '" + want + "'");
    if (const auto* t = avx2_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace hwave::kernels
