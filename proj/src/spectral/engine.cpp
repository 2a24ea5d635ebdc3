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

#include "hwave/spectral/engine.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

#include "hwave/core/error.hpp"
#include "hwave/kernels/kernels.hpp"

namespace hwave {

namespace {

// FFTW's planner is not re-entrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

int mode_number(int j, int N) { return j < N / 2 ? j : j - N; }

}  // namespace

// FFTW_ESTIMATE keeps plan selection deterministic, so identical configs
// reproduce bit-identical outputs across processes.
struct SpectralEngine::Plans {
    fftw_plan fwd = nullptr, bwd = nullptr, pad_fwd = nullptr, pad_bwd = nullptr;

    Plans(int n, int N, int M) {
        std::vector<int> dims(n, N), pdims(n, M);
        std::size_t s = 1, ps = 1;
        for (int i = 0; i < n; ++i) {
            s *= N;
            ps *= M;
        }
        CVec a(s), b(ps);
        std::lock_guard lock(planner_mutex());
        fwd = fftw_plan_dft(n, dims.data(), as_fftw(a.data()), as_fftw(a.data()), FFTW_FORWARD,
                            FFTW_ESTIMATE);
        bwd = fftw_plan_dft(n, dims.data(), as_fftw(a.data()), as_fftw(a.data()), FFTW_BACKWARD,
                            FFTW_ESTIMATE);
        pad_fwd = fftw_plan_dft(n, pdims.data(), as_fftw(b.data()), as_fftw(b.data()),
                                FFTW_FORWARD, FFTW_ESTIMATE);
        pad_bwd = fftw_plan_dft(n, pdims.data(), as_fftw(b.data()), as_fftw(b.data()),
                                FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!fwd || !bwd || !pad_fwd || !pad_bwd) throw NumericalError("FFTW planning failed");
    }
    ~Plans() {
        std::lock_guard lock(planner_mutex());
        for (auto p : {fwd, bwd, pad_fwd, pad_bwd})
            if (p) fftw_destroy_plan(p);
    }
};

std::shared_ptr<const SpectralEngine> SpectralEngine::get(const GridSpec& grid) {
    static std::mutex m;
    static std::vector<std::shared_ptr<const SpectralEngine>> cache;
    std::lock_guard lock(m);
    for (const auto& e : cache)
        if (e->grid() == grid) return e;
    auto e = std::make_shared<const SpectralEngine>(grid);
    cache.push_back(e);
    return e;
}

SpectralEngine::SpectralEngine(const GridSpec& grid) : grid_(grid) {
    grid_.validate();
    const int n = grid_.n, N = grid_.points;
    size_ = grid_.size();
    padded_points_ = 3 * N / 2;
    padded_size_ = 1;
    for (int i = 0; i < n; ++i) padded_size_ *= static_cast<std::size_t>(padded_points_);

    xi_.assign(n, RVec(size_));
    xi2_.assign(size_, 0.0);
    band_.assign(size_, 1.0);
    m2_.assign(size_, 0);
    pad_map_.assign(size_, -1);
    const double dk = grid_.dk();
    max_m2_ = n * (N / 2) * (N / 2);

    std::vector<int> j(n, 0);
    for (std::size_t idx = 0; idx < size_; ++idx) {
        std::ptrdiff_t pidx = 0;
        bool nyquist = false;
        int m2 = 0;
        for (int a = 0; a < n; ++a) {
            const int m = mode_number(j[a], N);
            xi_[a][idx] = m * dk;
            m2 += m * m;
            nyquist = nyquist || j[a] == N / 2;
            pidx = pidx * padded_points_ + (m >= 0 ? m : m + padded_points_);
        }
        m2_[idx] = m2;
        xi2_[idx] = m2 * dk * dk;
        if (nyquist)
            band_[idx] = 0.0;
        else
            pad_map_[idx] = pidx;
        for (int a = n - 1; a >= 0; --a) {
            if (++j[a] < N) break;
            j[a] = 0;
        }
    }
    plans_ = std::make_unique<Plans>(n, N, padded_points_);
}

SpectralEngine::~SpectralEngine() = default;

void SpectralEngine::forward(cplx* data) const {
    fftw_execute_dft(plans_->fwd, as_fftw(data), as_fftw(data));
    const double scale = 1.0 / static_cast<double>(size_);
    auto* d = reinterpret_cast<double*>(data);
    for (std::size_t i = 0; i < 2 * size_; ++i) d[i] *= scale;
}

void SpectralEngine::backward(cplx* data) const {
    fftw_execute_dft(plans_->bwd, as_fftw(data), as_fftw(data));
}

void SpectralEngine::to_padded(const cplx* coeffs, cplx* padded) const {
    std::memset(static_cast<void*>(padded), 0, padded_size_ * sizeof(cplx));
    for (std::size_t i = 0; i < size_; ++i)
        if (pad_map_[i] >= 0) padded[pad_map_[i]] = coeffs[i];
    fftw_execute_dft(plans_->pad_bwd, as_fftw(padded), as_fftw(padded));
}

void SpectralEngine::from_padded(cplx* padded, cplx* coeffs) const {
    fftw_execute_dft(plans_->pad_fwd, as_fftw(padded), as_fftw(padded));
    const double scale = 1.0 / static_cast<double>(padded_size_);
    for (std::size_t i = 0; i < size_; ++i)
        coeffs[i] = pad_map_[i] >= 0 ? padded[pad_map_[i]] * scale : cplx{};
}

const RVec& SpectralEngine::riesz_symbol(double mu) const {
    std::lock_guard lock(cache_mutex_);
    auto it = riesz_cache_.find(mu);
    if (it != riesz_cache_.end()) return it->second;
    RVec sym(size_);
    const double p = 0.5 * (mu - grid_.n);
    for (std::size_t i = 0; i < size_; ++i) sym[i] = m2_[i] == 0 ? 0.0 : std::pow(xi2_[i], p);
    return riesz_cache_.emplace(mu, std::move(sym)).first->second;
}

// |xi|^2 only takes the values dk^2 * m2 with integer m2, so the phase is
// tabulated once per call instead of evaluating sincos at every mode.
void SpectralEngine::propagator_symbol(double t, cplx* out) const {
    const double dk = grid_.dk();
    std::vector<cplx> table(static_cast<std::size_t>(max_m2_) + 1);
    for (int q = 0; q <= max_m2_; ++q) table[q] = std::polar(1.0, -0.5 * t * dk * dk * q);
    for (std::size_t i = 0; i < size_; ++i) out[i] = table[m2_[i]];
}

void SpectralEngine::apply_propagator(double t, cplx* coeffs) const {
    if (t == 0.0) return;
    CVec sym(size_);
    propagator_symbol(t, sym.data());
    kernels::active().scale_complex(coeffs, sym.data(), size_);
}

void SpectralEngine::project(cplx* coeffs) const {
    for (std::size_t i = 0; i < size_; ++i)
        if (band_[i] == 0.0) coeffs[i] = cplx{};
}

}  // namespace hwave
