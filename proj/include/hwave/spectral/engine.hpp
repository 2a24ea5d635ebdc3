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

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "hwave/core/aligned.hpp"
#include "hwave/spectral/grid.hpp"

namespace hwave {

// Per-grid FFT plans, frequency tables and the 3/2 zero-padding maps used
// for alias-free quadratic products. One engine per distinct grid is cached
// for the process lifetime; all methods are const and thread-safe.
//
// Coefficient convention: c = FFT(f) / N^n, so f = IFFT(c) without scaling
// and ||f||_2^2 = (2L)^n sum |c|^2.
class SpectralEngine {
public:
    static std::shared_ptr<const SpectralEngine> get(const GridSpec& grid);

    explicit SpectralEngine(const GridSpec& grid);
    ~SpectralEngine();
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return size_; }
    std::size_t padded_size() const { return padded_size_; }
    int padded_points() const { return padded_points_; }

    // In place: nodal values -> coefficients.
    void forward(cplx* data) const;
    // In place: coefficients -> nodal values.
    void backward(cplx* data) const;
    // Band coefficients -> values on the padded grid (3N/2 per axis).
    void to_padded(const cplx* coeffs, cplx* padded) const;
    // Values on the padded grid -> band coefficients. Destroys `padded`.
    void from_padded(cplx* padded, cplx* coeffs) const;

    // xi(axis)[i]: frequency component along `axis` at flat mode index i.
    const RVec& xi(int axis) const { return xi_[axis]; }
    const RVec& xi2() const { return xi2_; }
    // 1 on the de-aliased band, 0 on any Nyquist plane.
    const RVec& band() const { return band_; }
    // |xi|^{mu-n} with the zero mode set to 0.
    const RVec& riesz_symbol(double mu) const;
    // exp(-i t |xi|^2 / 2) over all modes.
    void propagator_symbol(double t, cplx* out) const;
    // c[i] *= exp(-i t |xi|^2 / 2)
    void apply_propagator(double t, cplx* coeffs) const;

    // Zeroes the Nyquist planes.
    void project(cplx* coeffs) const;

private:
    struct Plans;

    GridSpec grid_;
    std::size_t size_ = 0;
    int padded_points_ = 0;
    std::size_t padded_size_ = 0;
    std::vector<RVec> xi_;
    RVec xi2_;
    RVec band_;
    std::vector<int> m2_;
    int max_m2_ = 0;
    std::vector<std::ptrdiff_t> pad_map_;
    std::unique_ptr<Plans> plans_;

    mutable std::mutex cache_mutex_;
    mutable std::map<double, RVec> riesz_cache_;
};

}  // namespace hwave
