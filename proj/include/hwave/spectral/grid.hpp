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

#include <cmath>
#include <cstddef>
#include <numbers>

namespace hwave {

// Periodic box [-L, L)^n sampled with N points per axis, stored row-major
// with axis 0 slowest.
struct GridSpec {
    int n = 3;
    int points = 32;
    double half_width = 16.0;

    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(points);
        return s;
    }
    double spacing() const { return 2.0 * half_width / points; }
    double dk() const { return std::numbers::pi / half_width; }
    double cell_volume() const { return std::pow(spacing(), n); }
    double box_volume() const { return std::pow(2.0 * half_width, n); }

    // Throws ParameterError on a malformed grid.
    void validate() const;

    bool operator==(const GridSpec&) const = default;
};

// Largest grid we agree to allocate (N^n complex doubles).
inline constexpr std::size_t kMaxGridSize = std::size_t{1} << 24;

}  // namespace hwave
