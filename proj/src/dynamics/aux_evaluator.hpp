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

// Internal: spectral right-hand side shared by aux_rhs and the integrator.

#include <memory>
#include <vector>

#include "hwave/model/model.hpp"
#include "hwave/spectral/engine.hpp"

namespace hwave::detail {

// State layout in one contiguous coefficient vector:
//   [ W | S_0 ... S_{n-1} | P ]   each block N^n long, P only with phase.
class AuxEvaluator {
public:
    AuxEvaluator(const GridSpec& grid, const ModelParams& p, bool with_phase);

    std::size_t block() const { return N_; }
    std::size_t state_size() const { return N_ * blocks_; }
    int blocks() const { return blocks_; }
    bool with_phase() const { return with_phase_; }
    const SpectralEngine& engine() const { return *eng_; }

    void rhs(double t, const cplx* y, cplx* dy);

    // max |s| on the padded grid from the latest rhs call.
    double last_s_max() const { return s_max_; }

private:
    std::shared_ptr<const SpectralEngine> eng_;
    GridSpec g_;
    ModelParams p_;
    bool with_phase_;
    std::size_t N_, M_;
    int blocks_;
    double s_max_ = 0.0;

    std::vector<RVec> sr_;    // s_j on the padded grid
    std::vector<RVec> lamb_;  // Lamb vector accumulators
    CVec vp_, buf_, work_, term_;
    CVec tmp_, sym_, Q_, R_, G_, That_;
    std::vector<CVec> Lh_;
};

}  // namespace hwave::detail
