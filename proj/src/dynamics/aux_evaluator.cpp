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

#include "aux_evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "hwave/kernels/kernels.hpp"

namespace hwave::detail {

AuxEvaluator::AuxEvaluator(const GridSpec& grid, const ModelParams& p, bool with_phase)
    : eng_(SpectralEngine::get(grid)), g_(grid), p_(p), with_phase_(with_phase) {
    N_ = eng_->size();
    M_ = eng_->padded_size();
    blocks_ = 1 + g_.n + (with_phase ? 1 : 0);
    sr_.assign(g_.n, RVec(M_));
    lamb_.assign(g_.n, RVec(M_));
    vp_.resize(M_);
    buf_.resize(M_);
    work_.resize(M_);
    term_.resize(M_);
    for (CVec* v : {&tmp_, &sym_, &Q_, &R_, &G_, &That_}) v->resize(N_);
    Lh_.assign(g_.n, CVec(N_));
}

// Every product below is formed on the 3/2-padded grid, so all quadratic
// terms are exact projections onto the band. The (s.grad)s term uses the
// Lamb form grad(|s|^2/2) + s_j (d_j s_i - d_i s_j): for gradient s the
// second part is round-off and ds stays an exact gradient.
void AuxEvaluator::rhs(double t, const cplx* y, cplx* dy) {
    const auto& e = *eng_;
    const auto& kt = kernels::active();
    const int n = g_.n;
    const std::size_t N = N_, M = M_;
    const cplx* W = y;
    auto S = [&](int j) { return y + (1 + j) * N; };
    const double inv_t2 = 1.0 / (t * t);
    const double tg = std::pow(t, -p_.gamma);
    const cplx I(0.0, 1.0);

    // s on the padded grid.
    for (int j = 0; j < n; ++j) {
        e.to_padded(S(j), buf_.data());
        for (std::size_t i = 0; i < M; ++i) sr_[j][i] = buf_[i].real();
    }
    double smax2 = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        double q = 0.0;
        for (int j = 0; j < n; ++j) q += sr_[j][i] * sr_[j][i];
        smax2 = std::max(smax2, q);
        buf_[i] = cplx(q, 0.0);
    }
    s_max_ = std::sqrt(smax2);
    e.from_padded(buf_.data(), Q_.data());  // |s|^2

    // Lamb vector sum_j s_j (d_j s_i - d_i s_j).
    for (auto& l : lamb_) std::fill(l.begin(), l.end(), 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const auto& ka = e.xi(a);
            const auto& kb = e.xi(b);
            const cplx* Sa = S(a);
            const cplx* Sb = S(b);
            for (std::size_t i = 0; i < N; ++i) tmp_[i] = I * (ka[i] * Sb[i] - kb[i] * Sa[i]);
            e.to_padded(tmp_.data(), buf_.data());
            for (std::size_t i = 0; i < M; ++i) {
                const double om = buf_[i].real();  // d_a s_b - d_b s_a
                lamb_[b][i] += sr_[a][i] * om;
                lamb_[a][i] -= sr_[b][i] * om;
            }
        }
    for (int j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < M; ++i) buf_[i] = cplx(lamb_[j][i], 0.0);
        e.from_padded(buf_.data(), Lh_[j].data());
    }

    // v = U*(1/t) w, |v|^2 and the transport term 2 s.grad v + (div s) v.
    e.propagator_symbol(-1.0 / t, sym_.data());
    kt.product(tmp_.data(), W, sym_.data(), N);
    e.to_padded(tmp_.data(), vp_.data());
    for (std::size_t i = 0; i < M; ++i) buf_[i] = cplx(std::norm(vp_[i]), 0.0);
    e.from_padded(buf_.data(), R_.data());

    std::fill(term_.begin(), term_.end(), cplx{});
    CVec& V = That_;  // reuse as scratch for the propagated coefficients
    std::copy(tmp_.begin(), tmp_.end(), V.begin());
    for (int j = 0; j < n; ++j) {
        const auto& kj = e.xi(j);
        for (std::size_t i = 0; i < N; ++i) tmp_[i] = I * kj[i] * V[i];
        e.to_padded(tmp_.data(), work_.data());
        for (std::size_t i = 0; i < M; ++i) term_[i] += 2.0 * sr_[j][i] * work_[i];
    }
    std::fill(tmp_.begin(), tmp_.end(), cplx{});
    for (int j = 0; j < n; ++j) {
        const auto& kj = e.xi(j);
        const cplx* Sj = S(j);
        for (std::size_t i = 0; i < N; ++i) tmp_[i] += I * kj[i] * Sj[i];
    }
    e.to_padded(tmp_.data(), work_.data());
    for (std::size_t i = 0; i < M; ++i) term_[i] += work_[i].real() * vp_[i];
    e.from_padded(term_.data(), That_.data());

    // Assemble. G = lambda omega^{mu-n} |v|^2 in coefficient space.
    const auto& riesz = e.riesz_symbol(p_.mu);
    for (std::size_t i = 0; i < N; ++i) G_[i] = p_.lambda * riesz[i] * R_[i];

    cplx* dW = dy;
    kt.product_conj(dW, That_.data(), sym_.data(), N);  // U(1/t) = conj of U*(1/t)
    for (std::size_t i = 0; i < N; ++i) dW[i] *= 0.5 * inv_t2;

    for (int j = 0; j < n; ++j) {
        const auto& kj = e.xi(j);
        cplx* dS = dy + (1 + j) * N;
        for (std::size_t i = 0; i < N; ++i)
            dS[i] = inv_t2 * (0.5 * I * kj[i] * Q_[i] + Lh_[j][i]) + tg * I * kj[i] * G_[i];
    }
    if (with_phase_) {
        cplx* dP = dy + (1 + n) * N;
        for (std::size_t i = 0; i < N; ++i) dP[i] = 0.5 * inv_t2 * Q_[i] + tg * G_[i];
    }
}

}  // namespace hwave::detail
