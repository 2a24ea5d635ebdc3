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

#include "hwave/rates/rates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "hwave/core/checksum.hpp"
#include "hwave/core/error.hpp"
#include "hwave/spectral/ops.hpp"

namespace hwave {

RateFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values, FitWindow window,
                      int min_samples) {
    if (times.size() != values.size()) throw ParameterError("fit_power_law: times and values differ in length");
    if (!(window.t_min > 0.0 && window.t_max > window.t_min))
        throw ParameterError("fit_power_law: degenerate window");
    std::vector<double> x, y;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        if (t < window.t_min * (1.0 - 1e-12) || t > window.t_max * (1.0 + 1e-12)) continue;
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw ParameterError(fmt::format("fit_power_law: nonpositive value {:g} at t = {:g}", values[i], t));
        x.push_back(std::log(t));
        y.push_back(std::log(values[i]));
    }
    if (static_cast<int>(x.size()) < min_samples)
        throw ParameterError(fmt::format("fit_power_law: {} samples in window, need {}", x.size(), min_samples));
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw ParameterError("fit_power_law: degenerate window (no spread in t)");
    RateFit f;
    f.exponent = sxy / sxx;
    f.intercept = my - f.exponent * mx;
    f.r_squared = syy > 0.0 ? std::min(1.0, sxy * sxy / (sxx * syy)) : 1.0;
    f.window = window;
    f.sample_count = static_cast<int>(x.size());
    return f;
}

bool evaluate(const Verdict& v) {
    if (!std::isfinite(v.fitted)) return false;
    if (v.r2 && !(*v.r2 >= 0.9)) return false;
    if (v.kind == VerdictKind::Upper) return v.fitted <= v.theory + v.tolerance;
    return std::abs(v.fitted - v.theory) <= v.tolerance;
}

Verdict exponent_verdict(std::string id, int criterion, double theory, const RateFit& fit, double tolerance,
                         std::string note) {
    Verdict v{std::move(id), criterion, VerdictKind::TwoSided, theory, fit.exponent, tolerance, fit.r_squared,
              false, std::move(note)};
    v.pass = evaluate(v);
    return v;
}

Verdict bound_verdict(std::string id, int criterion, double value, double limit, std::string note) {
    Verdict v{std::move(id), criterion, VerdictKind::TwoSided, 0.0, value, limit, std::nullopt, false,
              std::move(note)};
    v.pass = evaluate(v);
    return v;
}

Verdict flag_verdict(std::string id, int criterion, bool holds, std::string note) {
    Verdict v{std::move(id), criterion, VerdictKind::TwoSided, 1.0, holds ? 1.0 : 0.0, 0.0, std::nullopt, false,
              std::move(note)};
    v.pass = evaluate(v);
    return v;
}

std::vector<Verdict> sorted(std::vector<Verdict> v) {
    std::stable_sort(v.begin(), v.end(), [](const Verdict& a, const Verdict& b) { return a.claim_id < b.claim_id; });
    return v;
}

namespace {

std::string num(double x) { return fmt::format("{:.17g}", x); }

}  // namespace

std::string verdicts_csv(const std::vector<Verdict>& v) {
    std::string out = "claim_id,theory,fitted,tolerance,r2,pass\n";
    for (const auto& x : sorted(v))
        out += fmt::format("{},{},{},{},{},{}\n", x.claim_id, num(x.theory), num(x.fitted), num(x.tolerance),
                           x.r2 ? num(*x.r2) : std::string(), x.pass ? "true" : "false");
    return out;
}

void write_verdicts_csv(const std::filesystem::path& path, const std::vector<Verdict>& v) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << verdicts_csv(v);
}

std::vector<Verdict> read_verdicts_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open verdicts CSV " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != "claim_id,theory,fitted,tolerance,r2,pass")
        throw ParameterError(path.string() + ":1: not a verdicts CSV");
    std::vector<Verdict> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (line.back() == ',') f.emplace_back();
        if (f.size() != 6) throw ParameterError(fmt::format("{}:{}: expected 6 cells", path.string(), lineno));
        Verdict v;
        try {
            v.claim_id = f[0];
            v.theory = std::stod(f[1]);
            v.fitted = std::stod(f[2]);
            v.tolerance = std::stod(f[3]);
            if (!f[4].empty()) v.r2 = std::stod(f[4]);
        } catch (const std::exception&) {
            throw ParameterError(fmt::format("{}:{}: malformed number", path.string(), lineno));
        }
        v.pass = f[5] == "true";
        out.push_back(std::move(v));
    }
    return out;
}

void write_verdicts_json(const std::filesystem::path& path, const std::vector<Verdict>& v,
                         const std::string& config_text, const std::map<std::string, std::string>& checksums) {
    nlohmann::ordered_json j;
    j["config_sha256"] = sha256_hex(config_text);
    j["all_pass"] = std::all_of(v.begin(), v.end(), [](const Verdict& x) { return x.pass; });
    auto& arr = j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& x : sorted(v)) {
        nlohmann::ordered_json e;
        e["claim_id"] = x.claim_id;
        e["criterion"] = x.criterion;
        e["kind"] = x.kind == VerdictKind::Upper ? "upper" : "two_sided";
        e["theory"] = x.theory;
        e["fitted"] = x.fitted;
        e["tolerance"] = x.tolerance;
        e["r2"] = x.r2 ? nlohmann::ordered_json(*x.r2) : nlohmann::ordered_json(nullptr);
        e["pass"] = x.pass;
        e["note"] = x.note;
        arr.push_back(std::move(e));
    }
    j["checksums"] = checksums;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

Series column(const TrajectoryRecord& rec, Column c) {
    Series s;
    for (const auto& smp : rec.samples) {
        std::optional<double> v;
        switch (c) {
            case Column::ErrWPlus: v = smp.err_w_plus_k; break;
            case Column::ErrS02: v = smp.err_s02_l; break;
            case Column::ErrS0: v = smp.err_s0_l; break;
            case Column::ProfA: v = smp.err_prof_a; break;
            case Column::ProfB: v = smp.err_prof_b; break;
            case Column::ProfLr: v = smp.err_prof_lr; break;
        }
        if (v) {
            s.t.push_back(smp.t);
            s.v.push_back(*v);
        }
    }
    return s;
}

ProfileSeries profile_error_series(const WaveOpRun& run) {
    if (!run.limit().has_phase) throw ParameterError("profile_error_series: run carries no phases");
    ProfileSeries out;
    const Series a = column(run.limit(), Column::ProfA);
    out.t = a.t;
    out.phi02 = a.v;
    if (run.params.gamma > 0.5) {
        const Series b = column(run.limit(), Column::ProfB);
        if (b.t == a.t) out.phi0 = b.v;
    }
    return out;
}

LrSeries lr_profile_errors(const WaveOpRun& run, double r) {
    const int n = run.params.n;
    const int k = run.pair.k;
    if (!(r >= 2.0)) throw ParameterError("lr_profile_errors: r must be >= 2");
    const double delta = delta_r(n, r);
    const double cap = std::min<double>(k, n / 2.0);
    if (delta > cap || (2 * k == n && delta >= cap))
        throw ParameterError(fmt::format("lr_profile_errors: delta(r) = {:g} outside [0, min(k, n/2)]", delta));
    LrSeries out;
    out.delta = delta;
    const auto& rec = run.limit();
    if (run.profile_lr == r) {
        const Series s = column(rec, Column::ProfLr);
        if (s.t.size() == rec.samples.size()) {
            out.t = s.t;
            out.value = s.v;
            return out;
        }
    }
    bool snaps = !rec.samples.empty();
    for (const auto& smp : rec.samples) snaps = snaps && smp.snapshot.has_value();
    if (!snaps) throw ParameterError("lr_profile_errors: run has neither snapshots nor a stored column for this r");
    const auto& d = run.datum;
    const RealField g0f = run.params.lambda == 0.0 ? RealField(d.w_plus.grid) : g0(d.w_plus, d.w_plus, run.params);
    for (const auto& smp : rec.samples) {
        const AuxState& st = *smp.snapshot;
        if (!st.phi) throw ParameterError("lr_profile_errors: snapshots carry no phase");
        const RealField phi02 = d.phi02_at_1 + free_growth_factor(st.t, run.params.gamma) * g0f;
        const ComplexField a = multiply_phase(half_propagate(st.w, st.t), phi02 - *st.phi) - d.w_plus;
        out.t.push_back(st.t);
        out.value.push_back(std::pow(st.t, -delta) * lr_norm(a, r));
    }
    return out;
}

}  // namespace hwave
