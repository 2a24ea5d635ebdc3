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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hwave/dynamics/aux_system.hpp"
#include "hwave/scattering/scattering.hpp"

namespace hwave {

struct FitWindow {
    double t_min = 1e2;
    double t_max = 1e4;
};

struct RateFit {
    double exponent = 0.0;
    double intercept = 0.0;  // natural log of the prefactor
    double r_squared = 0.0;
    FitWindow window;
    int sample_count = 0;
};

// Least squares on (log t, log value) over samples with t in the closed
// window. Rejects nonpositive values inside the window and windows with
// fewer than min_samples points or no spread in t.
RateFit fit_power_law(const std::vector<double>& times, const std::vector<double>& values, FitWindow window,
                      int min_samples = 4);

// Two-sided: pass iff |fitted - theory| <= tolerance. Upper: pass iff
// fitted <= theory + tolerance. Either way an r2 that is present must be
// at least 0.9.
enum class VerdictKind { TwoSided, Upper };

struct Verdict {
    std::string claim_id;
    int criterion = 0;
    VerdictKind kind = VerdictKind::TwoSided;
    double theory = 0.0;
    double fitted = 0.0;
    double tolerance = 0.0;
    std::optional<double> r2;
    bool pass = false;
    std::string note;
};

bool evaluate(const Verdict& v);

Verdict exponent_verdict(std::string id, int criterion, double theory, const RateFit& fit, double tolerance,
                         std::string note = {});
// A measured nonnegative quantity against a limit (theory 0, tolerance limit).
Verdict bound_verdict(std::string id, int criterion, double value, double limit, std::string note = {});
// A yes/no property (fitted 1 when it holds).
Verdict flag_verdict(std::string id, int criterion, bool holds, std::string note = {});

// Sorted by claim id.
std::vector<Verdict> sorted(std::vector<Verdict> v);

// CSV: claim_id,theory,fitted,tolerance,r2,pass (r2 empty when absent).
std::string verdicts_csv(const std::vector<Verdict>& v);
void write_verdicts_csv(const std::filesystem::path& path, const std::vector<Verdict>& v);
std::vector<Verdict> read_verdicts_csv(const std::filesystem::path& path);

// JSON mirror: every verdict with criterion, kind and note, plus the
// SHA-256 of the canonical config text and the given field checksums.
void write_verdicts_json(const std::filesystem::path& path, const std::vector<Verdict>& v,
                         const std::string& config_text, const std::map<std::string, std::string>& checksums);

struct ProfileSeries {
    std::vector<double> t;
    std::vector<double> phi02;  // err_prof_a
    std::vector<double> phi0;   // err_prof_b, empty when unavailable
};
// Reads the profile-error columns of the limit trajectory. The phi0
// series is absent for gamma <= 1/2.
ProfileSeries profile_error_series(const WaveOpRun& run);

// t^{-delta(r)} || e^{i(phi02 - phi)} U*(1/t) w - w_plus ||_r at every
// sample. Uses the stored column when run was made with profile_lr == r,
// else recomputes from snapshots.
struct LrSeries {
    std::vector<double> t;
    std::vector<double> value;
    double delta = 0.0;
};
LrSeries lr_profile_errors(const WaveOpRun& run, double r);

// Sample series of a trajectory column, skipping absent values.
struct Series {
    std::vector<double> t;
    std::vector<double> v;
};
enum class Column { ErrWPlus, ErrS02, ErrS0, ProfA, ProfB, ProfLr };
Series column(const TrajectoryRecord& rec, Column c);

}  // namespace hwave
