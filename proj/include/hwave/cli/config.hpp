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
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hwave/rates/acceptance.hpp"

namespace hwave::cli {

// Malformed or inconsistent configuration. `line` is 1-based, 0 if unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, int line, const std::string& what);
    std::string field;
    int line = 0;
};

struct AuxSettings {
    double t_start = 1e4;  // seed time; the state is the free seed there
    double t_end = 10.0;
    double sample_ratio = 1.189207115002721;
    bool snapshots = false;
};

struct CrossCheckSettings {
    double sigma_amplitude = 1e-4;
    double sigma_width = 1.5;
    double direct_dt_rel = 0.01;
};

struct ExtractSettings {
    std::filesystem::path trajectory;  // directory written by wave-operator
    double tolerance = kInfinity;
};

struct RunConfig {
    ModelParams model;
    AdmissiblePair pair;
    GridSpec grid;
    IntegratorConfig integrator;
    QuadratureConfig quadrature;
    GaussianDatumSpec datum;

    std::vector<double> t0_schedule{100.0, 200.0, 400.0, 800.0};
    double T = 10.0;
    double T_max = 100.0;
    double sample_ratio = 1.189207115002721;
    double c_cal = 1.0;
    bool calibrate = true;
    int max_retries = 4;
    bool allow_override = true;
    bool richardson = false;
    double profile_lr = 6.0;
    bool snapshots = false;  // write limit-trajectory snapshots

    FitWindow window{1e2, 1e4};
    AuxSettings aux;
    CrossCheckSettings cross_check;
    ExtractSettings extract;
    AcceptanceConfig suite;  // model, grid, datum and window copied in
    bool suite_criteria_given = false;
    int workers = 0;

    std::string canonical;  // resolved configuration, pretty JSON

    WaveOpConfig wave_operator() const;
};

// Parses a JSON configuration. Unknown fields, wrong types and values that
// fail validation raise ConfigError with the field path and source line.
// Relative paths are resolved against `base_dir`.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

// Throws ConfigError naming the violated clause when the pair is not
// admissible, or the Gaussian datum is under-resolved or not confined.
void check_run_config(const RunConfig& cfg);

// Maps each object key to the line it appears on, by JSON pointer
// ("/integrator/dt_rel"). Assumes well-formed input.
std::map<std::string, int> key_lines(const std::string& text);

}  // namespace hwave::cli
