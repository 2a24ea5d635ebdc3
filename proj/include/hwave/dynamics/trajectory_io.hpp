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
#include <string>
#include <vector>

#include "hwave/dynamics/aux_system.hpp"

namespace hwave {

// Column order of trajectory CSVs. The two profile-error columns keep
// their historical names; err_prof_7_46 holds err_prof_a and
// err_prof_7_47 holds err_prof_b.
const std::vector<std::string>& trajectory_csv_columns();

// Absent optional values (and NaN grad_gap) are written as empty cells.
// Values use 17 significant digits so a reread is bit-identical.
void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& rec);
std::string trajectory_csv(const TrajectoryRecord& rec);

// Inverse of write_trajectory_csv (snapshots are not stored in CSV).
// Throws ParameterError naming the line on malformed input.
TrajectoryRecord read_trajectory_csv(const std::filesystem::path& path);

}  // namespace hwave
