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

#include "hwave/spectral/field.hpp"

namespace hwave {

// Flat binary layout (native little-endian):
//   char[4] "HWVF" | u32 version=1 | i32 n | i32 N | f64 L | u32 kind | u32 components
//   payload: row-major doubles; complex nodes as (re, im); vector fields
//   component after component.
// kind: 0 complex, 1 real, 2 vector.
enum class FieldKind : std::uint32_t { Complex = 0, Real = 1, Vector = 2 };

void write_field(const std::filesystem::path& path, const ComplexField& f);
void write_field(const std::filesystem::path& path, const RealField& f);
void write_field(const std::filesystem::path& path, const VectorField& f);

ComplexField read_complex_field(const std::filesystem::path& path);
RealField read_real_field(const std::filesystem::path& path);
VectorField read_vector_field(const std::filesystem::path& path);

// Line through the box centre along `axis`. Columns: x,re,im for complex,
// x,value for real, x,s0,...,s{n-1} for vector fields.
void write_csv_slice(const std::filesystem::path& path, const ComplexField& f, int axis = 0);
void write_csv_slice(const std::filesystem::path& path, const RealField& f, int axis = 0);
void write_csv_slice(const std::filesystem::path& path, const VectorField& f, int axis = 0);

}  // namespace hwave
