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

#include "hwave/spectral/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hwave/core/error.hpp"

namespace hwave {

namespace {

constexpr char kMagic[4] = {'H', 'W', 'V', 'F'};
constexpr std::uint32_t kVersion = 1;

struct Header {
    GridSpec grid;
    FieldKind kind;
    std::uint32_t components;
};

template <class T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw ParameterError("field file truncated");
    return v;
}

std::ofstream open_out(const std::filesystem::path& path, const GridSpec& g, FieldKind kind,
                       std::uint32_t comps) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParameterError("cannot open " + path.string() + " for writing");
    os.write(kMagic, 4);
    put(os, kVersion);
    put(os, static_cast<std::int32_t>(g.n));
    put(os, static_cast<std::int32_t>(g.points));
    put(os, g.half_width);
    put(os, static_cast<std::uint32_t>(kind));
    put(os, comps);
    return os;
}

Header read_header(std::ifstream& is, const std::filesystem::path& path) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw ParameterError(path.string() + ": not a field file");
    if (get<std::uint32_t>(is) != kVersion)
        throw ParameterError(path.string() + ": unsupported field file version");
    Header h;
    h.grid.n = get<std::int32_t>(is);
    h.grid.points = get<std::int32_t>(is);
    h.grid.half_width = get<double>(is);
    h.grid.validate();
    h.kind = static_cast<FieldKind>(get<std::uint32_t>(is));
    h.components = get<std::uint32_t>(is);
    return h;
}

std::ifstream open_in(const std::filesystem::path& path, FieldKind want, Header& h) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParameterError("cannot open " + path.string());
    h = read_header(is, path);
    if (h.kind != want) throw ParameterError(path.string() + ": unexpected field kind");
    return is;
}

void read_doubles(std::ifstream& is, double* dst, std::size_t count) {
    is.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(count * sizeof(double)));
    if (!is) throw ParameterError("field file truncated");
}

// Flat indices of the line through the centre along `axis`.
std::vector<std::size_t> centre_line(const GridSpec& g, int axis) {
    if (axis < 0 || axis >= g.n) throw ParameterError("csv slice: axis out of range");
    std::vector<std::size_t> idx;
    for (int j = 0; j < g.points; ++j) {
        std::size_t flat = 0;
        for (int a = 0; a < g.n; ++a)
            flat = flat * g.points + static_cast<std::size_t>(a == axis ? j : g.points / 2);
        idx.push_back(flat);
    }
    return idx;
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw ParameterError("cannot open " + path.string() + " for writing");
    return os;
}

}  // namespace

void write_field(const std::filesystem::path& path, const ComplexField& f) {
    auto os = open_out(path, f.grid, FieldKind::Complex, 1);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
}

void write_field(const std::filesystem::path& path, const RealField& f) {
    auto os = open_out(path, f.grid, FieldKind::Real, 1);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

void write_field(const std::filesystem::path& path, const VectorField& f) {
    auto os = open_out(path, f.grid, FieldKind::Vector, static_cast<std::uint32_t>(f.grid.n));
    for (const auto& c : f.components)
        os.write(reinterpret_cast<const char*>(c.values.data()),
                 static_cast<std::streamsize>(c.values.size() * sizeof(double)));
}

ComplexField read_complex_field(const std::filesystem::path& path) {
    Header h;
    auto is = open_in(path, FieldKind::Complex, h);
    ComplexField f(h.grid);
    read_doubles(is, reinterpret_cast<double*>(f.values.data()), 2 * f.values.size());
    return f;
}

RealField read_real_field(const std::filesystem::path& path) {
    Header h;
    auto is = open_in(path, FieldKind::Real, h);
    RealField f(h.grid);
    read_doubles(is, f.values.data(), f.values.size());
    return f;
}

VectorField read_vector_field(const std::filesystem::path& path) {
    Header h;
    auto is = open_in(path, FieldKind::Vector, h);
    if (h.components != static_cast<std::uint32_t>(h.grid.n))
        throw ParameterError(path.string() + ": component count does not match n");
    VectorField f(h.grid);
    for (auto& c : f.components) read_doubles(is, c.values.data(), c.values.size());
    return f;
}

void write_csv_slice(const std::filesystem::path& path, const ComplexField& f, int axis) {
    auto os = open_csv(path);
    os << "x,re,im\n";
    for (std::size_t i : centre_line(f.grid, axis))
        os << fmt::format("{:.17g},{:.17g},{:.17g}\n", node_coordinate(f.grid, i, axis),
                          f.values[i].real(), f.values[i].imag());
}

void write_csv_slice(const std::filesystem::path& path, const RealField& f, int axis) {
    auto os = open_csv(path);
    os << "x,value\n";
    for (std::size_t i : centre_line(f.grid, axis))
        os << fmt::format("{:.17g},{:.17g}\n", node_coordinate(f.grid, i, axis), f.values[i]);
}

void write_csv_slice(const std::filesystem::path& path, const VectorField& f, int axis) {
    auto os = open_csv(path);
    os << "x";
    for (int a = 0; a < f.grid.n; ++a) os << ",s" << a;
    os << "\n";
    for (std::size_t i : centre_line(f.grid, axis)) {
        os << fmt::format("{:.17g}", node_coordinate(f.grid, i, axis));
        for (const auto& c : f.components) os << fmt::format(",{:.17g}", c.values[i]);
        os << "\n";
    }
}

}  // namespace hwave
