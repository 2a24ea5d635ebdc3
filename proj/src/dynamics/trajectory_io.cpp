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

#include "hwave/dynamics/trajectory_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "hwave/core/error.hpp"

namespace hwave {

namespace {

std::string cell(double v) { return std::isfinite(v) ? fmt::format("{:.17g}", v) : std::string(); }
std::string cell(const std::optional<double>& v) { return v ? cell(*v) : std::string(); }

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

const std::vector<std::string>& trajectory_csv_columns() {
    static const std::vector<std::string> cols{
        "t",        "mass",     "norm_w_k",     "norm_w_km1",   "norm_s_l",   "norm_s_lm1",    "vort_max",
        "grad_gap", "err_w_plus_k", "err_s0_l", "err_s02_l", "err_prof_7_46", "err_prof_7_47"};
    return cols;
}

std::string trajectory_csv(const TrajectoryRecord& rec) {
    std::string out;
    const auto& cols = trajectory_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += '\n';
    for (const auto& s : rec.samples) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", cell(s.t), cell(s.mass), cell(s.norm_w_k),
                           cell(s.norm_w_km1), cell(s.norm_s_l), cell(s.norm_s_lm1), cell(s.vort_max),
                           cell(s.grad_gap), cell(s.err_w_plus_k), cell(s.err_s0_l), cell(s.err_s02_l),
                           cell(s.err_prof_a), cell(s.err_prof_b));
    }
    return out;
}

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& rec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << trajectory_csv(rec);
}

TrajectoryRecord read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open trajectory CSV " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParameterError(path.string() + ": empty file");
    const auto head = split(line);
    if (head != trajectory_csv_columns())
        throw ParameterError(path.string() + ":1: header does not match the trajectory schema");

    TrajectoryRecord rec;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != head.size())
            throw ParameterError(fmt::format("{}:{}: expected {} cells, found {}", path.string(), lineno,
                                             head.size(), f.size()));
        auto num = [&](std::size_t i) -> std::optional<double> {
            if (f[i].empty()) return std::nullopt;
            try {
                std::size_t used = 0;
                const double v = std::stod(f[i], &used);
                if (used != f[i].size()) throw std::invalid_argument("trailing");
                return v;
            } catch (const std::exception&) {
                throw ParameterError(fmt::format("{}:{}: column '{}' is not a number", path.string(), lineno,
                                                 head[i]));
            }
        };
        auto req = [&](std::size_t i) {
            auto v = num(i);
            if (!v)
                throw ParameterError(fmt::format("{}:{}: column '{}' must not be empty", path.string(), lineno,
                                                 head[i]));
            return *v;
        };
        TrajectorySample s;
        s.t = req(0);
        s.mass = req(1);
        s.norm_w_k = req(2);
        s.norm_w_km1 = req(3);
        s.norm_s_l = req(4);
        s.norm_s_lm1 = req(5);
        s.vort_max = req(6);
        s.grad_gap = num(7).value_or(std::numeric_limits<double>::quiet_NaN());
        s.err_w_plus_k = num(8);
        s.err_s0_l = num(9);
        s.err_s02_l = num(10);
        s.err_prof_a = num(11);
        s.err_prof_b = num(12);
        rec.has_phase = rec.has_phase || std::isfinite(s.grad_gap);
        rec.samples.push_back(std::move(s));
    }
    if (!rec.samples.empty()) rec.initial_mass = rec.samples.front().mass;
    return rec;
}

}  // namespace hwave
