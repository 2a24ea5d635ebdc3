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

#include "hwave/cli/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "hwave/core/checksum.hpp"

#ifndef HWAVE_VERSION
#define HWAVE_VERSION "0.0.0"
#endif

namespace hwave::cli {

namespace fs = std::filesystem;
using nlohmann::json;

const char* artifact_version() { return HWAVE_VERSION; }

namespace {

std::string stamp(std::chrono::system_clock::time_point t) {
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(tt));
}

}  // namespace

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<FileEntry> inventory(const fs::path& dir, const std::string& exclude) {
    std::vector<FileEntry> out;
    if (!fs::exists(dir)) return out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        const std::string rel = fs::relative(e.path(), dir).generic_string();
        if (rel == exclude) continue;
        out.push_back({rel, e.file_size(), sha256_file(e.path())});
    }
    std::sort(out.begin(), out.end(), [](const FileEntry& a, const FileEntry& b) { return a.path < b.path; });
    return out;
}

Manifest::Manifest(fs::path out_dir, std::string subcommand, std::string config_text)
    : dir_(std::move(out_dir)),
      subcommand_(std::move(subcommand)),
      config_(std::move(config_text)),
      start_(std::chrono::system_clock::now()) {}

void Manifest::write(int exit_code, const std::string& error) {
    fs::create_directories(dir_);
    json stages = json::array();
    for (const auto& s : stages_)
        stages.push_back({{"name", s.name}, {"status", s.status}, {"seconds", s.seconds}, {"detail", s.detail}});
    json files = json::array();
    for (const auto& f : inventory(dir_)) files.push_back({{"path", f.path}, {"bytes", f.bytes}, {"sha256", f.sha256}});
    json config = config_.empty() ? json(nullptr) : json::parse(config_, nullptr, false);
    json m{{"artifact", "hwave"},
           {"version", artifact_version()},
           {"subcommand", subcommand_},
           {"config", config},
           {"config_sha256", sha256_hex(config_)},
           {"started", stamp(start_)},
           {"finished", stamp(std::chrono::system_clock::now())},
           {"exit_code", exit_code},
           {"error", error},
           {"stages", stages},
           {"warnings", warnings_},
           {"files", files}};
    write_text(dir_ / "manifest.json", m.dump(2) + "\n");
}

}  // namespace hwave::cli
