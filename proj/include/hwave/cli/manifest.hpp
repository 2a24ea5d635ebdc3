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

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

namespace hwave::cli {

struct StageRecord {
    std::string name;
    std::string status;  // "ok", "failed", "skipped"
    double seconds = 0.0;
    std::string detail;
};

struct FileEntry {
    std::string path;  // relative, '/'-separated
    std::uintmax_t bytes = 0;
    std::string sha256;
};

// Run manifest written as manifest.json in the output directory. The file
// inventory is taken when write() is called and covers every regular file
// below the directory except the manifest itself.
class Manifest {
public:
    Manifest(std::filesystem::path out_dir, std::string subcommand, std::string config_text);

    void stage(StageRecord r) { stages_.push_back(std::move(r)); }
    void warn(std::string w) { warnings_.push_back(std::move(w)); }
    void write(int exit_code, const std::string& error = {});

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::string subcommand_;
    std::string config_;
    std::chrono::system_clock::time_point start_;
    std::vector<StageRecord> stages_;
    std::vector<std::string> warnings_;
};

std::vector<FileEntry> inventory(const std::filesystem::path& dir, const std::string& exclude = "manifest.json");

void write_text(const std::filesystem::path& path, const std::string& text);

const char* artifact_version();

}  // namespace hwave::cli
