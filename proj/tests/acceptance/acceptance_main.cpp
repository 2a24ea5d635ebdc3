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

// Runs the acceptance suite at its default settings and prints one line
// per criterion. Exit status 0 only when every criterion passes. Verdicts
// and trajectory tables go to the output directory for later reporting.

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <filesystem>
#include <map>

#include "hwave/cli/config.hpp"
#include "hwave/cli/manifest.hpp"
#include "hwave/core/checksum.hpp"
#include "hwave/dynamics/trajectory_io.hpp"
#include "hwave/rates/acceptance.hpp"

namespace fs = std::filesystem;
using namespace hwave;

namespace {

const std::map<int, const char*> kTitles{
    {1, "operator identities"},
    {2, "conservation and structural invariants"},
    {3, "decay rates towards w_plus, s02 and s0"},
    {4, "modified-profile convergence"},
    {5, "Cauchy convergence of the wave operator"},
    {6, "round trip through extraction"},
    {7, "gauge covariance"},
    {8, "robustness to box size and regularization"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hwave acceptance suite"};
    std::string out = "acceptance_out";
    std::vector<int> only;
    bool quiet = false;
    app.add_option("--out", out, "output directory");
    app.add_option("--criteria", only, "run only these criteria")->delimiter(',')->check(CLI::Range(1, 8));
    app.add_flag("-q,--quiet", quiet, "no progress lines");
    CLI11_PARSE(app, argc, argv);

    const cli::RunConfig rc = cli::parse_config("{}");
    AcceptanceConfig cfg = rc.suite;
    if (!only.empty()) cfg.criteria = std::set<int>(only.begin(), only.end());

    const auto t0 = std::chrono::steady_clock::now();
    const AcceptanceResult r = run_acceptance_suite(cfg, [&](const std::string& m) {
        if (!quiet) fmt::print(stderr, "  {}\n", m);
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::remove_all(out);
    fs::create_directories(fs::path(out) / "trajectories");
    for (const auto& [label, tr] : r.trajectories)
        write_trajectory_csv(fs::path(out) / "trajectories" / (label + ".csv"), tr);
    write_verdicts_csv(fs::path(out) / "verdicts.csv", r.verdicts);
    std::map<std::string, std::string> sums;
    for (const auto& f : cli::inventory(out)) sums[f.path] = f.sha256;
    write_verdicts_json(fs::path(out) / "verdicts.json", r.verdicts, rc.canonical, sums);

    for (const auto& v : r.verdicts)
        if (!v.pass)
            fmt::print("  fail {}: fitted {:.4g}, theory {:.4g}, tolerance {:.3g}{}{}\n", v.claim_id, v.fitted,
                       v.theory, v.tolerance, v.r2 ? fmt::format(", r2 {:.3f}", *v.r2) : "",
                       v.note.empty() ? "" : " (" + v.note + ")");
    for (const auto& w : r.warnings) fmt::print("  warning: {}\n", w);

    const auto counts = r.by_criterion();
    for (int c : cfg.criteria) {
        const auto it = counts.find(c);
        const auto [pass, total] = it == counts.end() ? std::pair{0, 0} : it->second;
        const bool ok = total > 0 && pass == total;
        fmt::print("criterion {}: {} ({}/{} verdicts) {}\n", c, ok ? "PASS" : "FAIL", pass, total, kTitles.at(c));
    }
    fmt::print("acceptance: {} in {:.0f} s, verdicts in {}\n", r.all_pass() ? "PASS" : "FAIL", secs, out);
    return r.all_pass() ? 0 : 1;
}
