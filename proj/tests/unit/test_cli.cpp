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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "hwave/cli/config.hpp"
#include "hwave/cli/manifest.hpp"
#include "hwave/core/checksum.hpp"

using namespace hwave;
using namespace hwave::cli;

namespace {

std::string error_of(const std::string& text) {
    try {
        check_run_config(parse_config(text));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("empty configuration resolves to the defaults") {
    const RunConfig c = parse_config("{}");
    CHECK(c.model == ModelParams{});
    CHECK(c.pair == AdmissiblePair{2, 2});
    CHECK(c.grid == GridSpec{3, 32, 16.0});
    CHECK(c.t0_schedule == std::vector<double>{100.0, 200.0, 400.0, 800.0});
    CHECK_NOTHROW(check_run_config(c));
    // The canonical echo is a fixed point.
    CHECK(parse_config(c.canonical).canonical == c.canonical);
}

TEST_CASE("fields are read into the run configuration") {
    const RunConfig c = parse_config(R"({
  "model": {"lambda": -1, "gamma": 0.6},
  "integrator": {"dt_base": null, "eta": 1e-5},
  "schedule": {"t0": [50, 100], "T": 5, "T_max": 40},
  "windows": {"fit": [10, 1000]}
})");
    CHECK(c.model.lambda == -1.0);
    CHECK(c.model.gamma == 0.6);
    CHECK(std::isinf(c.integrator.dt_base));
    CHECK(c.integrator.eta == 1e-5);
    const WaveOpConfig w = c.wave_operator();
    CHECK(w.t0_schedule == std::vector<double>{50.0, 100.0});
    CHECK(w.T == 5.0);
    CHECK(c.window.t_min == 10.0);
    CHECK(c.suite.grid == c.grid);
}

TEST_CASE("configuration errors name the field and line") {
    CHECK(error_of("{\n  \"model\": {\n    \"gamma\": \"x\"\n  }\n}") ==
          "config line 3: model.gamma: expected a number");
    CHECK(error_of("{\n  \"integrator\": {\n    \"bogus\": 1\n  }\n}") ==
          "config line 3: integrator.bogus: unknown field");
    const std::string malformed = error_of("{\n  \"model\": {\n    \"n\": 3,\n  }\n}");
    CHECK(malformed.find("line 4") != std::string::npos);
    CHECK(error_of("{\"model\": {\"gamma\": 1.5}}") == "config line 1: model: gamma must lie in (0, 1)");
}

TEST_CASE("inadmissible pair and datum are refused with the clause") {
    const std::string pair = error_of("{\"pair\": {\"k\": 2, \"l\": 1}}");
    CHECK(pair.find("l > n/2") != std::string::npos);
    CHECK(pair.find("k <= l") != std::string::npos);
    CHECK(error_of("{\"datum\": {\"width\": 0.5}}").find("below 4h") != std::string::npos);
}

TEST_CASE("key line scanner") {
    const auto m = key_lines("{\n  \"a\": {\n    \"b\": 1,\n    \"c\": [1, {\"d\": 2}]\n  },\n  \"e\": \"{\\\"x\\\"\"\n}");
    CHECK(m.at("/a") == 2);
    CHECK(m.at("/a/b") == 3);
    CHECK(m.at("/a/c") == 4);
    CHECK(m.at("/e") == 6);
}

TEST_CASE("manifest lists every output with its checksum") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hwave_test_manifest";
    fs::remove_all(dir);
    fs::create_directories(dir / "sub");
    write_text(dir / "a.txt", "alpha");
    write_text(dir / "sub" / "b.txt", "beta");

    Manifest m(dir, "check-identities", "{}");
    m.stage({"run", "ok", 0.5, ""});
    m.warn("something to note");
    m.write(0);

    const auto files = inventory(dir);
    REQUIRE(files.size() == 2);
    CHECK(files[0].path == "a.txt");
    CHECK(files[1].path == "sub/b.txt");
    CHECK(files[0].sha256 == sha256_hex("alpha"));

    std::ifstream in(dir / "manifest.json");
    const auto j = nlohmann::json::parse(in);
    CHECK(j["subcommand"] == "check-identities");
    CHECK(j["exit_code"] == 0);
    CHECK(j["config_sha256"] == sha256_hex("{}"));
    CHECK(j["files"].size() == 2);
    CHECK(j["warnings"][0] == "something to note");
    CHECK(j["version"] == artifact_version());
    fs::remove_all(dir);
}
