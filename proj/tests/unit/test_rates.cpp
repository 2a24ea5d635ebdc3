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

#include "hwave/core/checksum.hpp"
#include "hwave/core/error.hpp"
#include "hwave/rates/rates.hpp"

using namespace hwave;

TEST_CASE("sha256 of a known string") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("power-law fit recovers an exact exponent") {
    std::vector<double> t, v;
    for (double x = 10.0; x <= 1e5; x *= 2.0) {
        t.push_back(x);
        v.push_back(3.0 * std::pow(x, -0.7));
    }
    const RateFit f = fit_power_law(t, v, {1e2, 1e4});
    CHECK(f.exponent == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(f.r_squared == doctest::Approx(1.0));
    CHECK(f.sample_count == 6);  // 160 .. 5120
}

TEST_CASE("power-law fit rejects degenerate input") {
    const std::vector<double> t{100.0, 200.0, 400.0, 800.0};
    CHECK_THROWS_AS(fit_power_law(t, {1.0, 1.0, 0.0, 1.0}, {1e2, 1e4}), ParameterError);
    CHECK_THROWS_AS(fit_power_law(t, {1.0, 0.5, 0.25, 0.125}, {1e2, 5e2}), ParameterError);
    CHECK_NOTHROW(fit_power_law(t, {1.0, 0.5, 0.25, 0.125}, {1e2, 5e2}, 3));
}

TEST_CASE("verdict semantics") {
    RateFit f;
    f.exponent = -0.5;
    f.r_squared = 0.99;
    CHECK(exponent_verdict("a", 3, -0.6, f, 0.2).pass);
    CHECK_FALSE(exponent_verdict("a", 3, -0.8, f, 0.2).pass);
    f.r_squared = 0.5;
    CHECK_FALSE(exponent_verdict("a", 3, -0.5, f, 0.2).pass);

    Verdict up{"u", 5, VerdictKind::Upper, -0.5, -2.0, 0.2, 0.95, false, ""};
    CHECK(evaluate(up));
    up.fitted = -0.2;
    CHECK_FALSE(evaluate(up));

    CHECK(bound_verdict("b", 2, 1e-14, 1e-13).pass);
    CHECK_FALSE(bound_verdict("b", 2, 1e-12, 1e-13).pass);
    CHECK_FALSE(bound_verdict("b", 2, std::nan(""), 1e-13).pass);
    CHECK(flag_verdict("f", 5, true).fitted == 1.0);
    CHECK_FALSE(flag_verdict("f", 5, false).pass);
}

TEST_CASE("verdict CSV and JSON") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "hwave_test_verdicts";
    fs::create_directories(dir);
    RateFit f;
    f.exponent = -0.7123456789;
    f.r_squared = 0.987654321;
    std::vector<Verdict> v{exponent_verdict("z.second", 3, -0.75, f, 0.2), bound_verdict("a.first", 2, 3e-15, 1e-13)};

    const std::string csv = verdicts_csv(v);
    CHECK(csv.rfind("claim_id,theory,fitted,tolerance,r2,pass\n", 0) == 0);
    CHECK(csv.find("a.first") < csv.find("z.second"));

    write_verdicts_csv(dir / "verdicts.csv", v);
    const auto back = read_verdicts_csv(dir / "verdicts.csv");
    REQUIRE(back.size() == 2);
    CHECK(back[0].claim_id == "a.first");
    CHECK_FALSE(back[0].r2.has_value());
    CHECK(back[1].fitted == f.exponent);
    CHECK(back[1].r2.value() == f.r_squared);
    CHECK(back[1].pass);

    const std::string cfg = "{\"model\": {}}";
    write_verdicts_json(dir / "verdicts.json", v, cfg, {{"verdicts.csv", sha256_file(dir / "verdicts.csv")}});
    std::ifstream in(dir / "verdicts.json");
    const auto j = nlohmann::json::parse(in);
    CHECK(j["config_sha256"] == sha256_hex(cfg));
    CHECK(j["all_pass"] == true);
    CHECK(j["verdicts"].size() == 2);
    CHECK(j["verdicts"][0]["r2"].is_null());
    CHECK(j["checksums"]["verdicts.csv"] == sha256_file(dir / "verdicts.csv"));
    fs::remove_all(dir);
}

TEST_CASE("trajectory columns skip absent values") {
    TrajectoryRecord r;
    for (int i = 0; i < 4; ++i) {
        TrajectorySample s;
        s.t = 10.0 * (i + 1);
        if (i % 2) s.err_s02_l = 1.0 / s.t;
        r.samples.push_back(s);
    }
    const Series s = column(r, Column::ErrS02);
    REQUIRE(s.t.size() == 2);
    CHECK(s.t[0] == 20.0);
    CHECK(s.v[1] == doctest::Approx(1.0 / 40.0));
    CHECK(column(r, Column::ProfA).t.empty());
}
