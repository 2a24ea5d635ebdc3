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

// hwave: command-line driver. Every subcommand takes a JSON run
// configuration and an output directory, and always leaves a manifest.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hwave/cli/config.hpp"
#include "hwave/cli/manifest.hpp"
#include "hwave/core/checksum.hpp"
#include "hwave/core/error.hpp"
#include "hwave/dynamics/rescaled.hpp"
#include "hwave/dynamics/trajectory_io.hpp"
#include "hwave/rates/acceptance.hpp"
#include "hwave/spectral/field_io.hpp"
#include "hwave/spectral/gaussian.hpp"
#include "hwave/spectral/ops.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hwave;
using hwave::cli::Manifest;
using hwave::cli::RunConfig;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kGated = 3 };

template <class Field>
void put_field(const fs::path& path, const Field& f) {
    fs::create_directories(path.parent_path());
    write_field(path, f);
}

std::string t0_name(double t0) { return fmt::format("{:g}", t0); }

// trajectory.csv plus snapshots/<row>_{w,s,phi}.bin for rows that carry one.
void write_trajectory_dir(const fs::path& dir, const TrajectoryRecord& rec) {
    fs::create_directories(dir);
    write_trajectory_csv(dir / "trajectory.csv", rec);
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        const auto& snap = rec.samples[i].snapshot;
        if (!snap) continue;
        const fs::path base = dir / "snapshots";
        fs::create_directories(base);
        const std::string stem = fmt::format("{:04d}", i);
        put_field(base / (stem + "_w.bin"), snap->w);
        put_field(base / (stem + "_s.bin"), snap->s);
        if (snap->phi) put_field(base / (stem + "_phi.bin"), *snap->phi);
    }
}

TrajectoryRecord read_trajectory_dir(const fs::path& dir) {
    TrajectoryRecord rec = read_trajectory_csv(dir / "trajectory.csv");
    for (std::size_t i = 0; i < rec.samples.size(); ++i) {
        const fs::path stem = dir / "snapshots" / fmt::format("{:04d}", i);
        const fs::path w = stem.string() + "_w.bin", s = stem.string() + "_s.bin", phi = stem.string() + "_phi.bin";
        if (!fs::exists(w) || !fs::exists(s)) continue;
        AuxState st{rec.samples[i].t, read_complex_field(w), read_vector_field(s), std::nullopt};
        if (fs::exists(phi)) st.phi = read_real_field(phi);
        rec.samples[i].snapshot = std::move(st);
    }
    return rec;
}

std::string differences_csv(const WaveOpRun& run) {
    std::string out = "t0_a,t0_b,value,t_at_sup\n";
    for (const auto& d : run.differences)
        out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", d.t0_a, d.t0_b, d.value, d.t_at_sup);
    return out;
}

json run_summary(const WaveOpRun& run) {
    json traj = json::array();
    for (std::size_t i = 0; i < run.trajectories.size(); ++i) {
        const auto& tr = run.trajectories[i];
        traj.push_back({{"t0", run.t0_schedule[i]},
                        {"steps", tr.steps},
                        {"failed", tr.failed},
                        {"failure", tr.failure},
                        {"flags", tr.flags}});
    }
    return json{{"t0_schedule", run.t0_schedule},
                {"T", run.T},
                {"T_max", run.T_max},
                {"heuristic_T", std::isfinite(run.heuristic_T) ? json(run.heuristic_T) : json(nullptr)},
                {"c_cal", run.c_cal},
                {"calibration_retries", run.calibration_retries},
                {"calibration_outcome", run.calibration_outcome},
                {"divergence_flag", run.divergence_flag},
                {"profile_lr", run.profile_lr},
                {"warnings", run.warnings},
                {"trajectories", traj}};
}

// Per-t0 CSVs, differences, run summary; the limit trajectory also in
// limit/ (with snapshots when kept) and its fields at T.
void write_run_dir(const fs::path& dir, const WaveOpRun& run) {
    fs::create_directories(dir);
    for (std::size_t i = 0; i < run.trajectories.size(); ++i) {
        TrajectoryRecord plain = run.trajectories[i];
        for (auto& s : plain.samples) s.snapshot.reset();
        write_trajectory_csv(dir / fmt::format("trajectory_t0_{}.csv", t0_name(run.t0_schedule[i])), plain);
    }
    cli::write_text(dir / "differences.csv", differences_csv(run));
    cli::write_text(dir / "run.json", run_summary(run).dump(2) + "\n");
    put_field(dir / "datum" / "w_plus.bin", run.datum.w_plus);
    put_field(dir / "datum" / "phi02_1.bin", run.datum.phi02_at_1);
    if (const TrajectorySample* s = run.limit().at(run.T); s && s->snapshot) {
        put_field(dir / "limit_w_T.bin", s->snapshot->w);
        put_field(dir / "limit_s_T.bin", s->snapshot->s);
        if (s->snapshot->phi) put_field(dir / "limit_phi_T.bin", *s->snapshot->phi);
    }
}

void write_verdicts(const fs::path& dir, const std::vector<Verdict>& v, const RunConfig& cfg) {
    write_verdicts_csv(dir / "verdicts.csv", v);
    std::map<std::string, std::string> sums;
    for (const auto& f : cli::inventory(dir))
        if (f.path != "verdicts.csv" && f.path != "verdicts.json") sums[f.path] = f.sha256;
    write_verdicts_json(dir / "verdicts.json", v, cfg.canonical, sums);
}

void log_verdicts(const std::vector<Verdict>& v) {
    for (const auto& x : v)
        spdlog::info("{} {} theory={:.4g} fitted={:.4g} tol={:.3g}{}", x.pass ? "PASS" : "FAIL", x.claim_id, x.theory,
                     x.fitted, x.tolerance, x.r2 ? fmt::format(" r2={:.3f}", *x.r2) : "");
}

int verdict_exit(const std::vector<Verdict>& v) {
    for (const auto& x : v)
        if (!x.pass) return kGated;
    return kOk;
}

// ---- subcommands

int simulate_aux(const RunConfig& cfg, Manifest& m) {
    const AsymptoticDatum d = make_gaussian_datum(cfg.datum, cfg.grid, cfg.pair);
    const AuxState seed = seed_at_t0(d, cfg.aux.t_start, cfg.model);
    IntegratorConfig ic = cfg.integrator;
    ic.pair = cfg.pair;
    ic.keep_snapshots = cfg.aux.snapshots;
    ic.forcing_reference = d.w_plus;
    ic.sample_times = geometric_samples(std::min(cfg.aux.t_start, cfg.aux.t_end),
                                        std::max(cfg.aux.t_start, cfg.aux.t_end), cfg.aux.sample_ratio);
    const auto c0 = std::chrono::steady_clock::now();
    const TrajectoryRecord rec = integrate_aux(seed, cfg.aux.t_end, ic, cfg.model);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    write_trajectory_dir(m.dir(), rec);
    for (const auto& f : rec.flags) m.warn(f);
    m.stage({"integrate", rec.failed ? "failed" : "ok", secs, fmt::format("{} steps", rec.steps)});
    if (rec.failed) {
        spdlog::error("integration failed: {}", rec.failure);
        return kNumerical;
    }
    return kOk;
}

int wave_operator(const RunConfig& cfg, Manifest& m) {
    const AsymptoticDatum d = make_gaussian_datum(cfg.datum, cfg.grid, cfg.pair);
    WaveOpConfig wc = cfg.wave_operator();
    const bool keep = wc.keep_limit_snapshots;
    wc.keep_limit_snapshots = true;  // the limit fields at T are always written
    const auto c0 = std::chrono::steady_clock::now();
    WaveOpRun run = wave_operator_W(d, cfg.model, wc);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    write_run_dir(m.dir(), run);
    if (!keep) {
        TrajectoryRecord& lim = run.trajectories.back();
        if (const TrajectorySample* s = lim.at(run.T)) {
            const auto keep_t = s->t;
            for (auto& smp : lim.samples)
                if (smp.t != keep_t) smp.snapshot.reset();
        }
    }
    write_trajectory_dir(m.dir() / "limit", run.limit());
    for (const auto& w : run.warnings) m.warn(w);
    for (const auto& dd : run.differences)
        spdlog::info("Cauchy difference t0 {:g} -> {:g}: {:.4e}", dd.t0_a, dd.t0_b, dd.value);
    m.stage({"wave_operator", run.divergence_flag ? "failed" : "ok", secs, run.calibration_outcome});
    for (const auto& tr : run.trajectories)
        if (tr.failed) {
            spdlog::error("trajectory failed: {}", tr.failure);
            return kNumerical;
        }
    if (run.divergence_flag) {
        spdlog::error("divergence flag raised: Cauchy differences not strictly decreasing");
        return kNumerical;
    }
    return kOk;
}

int extract_asymptotics(const RunConfig& cfg, Manifest& m) {
    if (cfg.extract.trajectory.empty())
        throw cli::ConfigError("extract.trajectory", 0, "required for extract-asymptotics");
    const TrajectoryRecord rec = read_trajectory_dir(cfg.extract.trajectory);
    const auto c0 = std::chrono::steady_clock::now();
    const ExtractedDatum ex = extract_datum(rec, cfg.model, cfg.pair, cfg.quadrature, cfg.extract.tolerance);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    put_field(m.dir() / "w_plus.bin", ex.w_plus);
    put_field(m.dir() / "s02_1.bin", ex.s02_at_1);
    write_csv_slice(m.dir() / "w_plus_slice.csv", ex.w_plus);

    // Comparison against the datum the configuration describes.
    const AsymptoticDatum d = make_gaussian_datum(cfg.datum, cfg.grid, cfg.pair);
    const double wn = sobolev_norm(d.w_plus, cfg.pair.k - 1);
    const double sn = x_norm(d.s02_at_1(), cfg.pair.l - 1);
    const double dw = sobolev_norm(ex.w_plus - d.w_plus, cfg.pair.k - 1);
    const double ds = x_norm(ex.s02_at_1 - d.s02_at_1(), cfg.pair.l - 1);
    const json out{{"t_extract", ex.t_extract},
                   {"w_error_proxy", ex.w_error_proxy},
                   {"tail_norm", ex.tail_norm},
                   {"tail_exponent", ex.tail_exponent},
                   {"flagged", ex.flagged},
                   {"note", ex.note},
                   {"vs_config_datum",
                    {{"w_plus_abs", dw},
                     {"w_plus_rel", wn > 0.0 ? json(dw / wn) : json(nullptr)},
                     {"s02_abs", ds},
                     {"s02_rel", sn > 0.0 ? json(ds / sn) : json(nullptr)}}}};
    cli::write_text(m.dir() / "extraction.json", out.dump(2) + "\n");
    if (ex.flagged) m.warn("extraction flagged: " + ex.note);
    m.stage({"extract", "ok", secs, fmt::format("read off at t = {:g}", ex.t_extract)});
    return kOk;
}

int run_suite(const RunConfig& cfg, Manifest& m, std::set<int> criteria) {
    AcceptanceConfig ac = cfg.suite;
    ac.criteria = std::move(criteria);
    const auto c0 = std::chrono::steady_clock::now();
    const AcceptanceResult res = run_acceptance_suite(ac, [](const std::string& s) { spdlog::info("{}", s); });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    if (!res.trajectories.empty()) fs::create_directories(m.dir() / "trajectories");
    for (const auto& [name, rec] : res.trajectories) write_trajectory_csv(m.dir() / "trajectories" / (name + ".csv"), rec);
    for (const auto& [label, run] : res.runs) {
        cli::write_text(m.dir() / "runs" / label / "differences.csv", differences_csv(run));
        cli::write_text(m.dir() / "runs" / label / "run.json", run_summary(run).dump(2) + "\n");
    }
    if (ac.criteria.count(1)) {
        const GaussianSymbol g{cplx(0.7, 0.2), cplx(0.8, 0.3), ac.grid.n};
        std::string csv = "t,gaussian_param_error,grid_rel_error\n";
        for (double t : ac.identity_times)
            csv += fmt::format("{:.17g},{:.17g},{:.17g}\n", t, gaussian_identity_error(t, g),
                               grid_identity_error(t, ac.grid.n, ac.identity_grid_points));
        cli::write_text(m.dir() / "identities.csv", csv);
    }
    write_verdicts(m.dir(), res.verdicts, cfg);
    for (const auto& w : res.warnings) m.warn(w);
    log_verdicts(res.verdicts);
    int pass = 0;
    for (const auto& v : res.verdicts) pass += v.pass ? 1 : 0;
    m.stage({"suite", res.all_pass() ? "ok" : "failed", secs,
             fmt::format("{}/{} verdicts pass", pass, res.verdicts.size())});
    return verdict_exit(res.verdicts);
}

int cross_check(const RunConfig& cfg, Manifest& m) {
    const AsymptoticDatum d = make_gaussian_datum(cfg.datum, cfg.grid, cfg.pair);
    GaugeFunction g;
    g.sigma = project_band(real_part(sample_gaussian(
        GaussianSymbol{cplx(cfg.cross_check.sigma_amplitude, 0.0),
                       cplx(1.0 / (cfg.cross_check.sigma_width * cfg.cross_check.sigma_width), 0.0), cfg.grid.n},
        cfg.grid)));
    WaveOpConfig wc = cfg.wave_operator();
    const FitWindow window{cfg.T, cfg.T_max};
    std::vector<Verdict> v;

    auto c0 = std::chrono::steady_clock::now();
    const GaugeReport gr = gauge_covariance_check(d, g, cfg.model, wc);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    if (gr.failed) throw NumericalError("gauge comparison: " + gr.failure);
    std::string csv = "t,v_discrepancy,phase_drift\n";
    for (std::size_t i = 0; i < gr.t.size(); ++i)
        csv += fmt::format("{:.17g},{:.17g},{:.17g}\n", gr.t[i], gr.v_discrepancy[i], gr.phase_drift[i]);
    cli::write_text(m.dir() / "gauge.csv", csv);
    v.push_back(bound_verdict("xc.gauge_v_discrepancy", 7, gr.max_discrepancy / gr.w_norm, 1e-3,
                              "max ||v - v'||_2 / ||w||_2"));
    v.push_back(exponent_verdict("xc.gauge_phase_drift", 7, -cfg.model.gamma,
                                 fit_power_law(gr.t, gr.phase_drift, window), cfg.suite.tol_gauge,
                                 "fit over [T, T_max]"));
    m.stage({"gauge", "ok", secs, fmt::format("{} common samples", gr.t.size())});

    // Direct solver against the v-representation of the constructed
    // solution, then continued down to t = 1.
    c0 = std::chrono::steady_clock::now();
    const OmegaResult om = omega_map(d.w_plus, cfg.model, wc);
    if (om.run.limit().failed) throw NumericalError("wave operator: " + om.run.limit().failure);
    const auto disc = cross_check_gauge(om.run.limit(), cfg.model, cfg.cross_check.direct_dt_rel);
    csv = "t,discrepancy,w_norm\n";
    double worst = 0.0;
    for (const auto& x : disc) {
        csv += fmt::format("{:.17g},{:.17g},{:.17g}\n", x.t, x.discrepancy, x.w_norm);
        worst = std::max(worst, x.discrepancy / x.w_norm);
    }
    cli::write_text(m.dir() / "direct.csv", csv);
    v.push_back(bound_verdict("xc.direct_solver_v_discrepancy", 7, worst, 1e-3,
                              "max ||v_direct - v_aux||_2 / ||w||_2"));
    if (cfg.model.mu < 2.0 && !om.v.empty()) {
        const ComplexField v1 = rescaled_nls_evolve(om.v.front(), om.t.front(), 1.0, cfg.model, cfg.cross_check.direct_dt_rel);
        put_field(m.dir() / "omega1_v1.bin", v1);
        const double m0 = lr_norm(om.v.front(), 2.0);
        v.push_back(bound_verdict("xc.omega1_mass", 2, std::abs(lr_norm(v1, 2.0) - m0) / m0, 1e-8,
                                  fmt::format("||v||_2 drift from t = {:g} to 1", om.t.front())));
    }
    secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    m.stage({"direct", "ok", secs, fmt::format("{} comparison times", disc.size())});

    v = sorted(std::move(v));
    write_verdicts(m.dir(), v, cfg);
    log_verdicts(v);
    return verdict_exit(v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hwave: long-range Hartree scattering experiments"};
    app.require_subcommand(1);
    std::string config_path, out_dir;
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "debug logging");
    const std::map<std::string, std::string> subs{
        {"simulate-aux", "integrate the auxiliary system from a free seed"},
        {"wave-operator", "construct W(datum) by seeding at a t0 schedule"},
        {"extract-asymptotics", "recover (w_plus, s02(1)) from a stored trajectory"},
        {"verify-rates", "run the acceptance suite (criteria 2-8 unless configured)"},
        {"check-identities", "operator identity checks (criterion 1)"},
        {"cross-check", "gauge covariance and direct-solver comparison"},
    };
    std::string chosen;
    for (const auto& [name, help] : subs) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
        s->add_option("output", out_dir, "output directory")->required();
        s->callback([&chosen, n = name] { chosen = n; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    auto sink = std::make_shared<spdlog::sinks::stderr_color_sink_mt>();
    spdlog::set_default_logger(std::make_shared<spdlog::logger>("hwave", sink));
    spdlog::set_pattern("[%H:%M:%S] %^%l%$ %v");
    spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

    try {
        // A previous run's directory (recognized by its manifest) is
        // replaced; anything else non-empty is left alone.
        if (fs::exists(out_dir) && !fs::is_empty(out_dir)) {
            if (!fs::exists(fs::path(out_dir) / "manifest.json")) {
                spdlog::error("output directory {} is not empty and holds no manifest; refusing to overwrite", out_dir);
                return kUsage;
            }
            fs::remove_all(out_dir);
        }
        fs::create_directories(out_dir);
    } catch (const std::exception& e) {
        spdlog::error("output directory {}: {}", out_dir, e.what());
        return kUsage;
    }

    RunConfig cfg;
    Manifest manifest(out_dir, chosen, "");
    int code = kOk;
    std::string error;
    try {
        cfg = cli::load_config(config_path);
        manifest = Manifest(out_dir, chosen, cfg.canonical);
        cli::write_text(fs::path(out_dir) / "config.json", cfg.canonical);
        cli::check_run_config(cfg);
        if (chosen == "simulate-aux")
            code = simulate_aux(cfg, manifest);
        else if (chosen == "wave-operator")
            code = wave_operator(cfg, manifest);
        else if (chosen == "extract-asymptotics")
            code = extract_asymptotics(cfg, manifest);
        else if (chosen == "verify-rates")
            code = run_suite(cfg, manifest,
                             cfg.suite_criteria_given ? cfg.suite.criteria : std::set<int>{2, 3, 4, 5, 6, 7, 8});
        else if (chosen == "check-identities")
            code = run_suite(cfg, manifest, {1});
        else if (chosen == "cross-check")
            code = cross_check(cfg, manifest);
    } catch (const cli::ConfigError& e) {
        error = e.what();
        code = kUsage;
    } catch (const ParameterError& e) {
        error = e.what();
        code = kUsage;
    } catch (const std::exception& e) {
        error = e.what();
        code = kNumerical;
    }
    if (!error.empty()) spdlog::error("{}", error);
    try {
        manifest.write(code, error);
    } catch (const std::exception& e) {
        spdlog::error("manifest: {}", e.what());
        if (code == kOk) code = kNumerical;
    }
    spdlog::info("exit {}", code);
    return code;
}
