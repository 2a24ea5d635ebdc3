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

#include "hwave/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "hwave/core/error.hpp"

namespace hwave::cli {

using nlohmann::json;

ConfigError::ConfigError(const std::string& f, int l, const std::string& what)
    : std::runtime_error(l > 0 ? fmt::format("config line {}: {}: {}", l, f, what)
                               : fmt::format("config: {}: {}", f.empty() ? "<root>" : f, what)),
      field(f),
      line(l) {}

std::map<std::string, int> key_lines(const std::string& text) {
    struct Frame {
        bool object;
        std::string key;
        int index = 0;
        bool expect_key = true;
    };
    std::map<std::string, int> out;
    std::vector<Frame> st;
    int line = 1;
    auto path_with = [&](const std::string& last) {
        std::string p;
        for (std::size_t i = 0; i + 1 < st.size(); ++i)
            p += "/" + (st[i].object ? st[i].key : std::to_string(st[i].index));
        return p + "/" + last;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        switch (c) {
            case '\n': ++line; break;
            case '{': st.push_back({true, {}}); break;
            case '[': st.push_back({false, {}}); break;
            case '}':
            case ']':
                if (!st.empty()) st.pop_back();
                break;
            case ',':
                if (!st.empty()) {
                    if (st.back().object)
                        st.back().expect_key = true;
                    else
                        ++st.back().index;
                }
                break;
            case ':':
                if (!st.empty()) st.back().expect_key = false;
                break;
            case '"': {
                std::string s;
                for (++i; i < text.size() && text[i] != '"'; ++i) {
                    if (text[i] == '\\' && i + 1 < text.size()) ++i;
                    s += text[i];
                }
                if (!st.empty() && st.back().object && st.back().expect_key) {
                    st.back().key = s;
                    out.emplace(path_with(s), line);
                }
                break;
            }
            default: break;
        }
    }
    return out;
}

namespace {

// Walks one JSON object, remembering which keys were read so that
// leftovers can be reported as unknown fields.
class Section {
public:
    Section(const json& j, std::string path, const std::map<std::string, int>& lines)
        : j_(j), path_(std::move(path)), lines_(lines) {
        if (!j_.is_object()) fail("", "expected an object");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        const std::string p = key.empty() ? path_ : path_ + "/" + key;
        throw ConfigError(dotted(p), line_of(p), what);
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    Section sub(const std::string& key) {
        used_.insert(key);
        return Section(j_.at(key), path_ + "/" + key, lines_);
    }

    void number(const std::string& key, double& dst, bool allow_null_inf = false) {
        if (!take(key)) return;
        const json& v = j_.at(key);
        if (allow_null_inf && v.is_null()) {
            dst = kInfinity;
            return;
        }
        if (!v.is_number()) fail(key, allow_null_inf ? "expected a number or null" : "expected a number");
        dst = v.get<double>();
        if (!std::isfinite(dst)) fail(key, "must be finite");
    }

    void integer(const std::string& key, int& dst) {
        if (!take(key)) return;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) fail(key, "expected an integer");
        dst = v.get<int>();
    }

    void boolean(const std::string& key, bool& dst) {
        if (!take(key)) return;
        if (!j_.at(key).is_boolean()) fail(key, "expected true or false");
        dst = j_.at(key).get<bool>();
    }

    void string(const std::string& key, std::string& dst) {
        if (!take(key)) return;
        if (!j_.at(key).is_string()) fail(key, "expected a string");
        dst = j_.at(key).get<std::string>();
    }

    void numbers(const std::string& key, std::vector<double>& dst) {
        if (!take(key)) return;
        const json& v = j_.at(key);
        if (!v.is_array()) fail(key, "expected an array of numbers");
        dst.clear();
        for (const auto& x : v) {
            if (!x.is_number()) fail(key, "expected an array of numbers");
            dst.push_back(x.get<double>());
        }
    }

    void integers(const std::string& key, std::set<int>& dst) {
        if (!take(key)) return;
        const json& v = j_.at(key);
        if (!v.is_array()) fail(key, "expected an array of integers");
        dst.clear();
        for (const auto& x : v) {
            if (!x.is_number_integer()) fail(key, "expected an array of integers");
            dst.insert(x.get<int>());
        }
    }

    // Every key must have been consumed.
    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key())) fail(it.key(), "unknown field");
    }

    int line_of(std::string p) const {
        while (!p.empty()) {
            if (auto it = lines_.find(p); it != lines_.end()) return it->second;
            p.erase(p.rfind('/'));
        }
        return 0;
    }

private:
    static std::string dotted(const std::string& p) {
        std::string s = p.empty() ? p : p.substr(1);
        for (auto& c : s)
            if (c == '/') c = '.';
        return s;
    }
    bool take(const std::string& key) {
        used_.insert(key);
        return j_.contains(key);
    }

    const json& j_;
    std::string path_;
    const std::map<std::string, int>& lines_;
    std::set<std::string> used_;
};

json inf_or(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json canonical_json(const RunConfig& c) {
    const auto& s = c.suite;
    json phase = c.datum.phase_amplitude == 0.0
                     ? json{{"kind", "zero"}}
                     : json{{"kind", "gaussian"}, {"amplitude", c.datum.phase_amplitude}, {"width", c.datum.phase_width}};
    return json{
        {"model", {{"n", c.model.n}, {"lambda", c.model.lambda}, {"gamma", c.model.gamma}, {"mu", c.model.mu}}},
        {"pair", {{"k", c.pair.k}, {"l", c.pair.l}}},
        {"grid", {{"points", c.grid.points}, {"half_width", c.grid.half_width}}},
        {"integrator",
         {{"dt_base", inf_or(c.integrator.dt_base)},
          {"dt_rel", inf_or(c.integrator.dt_rel)},
          {"cfl_safety", c.integrator.cfl_safety},
          {"eta", c.integrator.eta},
          {"tol_grad", c.integrator.tol_grad},
          {"tol_vort", c.integrator.tol_vort},
          {"blowup_factor", c.integrator.blowup_factor}}},
        {"quadrature",
         {{"tolerance", c.quadrature.tolerance},
          {"max_doublings", c.quadrature.max_doublings},
          {"max_tail_panels", c.quadrature.max_tail_panels}}},
        {"datum",
         {{"amplitude", c.datum.amplitude},
          {"norm_target", c.datum.norm_target},
          {"width", c.datum.width},
          {"center", c.datum.center},
          {"phase", phase}}},
        {"schedule",
         {{"t0", c.t0_schedule},
          {"T", c.T},
          {"T_max", c.T_max},
          {"sample_ratio", c.sample_ratio},
          {"c_cal", c.c_cal},
          {"calibrate", c.calibrate},
          {"max_retries", c.max_retries},
          {"allow_override", c.allow_override},
          {"richardson", c.richardson}}},
        {"profiles", {{"lr", c.profile_lr}}},
        {"windows", {{"fit", {c.window.t_min, c.window.t_max}}}},
        {"output", {{"snapshots", c.snapshots}}},
        {"aux",
         {{"t_start", c.aux.t_start},
          {"t_end", c.aux.t_end},
          {"sample_ratio", c.aux.sample_ratio},
          {"snapshots", c.aux.snapshots}}},
        {"cross_check",
         {{"sigma_amplitude", c.cross_check.sigma_amplitude},
          {"sigma_width", c.cross_check.sigma_width},
          {"direct_dt_rel", c.cross_check.direct_dt_rel}}},
        {"extract", {{"trajectory", c.extract.trajectory.generic_string()}, {"tolerance", inf_or(c.extract.tolerance)}}},
        {"suite",
         {{"criteria", s.criteria},
          {"identity_times", s.identity_times},
          {"identity_grid_points", s.identity_grid_points},
          {"rate_gammas", s.rate_gammas},
          {"rate_lambdas", s.rate_lambdas},
          {"rate_t0", s.rate_t0},
          {"rate_T", s.rate_T},
          {"rate_T_max", s.rate_T_max},
          {"profile_gamma", s.profile_gamma},
          {"cauchy_schedule", s.cauchy_schedule},
          {"cauchy_T", s.cauchy_T},
          {"cauchy_T_max", s.cauchy_T_max},
          {"roundtrip_phase_amplitude", s.roundtrip_phase_amplitude},
          {"roundtrip_lambda0_t0", s.roundtrip_lambda0_t0},
          {"gauge_amplitude", s.gauge_amplitude},
          {"gauge_width", s.gauge_width},
          {"robust_gamma", s.robust_gamma},
          {"robust_eta", s.robust_eta},
          {"tolerances",
           {{"rate", s.tol_rate}, {"profile", s.tol_profile}, {"gauge", s.tol_gauge}, {"robust", s.tol_robust}}}}},
        {"workers", c.workers},
    };
}

}  // namespace

WaveOpConfig RunConfig::wave_operator() const {
    WaveOpConfig w;
    w.t0_schedule = t0_schedule;
    w.T = T;
    w.T_max = T_max;
    w.sample_ratio = sample_ratio;
    w.integrator = integrator;
    w.integrator.pair = pair;
    w.quadrature = quadrature;
    w.c_cal = c_cal;
    w.calibrate = calibrate;
    w.max_retries = max_retries;
    w.allow_override = allow_override;
    w.richardson = richardson;
    w.keep_limit_snapshots = snapshots;
    w.profile_lr = profile_lr;
    w.workers = workers;
    return w;
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError("", line, "malformed JSON");
    }
    const auto lines = key_lines(text);
    RunConfig c;
    Section top(root, "", lines);

    if (top.has("model")) {
        Section s = top.sub("model");
        s.integer("n", c.model.n);
        s.number("lambda", c.model.lambda);
        s.number("gamma", c.model.gamma);
        s.number("mu", c.model.mu);
        s.done();
    }
    if (top.has("pair")) {
        Section s = top.sub("pair");
        s.integer("k", c.pair.k);
        s.integer("l", c.pair.l);
        s.done();
    }
    c.grid.n = c.model.n;
    if (top.has("grid")) {
        Section s = top.sub("grid");
        s.integer("points", c.grid.points);
        s.number("half_width", c.grid.half_width);
        s.done();
    }
    if (top.has("integrator")) {
        Section s = top.sub("integrator");
        s.number("dt_base", c.integrator.dt_base, true);
        s.number("dt_rel", c.integrator.dt_rel, true);
        s.number("cfl_safety", c.integrator.cfl_safety);
        s.number("eta", c.integrator.eta);
        s.number("tol_grad", c.integrator.tol_grad);
        s.number("tol_vort", c.integrator.tol_vort);
        s.number("blowup_factor", c.integrator.blowup_factor);
        s.done();
    }
    if (top.has("quadrature")) {
        Section s = top.sub("quadrature");
        s.number("tolerance", c.quadrature.tolerance);
        s.integer("max_doublings", c.quadrature.max_doublings);
        s.integer("max_tail_panels", c.quadrature.max_tail_panels);
        s.done();
    }
    if (top.has("datum")) {
        Section s = top.sub("datum");
        s.number("amplitude", c.datum.amplitude);
        s.number("norm_target", c.datum.norm_target);
        s.number("width", c.datum.width);
        s.numbers("center", c.datum.center);
        if (!c.datum.center.empty() && static_cast<int>(c.datum.center.size()) != c.model.n)
            s.fail("center", fmt::format("expected {} coordinates", c.model.n));
        if (s.has("phase")) {
            Section ph = s.sub("phase");
            std::string kind = "zero";
            ph.string("kind", kind);
            if (kind == "zero") {
                c.datum.phase_amplitude = 0.0;
            } else if (kind == "gaussian") {
                ph.number("amplitude", c.datum.phase_amplitude);
                ph.number("width", c.datum.phase_width);
                if (!(c.datum.phase_width > 0.0)) ph.fail("width", "must be > 0");
            } else {
                ph.fail("kind", "expected \"zero\" or \"gaussian\"");
            }
            ph.done();
        }
        s.done();
    }
    if (top.has("schedule")) {
        Section s = top.sub("schedule");
        s.numbers("t0", c.t0_schedule);
        s.number("T", c.T);
        s.number("T_max", c.T_max);
        s.number("sample_ratio", c.sample_ratio);
        s.number("c_cal", c.c_cal);
        s.boolean("calibrate", c.calibrate);
        s.integer("max_retries", c.max_retries);
        s.boolean("allow_override", c.allow_override);
        s.boolean("richardson", c.richardson);
        s.done();
    }
    if (top.has("profiles")) {
        Section s = top.sub("profiles");
        s.number("lr", c.profile_lr);
        s.done();
    }
    if (top.has("windows")) {
        Section s = top.sub("windows");
        std::vector<double> w{c.window.t_min, c.window.t_max};
        s.numbers("fit", w);
        if (w.size() != 2 || !(w[0] > 0.0 && w[1] > w[0])) s.fail("fit", "expected [t_min, t_max] with 0 < t_min < t_max");
        c.window = {w[0], w[1]};
        s.done();
    }
    if (top.has("output")) {
        Section s = top.sub("output");
        s.boolean("snapshots", c.snapshots);
        s.done();
    }
    if (top.has("aux")) {
        Section s = top.sub("aux");
        s.number("t_start", c.aux.t_start);
        s.number("t_end", c.aux.t_end);
        s.number("sample_ratio", c.aux.sample_ratio);
        s.boolean("snapshots", c.aux.snapshots);
        if (!(c.aux.t_start >= 1.0)) s.fail("t_start", "must be >= 1");
        if (!(c.aux.t_end >= 1.0) || c.aux.t_end == c.aux.t_start) s.fail("t_end", "must be >= 1 and differ from t_start");
        if (!(c.aux.sample_ratio > 1.0)) s.fail("sample_ratio", "must be > 1");
        s.done();
    }
    if (top.has("cross_check")) {
        Section s = top.sub("cross_check");
        s.number("sigma_amplitude", c.cross_check.sigma_amplitude);
        s.number("sigma_width", c.cross_check.sigma_width);
        s.number("direct_dt_rel", c.cross_check.direct_dt_rel);
        if (!(c.cross_check.sigma_width > 0.0)) s.fail("sigma_width", "must be > 0");
        if (!(c.cross_check.direct_dt_rel > 0.0)) s.fail("direct_dt_rel", "must be > 0");
        s.done();
    }
    if (top.has("extract")) {
        Section s = top.sub("extract");
        std::string p;
        s.string("trajectory", p);
        if (!p.empty()) c.extract.trajectory = std::filesystem::path(p).is_absolute() ? std::filesystem::path(p) : base_dir / p;
        s.number("tolerance", c.extract.tolerance, true);
        s.done();
    }
    AcceptanceConfig& su = c.suite;
    if (top.has("suite")) {
        Section s = top.sub("suite");
        c.suite_criteria_given = s.has("criteria");
        s.integers("criteria", su.criteria);
        s.numbers("identity_times", su.identity_times);
        s.integer("identity_grid_points", su.identity_grid_points);
        s.numbers("rate_gammas", su.rate_gammas);
        s.numbers("rate_lambdas", su.rate_lambdas);
        s.number("rate_t0", su.rate_t0);
        s.number("rate_T", su.rate_T);
        s.number("rate_T_max", su.rate_T_max);
        s.number("profile_gamma", su.profile_gamma);
        s.numbers("cauchy_schedule", su.cauchy_schedule);
        s.number("cauchy_T", su.cauchy_T);
        s.number("cauchy_T_max", su.cauchy_T_max);
        s.number("roundtrip_phase_amplitude", su.roundtrip_phase_amplitude);
        s.number("roundtrip_lambda0_t0", su.roundtrip_lambda0_t0);
        s.number("gauge_amplitude", su.gauge_amplitude);
        s.number("gauge_width", su.gauge_width);
        s.number("robust_gamma", su.robust_gamma);
        s.number("robust_eta", su.robust_eta);
        if (s.has("tolerances")) {
            Section t = s.sub("tolerances");
            t.number("rate", su.tol_rate);
            t.number("profile", su.tol_profile);
            t.number("gauge", su.tol_gauge);
            t.number("robust", su.tol_robust);
            t.done();
        }
        s.done();
    }
    top.integer("workers", c.workers);
    top.done();

    su.grid = c.grid;
    su.pair = c.pair;
    su.lambda = c.model.lambda;
    su.mu = c.model.mu;
    su.datum = c.datum;
    su.integrator = c.integrator;
    su.quadrature = c.quadrature;
    su.window = c.window;
    su.profile_lr = c.profile_lr;
    su.workers = c.workers;

    // Library-level validation, reported against the owning section.
    auto check = [&](const char* section, auto&& fn) {
        try {
            fn();
        } catch (const ParameterError& e) {
            throw ConfigError(section, top.line_of(std::string("/") + section), e.what());
        }
    };
    check("model", [&] { c.model.validate_for_solver(); });
    check("grid", [&] { c.grid.validate(); });
    check("integrator", [&] { c.integrator.validate(); });
    check("schedule", [&] { c.wave_operator().validate(); });
    check("suite", [&] { su.validate(); });

    c.canonical = canonical_json(c).dump(2) + "\n";
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", 0, "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

void check_run_config(const RunConfig& cfg) {
    const auto adm = check_admissible(cfg.model.n, cfg.model.mu, cfg.pair.k, cfg.pair.l);
    if (!adm.admissible) {
        std::string clauses;
        for (const auto& v : adm.violations) clauses += (clauses.empty() ? "" : "; ") + v;
        throw ConfigError("pair", 0,
                          fmt::format("(k, l) = ({}, {}) is not admissible for n = {}, mu = {:g}: violates {}",
                                      cfg.pair.k, cfg.pair.l, cfg.model.n, cfg.model.mu, clauses));
    }
    const DatumChecks dc = check_gaussian_datum(cfg.datum, cfg.grid);
    if (!dc.width_ok || !dc.mass_ok) {
        std::string msg;
        for (const auto& m : dc.messages) msg += (msg.empty() ? "" : "; ") + m;
        throw ConfigError("datum", 0, msg);
    }
}

}  // namespace hwave::cli
