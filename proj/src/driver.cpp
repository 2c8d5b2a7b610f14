// Copyright 2026 The qdisorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdisorder/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "qdisorder/cache.hpp"
#include "qdisorder/errors.hpp"

namespace qdisorder {

namespace fs = std::filesystem;

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory " + dir.string());
}

void write_text(const fs::path &path, const std::string &text) {
    ensure_dir(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) throw IoError("cannot write " + path.string());
}

// Cache directory bookkeeping: cache.json pins the configuration hash.
void open_cache_dir(const RunConfig &cfg) {
    if (!cfg.cache) return;
    ensure_dir(*cfg.cache);
    const fs::path meta = *cfg.cache / "cache.json";
    const std::string want = hex64(config_hash(cfg));
    if (cfg.resume && fs::exists(meta)) {
        std::ifstream in(meta);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception &) {
            throw CacheCorruptionError("unreadable " + meta.string());
        }
        if (j.value("config_hash", std::string()) != want) {
            throw CacheCorruptionError("cache " + cfg.cache->string() + " was written for config hash " +
                                       j.value("config_hash", std::string("?")) + ", this run is " + want);
        }
        return;
    }
    write_text(meta, nlohmann::json{{"config_hash", want}, {"version", kVersion}}.dump(2) + "\n");
}

std::string flags_field(const QuenchedEstimate &e) {
    if (e.degenerate == 0 && e.failed == 0) return "ok";
    return "degenerate=" + std::to_string(e.degenerate) + ";failed=" + std::to_string(e.failed);
}

nlohmann::json estimate_json(const QuenchedEstimate &e) {
    return {{"mean", e.mean}, {"std_error", e.std_error}, {"n", e.n}};
}

nlohmann::json manifest(const RunConfig &cfg, const char *command, double wall_seconds, std::size_t computed,
                        const std::vector<std::string> &outputs) {
    return {
        {"tool", "qdisorder"},
        {"version", kVersion},
        {"command", command},
        {"config", to_json(cfg)},
        {"config_hash", hex64(config_hash(cfg))},
        {"seed", cfg.seed},
        {"wall_time_seconds", wall_seconds},
        {"realizations_computed", computed},
        {"outputs", outputs},
    };
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t SweepOutcome::simultaneous_delta() const {
    std::size_t total = 0;
    for (const auto &p : points) total += p.audit.simultaneous_delta();
    return total;
}

SweepOutcome compute_sweep(const RunConfig &cfg, std::size_t n_sites, std::ostream *log) {
    cfg.validate();
    open_cache_dir(cfg);
    SweepOutcome out;
    out.grid = cfg.mean_grid;
    out.pairs = resolve_pairs(cfg, n_sites);
    const std::uint64_t hash = config_hash(cfg);

    EnsembleConfig ec;
    ec.n_realizations = cfg.realizations;
    ec.seed = cfg.seed;
    ec.max_parallel = cfg.parallel;

    for (std::size_t k = 0; k < out.grid.size(); ++k) {
        const ChainModel model = model_at(cfg, out.grid[k], n_sites);
        std::optional<RealizationCache> cache;
        if (cfg.cache) {
            const std::string stem = "n" + std::to_string(n_sites) + "-point-" + std::to_string(k);
            const std::uint64_t key = fnv1a64(hex64(hash) + "/" + stem);
            cache.emplace(*cfg.cache / (stem + ".bin"), key, out.pairs.size() * kObservableCount, cfg.resume);
        }
        ec.compute_budget = cfg.stop_after > out.computed ? cfg.stop_after - out.computed : 0;
        QuenchedResult r = quenched_average(model, out.pairs, ec, cache ? &*cache : nullptr);
        out.computed += r.computed;
        if (log) {
            const auto &avg = r.pair_average;
            *log << "N=" << n_sites << " x=" << out.grid[k] << " delta=" << avg[kDelta].mean << " +- "
                 << avg[kDelta].std_error << " cadv=" << avg[kCadvA].mean << " +- " << avg[kCadvA].std_error
                 << " simultaneous_delta=" << r.audit.simultaneous_delta() << "\n";
        }
        out.points.push_back(std::move(r));
    }
    return out;
}

void write_curve_csv(const fs::path &path, const SweepOutcome &sweep) {
    std::string text =
        "x,pair,delta_mean,delta_stderr,cadv_mean,cadv_stderr,M_unclamped_mean,n,flags,"
        "cadv_unclamped_mean,cadv_b_mean,cadv_b_stderr\n";
    auto row = [&](double x, const std::string &label, const ObservableEstimates &e) {
        text += format_double(x) + "," + label + "," + format_double(e[kDelta].mean) + "," +
                format_double(e[kDelta].std_error) + "," + format_double(e[kCadvA].mean) + "," +
                format_double(e[kCadvA].std_error) + "," + format_double(e[kDeltaUnclamped].mean) + "," +
                std::to_string(e[kDelta].n) + "," + flags_field(e[kDelta]) + "," +
                format_double(e[kCadvUnclampedA].mean) + "," + format_double(e[kCadvB].mean) + "," +
                format_double(e[kCadvB].std_error) + "\n";
    };
    for (std::size_t k = 0; k < sweep.points.size(); ++k) {
        const QuenchedResult &r = sweep.points[k];
        for (std::size_t p = 0; p < r.pairs.size(); ++p) row(sweep.grid[k], pair_label(r.pairs[p]), r.per_pair[p]);
        if (r.pairs.size() > 1) row(sweep.grid[k], "avg", r.pair_average);
    }
    write_text(path, text);
}

nlohmann::json audit_json(const SweepOutcome &sweep) {
    nlohmann::json points = nlohmann::json::array();
    std::size_t cadv_total = 0;
    for (std::size_t k = 0; k < sweep.points.size(); ++k) {
        const QuenchedResult &r = sweep.points[k];
        nlohmann::json overlaps = nlohmann::json::array();
        for (const OverlapAudit &o : r.audit.overlaps) {
            overlaps.push_back({
                {"left", pair_label(o.left)},
                {"right", pair_label(o.right)},
                {"shared_site", o.shared_site + 1},
                {"realizations", o.realizations},
                {"simultaneous_delta", o.simultaneous_delta},
                {"simultaneous_cadv_shared_sender", o.simultaneous_cadv},
                {"delta_left", estimate_json(o.delta_left)},
                {"delta_right", estimate_json(o.delta_right)},
                {"cadv_left", estimate_json(o.cadv_left)},
                {"cadv_right", estimate_json(o.cadv_right)},
            });
        }
        cadv_total += r.audit.simultaneous_cadv();
        points.push_back({
            {"x", sweep.grid[k]},
            {"realizations", r.requested},
            {"failed", r.failed},
            {"degenerate", r.degenerate},
            {"simultaneous_delta", r.audit.simultaneous_delta()},
            {"simultaneous_cadv_shared_sender", r.audit.simultaneous_cadv()},
            {"overlaps", overlaps},
        });
    }
    return {
        {"simultaneous_delta_total", sweep.simultaneous_delta()},
        {"simultaneous_cadv_shared_sender_total", cadv_total},
        {"points", points},
    };
}

SweepOutcome run_sweep(const RunConfig &cfg, std::ostream *log) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepOutcome sweep = compute_sweep(cfg, cfg.n_sites, log);
    ensure_dir(cfg.out);
    write_curve_csv(cfg.out / "curve.csv", sweep);
    write_text(cfg.out / "audit.json", audit_json(sweep).dump(2) + "\n");
    write_text(cfg.out / "manifest.json",
               manifest(cfg, "sweep", seconds_since(t0), sweep.computed, {"curve.csv", "audit.json"}).dump(2) + "\n");
    return sweep;
}

SweepOutcome run_audit(const RunConfig &cfg, std::ostream *log) {
    const auto t0 = std::chrono::steady_clock::now();
    SweepOutcome sweep = compute_sweep(cfg, cfg.n_sites, log);
    ensure_dir(cfg.out);
    write_text(cfg.out / "audit.json", audit_json(sweep).dump(2) + "\n");
    write_text(cfg.out / "manifest.json",
               manifest(cfg, "audit", seconds_since(t0), sweep.computed, {"audit.json"}).dump(2) + "\n");
    return sweep;
}

namespace {

SweepMaximum curve_max(const SweepOutcome &s, Observable o) {
    std::vector<SweepPoint> curve;
    for (std::size_t k = 0; k < s.points.size(); ++k) curve.push_back({s.grid[k], s.points[k].pair_average[o]});
    return find_max_over_sweep(curve);
}

ScalingSeries make_series(const char *name, const std::vector<SizeMaxima> &rows, SweepMaximum SizeMaxima::*field) {
    ScalingSeries s;
    s.observable = name;
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
        s.sizes.push_back(rows[k].n_sites);
        s.values.push_back((rows[k].*field).value);
        s.std_errors.push_back((rows[k].*field).std_error);
    }
    s.reference_size = rows.back().n_sites;
    s.reference_value = (rows.back().*field).value;
    s.reference_std_error = (rows.back().*field).std_error;
    return s;
}

// Splits an injected series into the scaling sizes and the reference entry.
std::vector<SizeMaxima> synthetic_rows(const RunConfig &cfg) {
    if (cfg.synthetic_delta.size() != cfg.synthetic_cadv.size()) {
        throw ConfigError("synthetic delta and cadv series need the same sizes");
    }
    std::vector<SizeMaxima> rows;
    for (std::size_t k = 0; k < cfg.synthetic_delta.size(); ++k) {
        if (cfg.synthetic_delta[k].first != cfg.synthetic_cadv[k].first) {
            throw ConfigError("synthetic delta and cadv series need the same sizes");
        }
        SizeMaxima r;
        r.n_sites = cfg.synthetic_delta[k].first;
        r.delta.value = cfg.synthetic_delta[k].second;
        r.cadv.value = cfg.synthetic_cadv[k].second;
        rows.push_back(r);
    }
    // the largest size (possibly inf) is the reference
    std::stable_sort(rows.begin(), rows.end(), [](const SizeMaxima &a, const SizeMaxima &b) { return a.n_sites < b.n_sites; });
    if (rows.size() < 2) throw ConfigError("synthetic series need a reference and at least one size");
    return rows;
}

void fit_one(const char *name, const std::vector<SizeMaxima> &rows, SweepMaximum SizeMaxima::*field,
             std::optional<FitResult> &fit, std::string &error, std::optional<FitResult> &unguarded) {
    const ScalingSeries series = make_series(name, rows, field);
    try {
        fit = scaling_fit(series);
    } catch (const InsufficientDataError &e) {
        error = e.what();
    }
    try {
        unguarded = scaling_fit(series, 0.0);
    } catch (const InsufficientDataError &) {
    }
}

}  // namespace

ScalingOutcome compute_scaling(const RunConfig &cfg, std::ostream *log) {
    cfg.validate();
    ScalingOutcome out;
    if (!cfg.synthetic_delta.empty() || !cfg.synthetic_cadv.empty()) {
        out.rows = synthetic_rows(cfg);
    } else {
        if (cfg.sizes.empty()) throw ConfigError("scaling needs --sizes");
        std::vector<std::size_t> all = cfg.sizes;
        all.push_back(cfg.reference_size);
        for (std::size_t n : all) {
            const SweepOutcome s = compute_sweep(cfg, n, log);
            out.rows.push_back({static_cast<double>(n), curve_max(s, kDelta), curve_max(s, kCadvA)});
            out.computed += s.computed;
            for (const QuenchedResult &p : s.points) {
                ++out.audited_points;
                out.audited_realizations += p.requested;
                out.simultaneous_delta += p.audit.simultaneous_delta();
                out.simultaneous_cadv += p.audit.simultaneous_cadv();
            }
        }
    }
    fit_one("delta", out.rows, &SizeMaxima::delta, out.delta_fit, out.delta_error, out.delta_unguarded);
    fit_one("cadv", out.rows, &SizeMaxima::cadv, out.cadv_fit, out.cadv_error, out.cadv_unguarded);
    return out;
}

nlohmann::json fit_json(const FitResult &fit) {
    nlohmann::json points = nlohmann::json::array();
    for (const ScalingPoint &p : fit.points) {
        points.push_back({{"n_sites", p.size},
                          {"abs_difference", p.abs_difference},
                          {"combined_std_error", p.combined_std_error},
                          {"retained", p.retained}});
    }
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"r_squared", fit.r_squared},
            {"retained", fit.retained()},
            {"residuals", fit.residuals},
            {"points", points}};
}

ScalingOutcome run_scaling(const RunConfig &cfg, std::ostream *log) {
    const auto t0 = std::chrono::steady_clock::now();
    ScalingOutcome out = compute_scaling(cfg, log);
    ensure_dir(cfg.out);

    std::string csv =
        "n_sites,ln_n,delta_max,delta_stderr,delta_argmax,cadv_max,cadv_stderr,cadv_argmax,"
        "ln_abs_delta_diff,ln_abs_cadv_diff\n";
    const SizeMaxima &ref = out.rows.back();
    for (const SizeMaxima &r : out.rows) {
        const bool is_ref = &r == &ref;
        auto ln_diff = [&](double v, double rv) {
            return is_ref || v == rv ? std::string() : format_double(std::log(std::abs(v - rv)));
        };
        csv += format_double(r.n_sites) + "," + format_double(std::log(r.n_sites)) + "," + format_double(r.delta.value) +
               "," + format_double(r.delta.std_error) + "," + format_double(r.delta.x) + "," +
               format_double(r.cadv.value) + "," + format_double(r.cadv.std_error) + "," + format_double(r.cadv.x) +
               "," + ln_diff(r.delta.value, ref.delta.value) + "," + ln_diff(r.cadv.value, ref.cadv.value) + "\n";
    }
    write_text(cfg.out / "scaling.csv", csv);

    auto describe = [](const std::optional<FitResult> &fit, const std::string &error,
                       const std::optional<FitResult> &unguarded) {
        nlohmann::json j = fit ? fit_json(*fit) : nlohmann::json{{"error", error}};
        if (unguarded) j["unguarded_diagnostic"] = fit_json(*unguarded);
        return j;
    };
    const nlohmann::json fits = {
        {"reference_size", std::isinf(ref.n_sites) ? nlohmann::json("inf") : nlohmann::json(ref.n_sites)},
        {"noise_retention_factor", kNoiseRetentionFactor},
        {"delta", describe(out.delta_fit, out.delta_error, out.delta_unguarded)},
        {"cadv", describe(out.cadv_fit, out.cadv_error, out.cadv_unguarded)},
    };
    write_text(cfg.out / "fit.json", fits.dump(2) + "\n");
    write_text(cfg.out / "manifest.json",
               manifest(cfg, "scaling", seconds_since(t0), out.computed, {"scaling.csv", "fit.json"}).dump(2) + "\n");
    if (!out.delta_fit) throw InsufficientDataError("delta: " + out.delta_error);
    if (!out.cadv_fit) throw InsufficientDataError("cadv: " + out.cadv_error);
    return out;
}

}  // namespace qdisorder
