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

// qdisorder: quenched Bell violation and dense-coding advantage in disordered
// spin chains.
//
//   qdisorder sweep    --model xy-spin-glass --mean-grid=-2:3:26 --out run1
//   qdisorder scaling  --model xy-random-field --sizes 10,14,20,30,40 --reference-size 50
//   qdisorder audit    ...same flags as sweep...
//   qdisorder validate
//
// Any flag may also come from a `key = value` file given with --config.
//
// Exit codes: 0 ok, 1 oracle mismatch, 2 config error, 3 numerical abort,
// 4 I/O failure, 5 stopped by --stop-after (resume with --resume).

#include <cmath>
#include <iostream>

#include "CLI11.hpp"
#include "qdisorder/driver.hpp"
#include "qdisorder/errors.hpp"
#include "qdisorder/exact_diag.hpp"
#include "qdisorder/oracle.hpp"

using namespace qdisorder;

namespace {

struct RawFlags {
    std::string model = "xy-spin-glass";
    std::string grid;
    std::string pairs;
    std::string sizes;
    std::string cache;
    std::string synthetic_delta;
    std::string synthetic_cadv;
};

int run_validate(const RunConfig &cfg, bool sites_given, bool realizations_given) {
    OracleOptions o;
    if (sites_given) o.n_sites = cfg.n_sites;
    if (realizations_given) o.realizations_per_gamma = cfg.realizations;
    o.seed = cfg.seed;
    if (o.n_sites > kMaxExactSites) throw ConfigError("validate needs n-sites <= " + std::to_string(kMaxExactSites));
    const OracleReport r = run_oracle_suite(o);
    auto line = [](const char *name, const ObservableDeviation &d) {
        std::cout << name << " mz=" << d.mz << " xx=" << d.xx << " yy=" << d.yy << " zz=" << d.zz << "\n";
    };
    std::cout << "oracle N=" << o.n_sites << " open=" << r.open_compared << " cyclic=" << r.cyclic_compared
              << " cyclic_parity_caveat=" << r.cyclic_parity_caveat << " skipped_degenerate=" << r.skipped_degenerate
              << "\n";
    line("open   max|dev|", r.open);
    line("cyclic max|dev|", r.cyclic);
    line("cyclic caveat (info) max|dev|", r.cyclic_caveat);
    const bool ok = r.open.max() <= 1e-8 && r.cyclic.max() <= 1e-8 && r.open_compared > 0;
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quenched Bell-CHSH violation and dense-coding advantage in disordered spin chains"};
    app.set_config("--config", "", "key = value file; command-line flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    RawFlags raw;
    app.add_option("--model", raw.model, "xy-spin-glass | xy-random-field | xyz-spin-glass | xy-ordered")
        ->capture_default_str();
    auto *sites_opt = app.add_option("--n-sites", cfg.n_sites, "chain length")->capture_default_str();
    app.add_option("--gamma", cfg.gamma, "XY anisotropy")->capture_default_str();
    app.add_option("--delta", cfg.delta, "ZZ coupling (xyz only)")->capture_default_str();
    app.add_option("--field", cfg.field, "uniform field h (spin glass, xyz, ordered)")->capture_default_str();
    app.add_option("--coupling", cfg.coupling, "uniform coupling J (random field)")->capture_default_str();
    app.add_option("--sigma", cfg.sigma, "disorder standard deviation")->capture_default_str();
    app.add_option("--mean-grid", raw.grid, "disorder means in units of h (or J): start:stop:count or a,b,c");
    auto *real_opt = app.add_option("--realizations", cfg.realizations, "realizations per grid point")
                         ->capture_default_str();
    app.add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    app.add_option("--parallel", cfg.parallel, "worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--pairs", raw.pairs, "all-bonds | central | 5-6,6-7 (1-based)");
    app.add_option("--out", cfg.out, "output directory")->capture_default_str();
    app.add_option("--cache", raw.cache, "realization cache directory");
    app.add_flag("--resume", cfg.resume, "reuse the cache instead of starting over");
    app.add_option("--stop-after", cfg.stop_after, "stop after computing about this many realizations");
    app.add_option("--sizes", raw.sizes, "scaling chain lengths, e.g. 10,14,20,30,40");
    app.add_option("--reference-size", cfg.reference_size, "reference length for scaling")->capture_default_str();
    app.add_option("--synthetic-delta", raw.synthetic_delta, "injected maxima, size=value,... (skips simulation)");
    app.add_option("--synthetic-cadv", raw.synthetic_cadv, "injected maxima, size=value,...");

    auto *sweep = app.add_subcommand("sweep", "quenched curves over the mean grid");
    auto *scaling = app.add_subcommand("scaling", "finite-size scaling of the curve maxima");
    auto *audit = app.add_subcommand("audit", "per-realization monogamy audit only");
    auto *validate = app.add_subcommand("validate", "free-fermion vs exact diagonalization oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.model = parse_model(raw.model);
        if (cfg.model == ModelFamily::XYRandomField && app.count("--field") == 0) cfg.field = 0.0;
        if (cfg.model == ModelFamily::XYOrdered && app.count("--sigma") == 0) cfg.sigma = 0.0;
        if (cfg.model == ModelFamily::XYZSpinGlass) {
            if (app.count("--field") == 0) cfg.field = 1.0;
            if (app.count("--n-sites") == 0) cfg.n_sites = 12;
            if (app.count("--delta") == 0) cfg.delta = 0.7;
            if (raw.pairs.empty()) raw.pairs = "central";
        }
        if (!raw.pairs.empty()) parse_pairs(raw.pairs, cfg);
        if (!raw.sizes.empty()) cfg.sizes = parse_sizes(raw.sizes);
        if (!raw.cache.empty()) cfg.cache = raw.cache;
        if (!raw.synthetic_delta.empty()) cfg.synthetic_delta = parse_series(raw.synthetic_delta);
        if (!raw.synthetic_cadv.empty()) cfg.synthetic_cadv = parse_series(raw.synthetic_cadv);
        if (cfg.resume && !cfg.cache) throw ConfigError("--resume needs --cache");

        if (*validate) return run_validate(cfg, sites_opt->count() > 0, real_opt->count() > 0);

        if (raw.grid.empty()) {
            if (*scaling && !cfg.synthetic_delta.empty()) {
                cfg.mean_grid = {0.0};  // unused
            } else {
                throw ConfigError("--mean-grid is required");
            }
        } else {
            cfg.mean_grid = parse_grid(raw.grid);
        }

        if (*sweep) {
            const SweepOutcome s = run_sweep(cfg, &std::cerr);
            std::cout << "wrote " << (cfg.out / "curve.csv").string() << "; simultaneous delta realizations: "
                      << s.simultaneous_delta() << "\n";
        } else if (*audit) {
            const SweepOutcome s = run_audit(cfg, &std::cerr);
            std::cout << "wrote " << (cfg.out / "audit.json").string() << "; simultaneous delta realizations: "
                      << s.simultaneous_delta() << "\n";
        } else if (*scaling) {
            const ScalingOutcome s = run_scaling(cfg, &std::cerr);
            std::cout << "delta slope " << s.delta_fit->slope << " (r^2 " << s.delta_fit->r_squared << "), cadv slope "
                      << s.cadv_fit->slope << " (r^2 " << s.cadv_fit->r_squared << ")\n";
        }
        return 0;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SpecError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InterruptedError &e) {
        std::cerr << "stopped: " << e.what() << "\n";
        return 5;
    } catch (const IoError &e) {
        std::cerr << "i/o failure: " << e.what() << "\n";
        return 4;
    } catch (const CacheCorruptionError &e) {
        std::cerr << "cache refused: " << e.what() << "\n";
        return 4;
    } catch (const Error &e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "i/o failure: " << e.what() << "\n";
        return 4;
    }
}
