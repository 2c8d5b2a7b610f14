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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qdisorder/ensemble.hpp"
#include "qdisorder/run_config.hpp"
#include "qdisorder/scaling.hpp"

namespace qdisorder {

struct SweepOutcome {
    std::vector<double> grid;
    std::vector<SitePair> pairs;
    std::vector<QuenchedResult> points;  // one per grid point
    std::size_t computed = 0;            // realizations evaluated (not from cache)

    std::size_t simultaneous_delta() const;
};

/// Quenched averages over the mean grid for one chain size. Honors cfg.cache,
/// cfg.resume and cfg.stop_after. Writes nothing besides the cache.
SweepOutcome compute_sweep(const RunConfig &cfg, std::size_t n_sites, std::ostream *log = nullptr);

/// compute_sweep plus curve.csv, audit.json and manifest.json under cfg.out.
SweepOutcome run_sweep(const RunConfig &cfg, std::ostream *log = nullptr);

/// Only the audit report (audit.json + manifest.json).
SweepOutcome run_audit(const RunConfig &cfg, std::ostream *log = nullptr);

struct SizeMaxima {
    double n_sites = 0.0;  // +inf for an injected infinite reference
    SweepMaximum delta;
    SweepMaximum cadv;
};

struct ScalingOutcome {
    std::vector<SizeMaxima> rows;  // cfg.sizes followed by the reference
    std::optional<FitResult> delta_fit;
    std::optional<FitResult> cadv_fit;
    std::string delta_error;  // set when the fit was refused
    std::string cadv_error;
    /// Plain least squares on every size with a nonzero difference, ignoring
    /// the noise guard. Diagnostic only.
    std::optional<FitResult> delta_unguarded;
    std::optional<FitResult> cadv_unguarded;
    std::size_t computed = 0;
    // monogamy audit over every simulated grid point
    std::size_t audited_points = 0;
    std::size_t audited_realizations = 0;
    std::size_t simultaneous_delta = 0;
    std::size_t simultaneous_cadv = 0;
};

/// Per-size maxima of the pair-averaged delta and C_adv (sender = first site)
/// and their power-law fits. Uses the synthetic series when present.
ScalingOutcome compute_scaling(const RunConfig &cfg, std::ostream *log = nullptr);

/// compute_scaling plus scaling.csv, fit.json and manifest.json. Throws
/// InsufficientDataError after writing if either fit was refused.
ScalingOutcome run_scaling(const RunConfig &cfg, std::ostream *log = nullptr);

/// "%.17g".
std::string format_double(double v);

void write_curve_csv(const std::filesystem::path &path, const SweepOutcome &sweep);
nlohmann::json audit_json(const SweepOutcome &sweep);
nlohmann::json fit_json(const FitResult &fit);

}  // namespace qdisorder
