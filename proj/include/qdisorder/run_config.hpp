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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qdisorder/ensemble.hpp"

namespace qdisorder {

inline constexpr const char *kVersion = "0.3.0";

enum class PairSelection { AllBonds, Central, Explicit };

/// Everything a sweep or scaling run needs. Physical parameters are in units
/// of the overall energy scale. The sweep abscissa x is the disorder mean in
/// units of the uniform parameter: Jbar/h for spin glasses, hbar/J for the
/// random field model, J/h for the ordered chain.
struct RunConfig {
    ModelFamily model = ModelFamily::XYSpinGlass;
    std::size_t n_sites = 20;
    double gamma = 0.5;
    double delta = 0.0;
    double field = 0.4;
    double coupling = 1.0;
    double sigma = 1.0;
    std::vector<double> mean_grid;

    std::size_t realizations = 5000;
    std::uint64_t seed = 1;
    unsigned parallel = 0;

    PairSelection pair_selection = PairSelection::AllBonds;
    std::vector<SitePair> explicit_pairs;

    std::filesystem::path out = "qdisorder-out";
    std::optional<std::filesystem::path> cache;
    bool resume = false;
    std::size_t stop_after = std::numeric_limits<std::size_t>::max();

    // Scaling runs.
    std::vector<std::size_t> sizes;
    std::size_t reference_size = 50;
    /// Injected (size -> value) series; a non-empty map skips simulation.
    std::vector<std::pair<double, double>> synthetic_delta;
    std::vector<std::pair<double, double>> synthetic_cadv;

    /// Throws ConfigError on an illegal combination.
    void validate() const;
};

ModelFamily parse_model(const std::string &name);
std::string model_name(ModelFamily f);

/// "start:stop:count" (inclusive, evenly spaced) or a comma-separated list.
std::vector<double> parse_grid(const std::string &text);

/// "all-bonds", "central", or a list of 1-based pairs such as "5-6,6-7".
void parse_pairs(const std::string &text, RunConfig &cfg);

std::vector<std::size_t> parse_sizes(const std::string &text);

/// "10=0.05,14=0.049,50=0.048"; "inf" is accepted as a size.
std::vector<std::pair<double, double>> parse_series(const std::string &text);

std::vector<SitePair> resolve_pairs(const RunConfig &cfg, std::size_t n_sites);

/// Chain model at sweep abscissa x for a chain of n_sites.
ChainModel model_at(const RunConfig &cfg, double x, std::size_t n_sites);

/// Full configuration, including the expanded grid.
nlohmann::json to_json(const RunConfig &cfg);

/// Inverse of to_json (paths and parallelism are not part of it). Throws
/// ConfigError on missing or malformed fields.
RunConfig from_json(const nlohmann::json &j);

/// Hash of the fields that determine per-realization results (not the
/// realization count, parallelism, or output paths).
std::uint64_t config_hash(const RunConfig &cfg);

}  // namespace qdisorder
