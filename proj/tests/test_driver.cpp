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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qdisorder/driver.hpp"
#include "qdisorder/errors.hpp"

using namespace qdisorder;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const fs::path p = fs::temp_directory_path() / ("qdisorder-driver-" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig small_glass(const std::string &out) {
    RunConfig c;
    c.model = ModelFamily::XYSpinGlass;
    c.n_sites = 10;
    c.mean_grid = parse_grid("-1:1:3");
    c.realizations = 300;
    c.seed = 11;
    c.out = scratch(out);
    return c;
}

}  // namespace

TEST(ParseGrid, RangesAndLists) {
    EXPECT_EQ(parse_grid("0:2:5"), (std::vector<double>{0, 0.5, 1, 1.5, 2}));
    EXPECT_EQ(parse_grid("0:2:50").size(), 50u);
    EXPECT_EQ(parse_grid("0:2:50").back(), 2.0);
    EXPECT_EQ(parse_grid("1.5"), (std::vector<double>{1.5}));
    EXPECT_EQ(parse_grid("-2, 0,3"), (std::vector<double>{-2, 0, 3}));
    EXPECT_THROW(parse_grid(""), ConfigError);
    EXPECT_THROW(parse_grid("0:1"), ConfigError);
    EXPECT_THROW(parse_grid("0:1:0"), ConfigError);
    EXPECT_THROW(parse_grid("a,b"), ConfigError);
}

TEST(ParsePairs, Selections) {
    RunConfig c;
    parse_pairs("central", c);
    EXPECT_EQ(c.pair_selection, PairSelection::Central);
    parse_pairs("5-6, 6-7", c);
    EXPECT_EQ(c.pair_selection, PairSelection::Explicit);
    EXPECT_EQ(c.explicit_pairs, (std::vector<SitePair>{{4, 5}, {5, 6}}));
    EXPECT_THROW(parse_pairs("5", c), ConfigError);
    EXPECT_THROW(parse_pairs("0-1", c), ConfigError);
    EXPECT_EQ(parse_series("10=0.5,inf=0.1").back().first, std::numeric_limits<double>::infinity());
}

TEST(RunConfig, Validation) {
    RunConfig c = small_glass("validation");
    EXPECT_NO_THROW(c.validate());
    c.mean_grid.clear();
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_glass("validation");
    c.model = ModelFamily::XYOrdered;  // sigma must be zero
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_glass("validation");
    c.model = ModelFamily::XYZSpinGlass;
    c.n_sites = 20;
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_glass("validation");
    parse_pairs("2-4", c);
    EXPECT_THROW(c.validate(), ConfigError);
    c = small_glass("validation");
    c.field = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(RunConfig, ModelAtMapsTheAbscissa) {
    RunConfig c = small_glass("model");
    ChainModel m = model_at(c, 2.0, 10);
    EXPECT_EQ(m.disorder.target, DisorderTarget::Couplings);
    EXPECT_DOUBLE_EQ(m.disorder.mean, 0.8);  // Jbar = 2 h
    c.model = ModelFamily::XYRandomField;
    c.coupling = 1.5;
    m = model_at(c, 2.0, 10);
    EXPECT_EQ(m.disorder.target, DisorderTarget::Fields);
    EXPECT_DOUBLE_EQ(m.disorder.mean, 3.0);
}

TEST(RunConfig, JsonRoundTripAndHash) {
    RunConfig c = small_glass("json");
    parse_pairs("3-4,4-5", c);
    c.sizes = {10, 14};
    const RunConfig back = from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_EQ(config_hash(back), config_hash(c));
    RunConfig more = c;
    more.realizations = 999;  // more realizations extend the same cache
    EXPECT_EQ(config_hash(more), config_hash(c));
    more.seed = 12;
    EXPECT_NE(config_hash(more), config_hash(c));
}

TEST(Sweep, WritesArtifactsDeterministically) {
    RunConfig a = small_glass("det-a");
    a.parallel = 1;
    run_sweep(a);
    RunConfig b = small_glass("det-b");
    b.parallel = 3;
    run_sweep(b);
    const std::string csv = slurp(a.out / "curve.csv");
    EXPECT_EQ(csv, slurp(b.out / "curve.csv"));
    EXPECT_EQ(slurp(a.out / "audit.json"), slurp(b.out / "audit.json"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "x,pair,delta_mean,delta_stderr,cadv_mean,cadv_stderr,M_unclamped_mean,n,flags,"
              "cadv_unclamped_mean,cadv_b_mean,cadv_b_stderr");
    // 3 grid points x (10 bonds + average) rows
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 11);
    const auto manifest = nlohmann::json::parse(slurp(a.out / "manifest.json"));
    EXPECT_EQ(manifest.at("seed").get<std::uint64_t>(), 11u);
    EXPECT_EQ(manifest.at("version").get<std::string>(), kVersion);
    EXPECT_TRUE(manifest.contains("wall_time_seconds"));
}

TEST(Sweep, SeventeenSignificantDigits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(2.0), "2");
}

TEST(Sweep, ManifestRegeneratesTheCurve) {
    RunConfig a = small_glass("manifest-a");
    run_sweep(a);
    RunConfig b = from_json(nlohmann::json::parse(slurp(a.out / "manifest.json")).at("config"));
    b.out = scratch("manifest-b");
    run_sweep(b);
    EXPECT_EQ(slurp(a.out / "curve.csv"), slurp(b.out / "curve.csv"));
}

TEST(Sweep, OrderedChainColumnsAreZero) {
    RunConfig c;
    c.model = ModelFamily::XYOrdered;
    c.sigma = 0.0;
    c.n_sites = 20;
    c.gamma = 1.0;
    c.mean_grid = parse_grid("0:2:9");
    c.realizations = 4;
    c.out = scratch("ordered");
    const SweepOutcome s = run_sweep(c);
    for (const QuenchedResult &r : s.points) {
        for (const auto &e : r.per_pair) {
            EXPECT_EQ(e[kDelta].mean, 0.0);
            EXPECT_EQ(e[kCadvA].mean, 0.0);
            EXPECT_EQ(e[kCadvB].mean, 0.0);
        }
    }
    EXPECT_EQ(s.simultaneous_delta(), 0u);
}

TEST(Resume, InterruptedRunResumesToIdenticalOutput) {
    RunConfig full = small_glass("resume-full");
    full.realizations = 3000;
    full.mean_grid = {0.0, 1.0};
    run_sweep(full);

    RunConfig part = full;
    part.out = scratch("resume-part");
    part.cache = scratch("resume-cache");
    part.stop_after = 3000 + 2048 + 10;  // dies inside the second grid point
    EXPECT_THROW(run_sweep(part), InterruptedError);
    EXPECT_FALSE(fs::exists(part.out / "curve.csv"));

    part.stop_after = std::numeric_limits<std::size_t>::max();
    part.resume = true;
    const SweepOutcome s = run_sweep(part);
    EXPECT_EQ(s.computed, 3000u - 2048u);
    EXPECT_EQ(slurp(full.out / "curve.csv"), slurp(part.out / "curve.csv"));

    // a complete cache costs nothing
    EXPECT_EQ(run_sweep(part).computed, 0u);
}

TEST(Resume, EmptyCacheIsAFullRun) {
    RunConfig c = small_glass("resume-empty");
    c.cache = scratch("resume-empty-cache");
    c.resume = true;
    EXPECT_EQ(run_sweep(c).computed, 3 * 300u);
}

TEST(Resume, RefusesCacheFromAnotherConfig) {
    RunConfig c = small_glass("resume-other");
    c.cache = scratch("resume-other-cache");
    run_sweep(c);
    c.seed = 99;
    c.resume = true;
    EXPECT_THROW(run_sweep(c), CacheCorruptionError);
}

TEST(Scaling, SyntheticInjectionRecoversSlopes) {
    RunConfig c;
    c.mean_grid = {0.0};
    c.out = scratch("synthetic");
    for (double n : {10.0, 14.0, 20.0, 30.0, 40.0}) {
        c.synthetic_delta.emplace_back(n, 0.05 + 2.0 * std::pow(n, -2.05));
        c.synthetic_cadv.emplace_back(n, 0.04 + 3.0 * std::pow(n, -2.30));
    }
    c.synthetic_delta.emplace_back(std::numeric_limits<double>::infinity(), 0.05);
    c.synthetic_cadv.emplace_back(std::numeric_limits<double>::infinity(), 0.04);
    const ScalingOutcome s = run_scaling(c);
    EXPECT_NEAR(s.delta_fit->slope, -2.05, 1e-6);
    EXPECT_NEAR(s.cadv_fit->slope, -2.30, 1e-6);
    EXPECT_GE(s.delta_fit->r_squared, 1.0 - 1e-9);
    EXPECT_TRUE(fs::exists(c.out / "scaling.csv"));
    const auto fit = nlohmann::json::parse(slurp(c.out / "fit.json"));
    EXPECT_NEAR(fit.at("delta").at("slope").get<double>(), -2.05, 1e-6);
}

TEST(Scaling, RefusedFitStillWritesTables) {
    RunConfig c;
    c.mean_grid = {0.0};
    c.out = scratch("synthetic-flat");
    for (double n : {10.0, 14.0, 50.0}) {
        c.synthetic_delta.emplace_back(n, 0.05);
        c.synthetic_cadv.emplace_back(n, 0.04);
    }
    EXPECT_THROW(run_scaling(c), InsufficientDataError);
    EXPECT_TRUE(fs::exists(c.out / "scaling.csv"));
    const auto fit = nlohmann::json::parse(slurp(c.out / "fit.json"));
    EXPECT_TRUE(fit.at("delta").contains("error"));
}

TEST(Scaling, SmallSimulatedPipeline) {
    RunConfig c;
    c.model = ModelFamily::XYRandomField;
    c.field = 0.0;
    c.mean_grid = {0.5, 1.0, 1.5};
    c.realizations = 200;
    c.sizes = {6, 8, 10};
    c.reference_size = 16;
    c.out = scratch("pipeline");
    const ScalingOutcome s = compute_scaling(c);
    ASSERT_EQ(s.rows.size(), 4u);
    EXPECT_EQ(s.rows.back().n_sites, 16.0);
    for (const auto &r : s.rows) EXPECT_GT(r.delta.value, 0.0);
}
