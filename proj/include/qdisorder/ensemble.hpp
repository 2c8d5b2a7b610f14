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

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace qdisorder {

class RealizationCache;

enum class ModelFamily { XYSpinGlass, XYRandomField, XYZSpinGlass, XYOrdered };

enum class DisorderTarget { Couplings, Fields };

/// Gaussian disorder N(mean, stddev^2), i.i.d. over the targeted array.
/// stddev = 0 is a point mass at the mean.
struct DisorderSpec {
    DisorderTarget target = DisorderTarget::Couplings;
    double mean = 0.0;
    double stddev = 0.0;

    void validate() const;
};

/// Parameter arrays of one chain realization.
struct Realization {
    std::vector<double> couplings;
    std::vector<double> fields;
};

/// One member of a chain family. XY families are cyclic with n couplings;
/// the XYZ family is open with n-1 couplings and a uniform field.
struct ChainModel {
    ModelFamily family = ModelFamily::XYSpinGlass;
    std::size_t n_sites = 0;
    double gamma = 0.0;
    double delta = 0.0;
    double coupling = 1.0;  // uniform J when couplings are not random
    double field = 1.0;     // uniform h when fields are not random
    DisorderSpec disorder;

    void validate() const;
    Realization base() const;
};

/// Draws the disordered array for realization `index`, copying everything
/// else from `base`. A pure function of (seed, index).
Realization sample_realization(const DisorderSpec &disorder, const Realization &base, std::uint64_t seed,
                               std::uint64_t index);

/// Sites (first, second), 0-based. For XY chains the pair must be a bond
/// (second == first + 1 mod n); for XYZ chains first < second.
struct SitePair {
    std::size_t first = 0;
    std::size_t second = 0;

    friend bool operator==(const SitePair &, const SitePair &) = default;
};

std::vector<SitePair> all_bonds(std::size_t n_sites);
/// (n/2-2, n/2-1) and (n/2-1, n/2) in 0-based labels.
std::vector<SitePair> central_pairs(std::size_t n_sites);
std::string pair_label(const SitePair &p);  // 1-based, e.g. "5-6"

/// Per-pair, per-realization quantities. Dense-coding entries carry the
/// sender in their suffix.
enum Observable : std::size_t {
    kDelta,
    kDeltaUnclamped,  // M - 1
    kBellM,
    kCadvA,
    kCadvB,
    kCadvUnclampedA,  // S(A) - S(AB)
    kCadvUnclampedB,
    kEntropyAB,
    kEntropyA,
    kEntropyB,
    kMzA,
    kMzB,
    kObservableCount
};

const char *observable_name(Observable o);

/// Values below this are treated as zero when deciding whether delta or
/// C_adv is positive in a single realization.
inline constexpr double kPositiveThreshold = 1e-10;

struct RealizationRecord {
    std::uint64_t index = 0;
    bool degenerate = false;
    bool failed = false;
    std::vector<double> values;  // pair-major, kObservableCount per pair

    double at(std::size_t pair, Observable o) const { return values[pair * kObservableCount + o]; }
};

RealizationRecord evaluate_realization(const ChainModel &model, std::span<const SitePair> pairs, std::uint64_t seed,
                                       std::uint64_t index);

/// Welford accumulator with Chan's pairwise merge.
struct RunningStats {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x);
    void merge(const RunningStats &other);
    double variance() const;  // sample variance, 0 for n < 2
    double std_error() const;
};

struct QuenchedEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    std::size_t degenerate = 0;
    std::size_t failed = 0;
};

using ObservableEstimates = std::array<QuenchedEstimate, kObservableCount>;

/// Monogamy bookkeeping for two pairs sharing one site.
struct OverlapAudit {
    SitePair left;
    SitePair right;
    std::size_t shared_site = 0;
    std::size_t realizations = 0;
    /// Realizations where delta > 0 on both pairs. Forbidden for any state.
    std::size_t simultaneous_delta = 0;
    /// Realizations where C_adv > 0 on both pairs with the shared site sending.
    std::size_t simultaneous_cadv = 0;
    QuenchedEstimate delta_left, delta_right;
    QuenchedEstimate cadv_left, cadv_right;  // shared site as sender
};

struct AuditReport {
    std::vector<OverlapAudit> overlaps;

    std::size_t simultaneous_delta() const;
    std::size_t simultaneous_cadv() const;
};

/// Builds the audit directly from per-realization records (quenched means included).
AuditReport monogamy_audit(std::span<const SitePair> pairs, std::span<const RealizationRecord> records);

struct EnsembleConfig {
    std::size_t n_realizations = 5000;
    std::uint64_t seed = 0;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned max_parallel = 0;
    /// Stop with InterruptedError after computing this many new realizations
    /// (records already in the cache are free). Used for checkpointed runs.
    std::size_t compute_budget = std::numeric_limits<std::size_t>::max();
};

/// Hard failures above this fraction of the requested realizations abort the run.
inline constexpr double kMaxFailureFraction = 1e-3;

struct QuenchedResult {
    std::vector<SitePair> pairs;
    std::vector<ObservableEstimates> per_pair;
    /// Per-realization mean over all listed pairs, then averaged over realizations.
    ObservableEstimates pair_average;
    AuditReport audit;
    std::size_t requested = 0;
    std::size_t failed = 0;
    std::size_t degenerate = 0;
    std::size_t computed = 0;  // realizations evaluated in this call (not read from cache)
};

QuenchedResult quenched_average(const ChainModel &model, std::span<const SitePair> pairs, const EnsembleConfig &config,
                                RealizationCache *cache = nullptr);

}  // namespace qdisorder
