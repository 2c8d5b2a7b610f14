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

#include "qdisorder/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "qdisorder/cache.hpp"
#include "qdisorder/errors.hpp"
#include "qdisorder/exact_diag.hpp"
#include "qdisorder/free_fermion.hpp"
#include "qdisorder/qubit_measures.hpp"
#include "qdisorder/random.hpp"

namespace qdisorder {
namespace {

// Reduction granularity. Fixed so that partial aggregates, and hence the
// floating-point result, do not depend on the number of workers.
constexpr std::size_t kBlockSize = 32;
constexpr std::size_t kBlocksPerBatch = 64;

void fill_pair_observables(const TwoQubitState &rho, double *out) {
    const double m = bell_M(rho);
    const double s_ab = von_neumann_entropy(rho);
    const double s_a = von_neumann_entropy(partial_trace(rho, Party::A));
    const double s_b = von_neumann_entropy(partial_trace(rho, Party::B));
    const Eigen::Matrix4cd &r = rho.matrix();
    out[kDelta] = std::max(0.0, m - 1.0);
    out[kDeltaUnclamped] = m - 1.0;
    out[kBellM] = m;
    out[kCadvUnclampedA] = s_a - s_ab;
    out[kCadvUnclampedB] = s_b - s_ab;
    out[kCadvA] = std::max(0.0, s_a - s_ab);
    out[kCadvB] = std::max(0.0, s_b - s_ab);
    out[kEntropyAB] = s_ab;
    out[kEntropyA] = s_a;
    out[kEntropyB] = s_b;
    out[kMzA] = (r(0, 0) + r(1, 1) - r(2, 2) - r(3, 3)).real();
    out[kMzB] = (r(0, 0) - r(1, 1) + r(2, 2) - r(3, 3)).real();
}

QuenchedEstimate to_estimate(const RunningStats &s, std::size_t degenerate, std::size_t failed) {
    return QuenchedEstimate{s.mean, s.std_error(), s.n, degenerate, failed};
}

struct OverlapIndex {
    std::size_t left, right, shared;
    Observable left_sender, right_sender;
};

std::vector<OverlapIndex> find_overlaps(std::span<const SitePair> pairs) {
    std::vector<OverlapIndex> out;
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const SitePair &p = pairs[a];
            const SitePair &q = pairs[b];
            for (std::size_t site : {p.first, p.second}) {
                if (site == q.first || site == q.second) {
                    out.push_back({a, b, site, site == p.first ? kCadvA : kCadvB, site == q.first ? kCadvA : kCadvB});
                }
            }
        }
    }
    return out;
}

// Associative partial aggregate over a contiguous block of realizations.
struct BlockAggregate {
    std::vector<RunningStats> per_pair;  // pair-major
    std::vector<RunningStats> average;
    std::vector<std::size_t> simultaneous_delta;
    std::vector<std::size_t> simultaneous_cadv;
    std::size_t failed = 0;
    std::size_t degenerate = 0;

    BlockAggregate(std::size_t n_pairs, std::size_t n_overlaps)
        : per_pair(n_pairs * kObservableCount),
          average(kObservableCount),
          simultaneous_delta(n_overlaps),
          simultaneous_cadv(n_overlaps) {}

    void add(const RealizationRecord &r, std::span<const OverlapIndex> overlaps, std::size_t n_pairs) {
        if (r.failed) {
            ++failed;
            return;
        }
        if (r.degenerate) ++degenerate;
        for (std::size_t k = 0; k < r.values.size(); ++k) per_pair[k].push(r.values[k]);
        for (std::size_t o = 0; o < kObservableCount; ++o) {
            double sum = 0.0;
            for (std::size_t p = 0; p < n_pairs; ++p) sum += r.at(p, static_cast<Observable>(o));
            average[o].push(sum / static_cast<double>(n_pairs));
        }
        for (std::size_t k = 0; k < overlaps.size(); ++k) {
            const OverlapIndex &ov = overlaps[k];
            if (r.at(ov.left, kDelta) > kPositiveThreshold && r.at(ov.right, kDelta) > kPositiveThreshold) {
                ++simultaneous_delta[k];
            }
            if (r.at(ov.left, ov.left_sender) > kPositiveThreshold &&
                r.at(ov.right, ov.right_sender) > kPositiveThreshold) {
                ++simultaneous_cadv[k];
            }
        }
    }

    void merge(const BlockAggregate &o) {
        for (std::size_t k = 0; k < per_pair.size(); ++k) per_pair[k].merge(o.per_pair[k]);
        for (std::size_t k = 0; k < average.size(); ++k) average[k].merge(o.average[k]);
        for (std::size_t k = 0; k < simultaneous_delta.size(); ++k) {
            simultaneous_delta[k] += o.simultaneous_delta[k];
            simultaneous_cadv[k] += o.simultaneous_cadv[k];
        }
        failed += o.failed;
        degenerate += o.degenerate;
    }
};

void finish(QuenchedResult &result, const BlockAggregate &total, std::span<const OverlapIndex> overlaps,
            std::span<const SitePair> pairs) {
    const std::size_t n_pairs = pairs.size();
    result.pairs.assign(pairs.begin(), pairs.end());
    result.failed = total.failed;
    result.degenerate = total.degenerate;
    result.per_pair.assign(n_pairs, ObservableEstimates{});
    for (std::size_t p = 0; p < n_pairs; ++p) {
        for (std::size_t o = 0; o < kObservableCount; ++o) {
            result.per_pair[p][o] = to_estimate(total.per_pair[p * kObservableCount + o], total.degenerate, total.failed);
        }
    }
    for (std::size_t o = 0; o < kObservableCount; ++o) {
        result.pair_average[o] = to_estimate(total.average[o], total.degenerate, total.failed);
    }
    result.audit.overlaps.clear();
    for (std::size_t k = 0; k < overlaps.size(); ++k) {
        const OverlapIndex &ov = overlaps[k];
        OverlapAudit a;
        a.left = pairs[ov.left];
        a.right = pairs[ov.right];
        a.shared_site = ov.shared;
        a.realizations = result.requested - total.failed;
        a.simultaneous_delta = total.simultaneous_delta[k];
        a.simultaneous_cadv = total.simultaneous_cadv[k];
        a.delta_left = result.per_pair[ov.left][kDelta];
        a.delta_right = result.per_pair[ov.right][kDelta];
        a.cadv_left = result.per_pair[ov.left][ov.left_sender];
        a.cadv_right = result.per_pair[ov.right][ov.right_sender];
        result.audit.overlaps.push_back(a);
    }
}

template <typename F>
void parallel_for(std::size_t n_tasks, unsigned workers, F &&task) {
    if (workers <= 1 || n_tasks <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> has_error{false};
    std::vector<std::thread> pool;
    const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(workers, n_tasks));
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n_tasks && !has_error; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    if (!has_error.exchange(true)) error = std::current_exception();
                }
            }
        });
    }
    for (auto &th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace

void DisorderSpec::validate() const {
    if (!std::isfinite(mean) || !std::isfinite(stddev) || stddev < 0.0) {
        throw SpecError("disorder needs a finite mean and a finite stddev >= 0");
    }
}

void ChainModel::validate() const {
    disorder.validate();
    if (!std::isfinite(gamma) || !std::isfinite(delta) || !std::isfinite(coupling) || !std::isfinite(field)) {
        throw SpecError("chain model has a non-finite parameter");
    }
    switch (family) {
        case ModelFamily::XYSpinGlass:
        case ModelFamily::XYOrdered:
            if (disorder.target != DisorderTarget::Couplings) {
                throw SpecError("spin glass models draw their couplings");
            }
            if (family == ModelFamily::XYOrdered && disorder.stddev != 0.0) {
                throw SpecError("the ordered chain has no disorder");
            }
            [[fallthrough]];
        case ModelFamily::XYRandomField:
            if (family == ModelFamily::XYRandomField && disorder.target != DisorderTarget::Fields) {
                throw SpecError("the random field model draws its fields");
            }
            if (n_sites < 3) throw SpecError("cyclic XY chains need at least 3 sites");
            break;
        case ModelFamily::XYZSpinGlass:
            if (disorder.target != DisorderTarget::Couplings) {
                throw SpecError("the XYZ spin glass draws its couplings");
            }
            if (n_sites < 2 || n_sites > kMaxExactSites) {
                throw SpecError("XYZ chains need between 2 and " + std::to_string(kMaxExactSites) + " sites");
            }
            break;
    }
}

Realization ChainModel::base() const {
    const std::size_t n_couplings = family == ModelFamily::XYZSpinGlass ? n_sites - 1 : n_sites;
    return Realization{std::vector<double>(n_couplings, coupling), std::vector<double>(n_sites, field)};
}

Realization sample_realization(const DisorderSpec &disorder, const Realization &base, std::uint64_t seed,
                               std::uint64_t index) {
    disorder.validate();
    Realization out = base;
    std::vector<double> &target = disorder.target == DisorderTarget::Couplings ? out.couplings : out.fields;
    GaussianStream normal(seed, index);
    for (double &v : target) {
        v = disorder.mean + disorder.stddev * normal();
    }
    return out;
}

std::vector<SitePair> all_bonds(std::size_t n_sites) {
    std::vector<SitePair> out;
    for (std::size_t i = 0; i < n_sites; ++i) out.push_back({i, (i + 1) % n_sites});
    return out;
}

std::vector<SitePair> central_pairs(std::size_t n_sites) {
    if (n_sites < 4) throw SpecError("central pairs need at least 4 sites");
    const std::size_t c = n_sites / 2 - 1;  // 0-based label of site n/2
    return {{c - 1, c}, {c, c + 1}};
}

std::string pair_label(const SitePair &p) { return std::to_string(p.first + 1) + "-" + std::to_string(p.second + 1); }

const char *observable_name(Observable o) {
    switch (o) {
        case kDelta: return "delta";
        case kDeltaUnclamped: return "delta_unclamped";
        case kBellM: return "bell_M";
        case kCadvA: return "cadv_a";
        case kCadvB: return "cadv_b";
        case kCadvUnclampedA: return "cadv_unclamped_a";
        case kCadvUnclampedB: return "cadv_unclamped_b";
        case kEntropyAB: return "entropy_ab";
        case kEntropyA: return "entropy_a";
        case kEntropyB: return "entropy_b";
        case kMzA: return "mz_a";
        case kMzB: return "mz_b";
        case kObservableCount: break;
    }
    return "?";
}

RealizationRecord evaluate_realization(const ChainModel &model, std::span<const SitePair> pairs, std::uint64_t seed,
                                       std::uint64_t index) {
    RealizationRecord record;
    record.index = index;
    record.values.assign(pairs.size() * kObservableCount, 0.0);
    const Realization r = sample_realization(model.disorder, model.base(), seed, index);
    try {
        if (model.family == ModelFamily::XYZSpinGlass) {
            XYZChainSpec spec{model.n_sites, model.gamma, model.delta, model.field, r.couplings};
            const GroundStateResult gs = z2_ground_state(build_xyz_hamiltonian(spec), model.n_sites);
            record.degenerate = gs.degenerate;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                const TwoQubitState rho = two_site_rdm(gs, model.n_sites, pairs[p].first, pairs[p].second);
                fill_pair_observables(rho, &record.values[p * kObservableCount]);
            }
        } else {
            XYChainSpec spec{model.gamma, r.couplings, r.fields, Boundary::Cyclic};
            const CorrelatorSet c = solve_xy_chain(spec);
            record.degenerate = c.degenerate;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                if (pairs[p].second != (pairs[p].first + 1) % model.n_sites) {
                    throw SpecError("XY chains only provide nearest-neighbour pairs, got " + pair_label(pairs[p]));
                }
                fill_pair_observables(pair_state(c, pairs[p].first), &record.values[p * kObservableCount]);
            }
        }
    } catch (const PositivityError &) {
        record.failed = true;
    } catch (const ConvergenceError &) {
        record.failed = true;
    }
    return record;
}

void RunningStats::push(double x) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
}

void RunningStats::merge(const RunningStats &o) {
    if (o.n == 0) return;
    if (n == 0) {
        *this = o;
        return;
    }
    const double total = static_cast<double>(n + o.n);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
}

double RunningStats::variance() const { return n < 2 ? 0.0 : std::max(0.0, m2 / static_cast<double>(n - 1)); }

double RunningStats::std_error() const { return n == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n)); }

std::size_t AuditReport::simultaneous_delta() const {
    std::size_t total = 0;
    for (const auto &o : overlaps) total += o.simultaneous_delta;
    return total;
}

std::size_t AuditReport::simultaneous_cadv() const {
    std::size_t total = 0;
    for (const auto &o : overlaps) total += o.simultaneous_cadv;
    return total;
}

AuditReport monogamy_audit(std::span<const SitePair> pairs, std::span<const RealizationRecord> records) {
    const auto overlaps = find_overlaps(pairs);
    BlockAggregate total(pairs.size(), overlaps.size());
    for (const RealizationRecord &r : records) total.add(r, overlaps, pairs.size());
    QuenchedResult result;
    result.requested = records.size();
    finish(result, total, overlaps, pairs);
    return result.audit;
}

QuenchedResult quenched_average(const ChainModel &model, std::span<const SitePair> pairs, const EnsembleConfig &config,
                                RealizationCache *cache) {
    model.validate();
    if (config.n_realizations == 0) throw SpecError("n_realizations must be at least 1");
    if (pairs.empty()) throw SpecError("quenched_average needs at least one pair");
    for (const SitePair &p : pairs) {
        if (p.first >= model.n_sites || p.second >= model.n_sites || p.first == p.second) {
            throw SpecError("pair " + pair_label(p) + " is not inside the chain");
        }
    }

    const unsigned workers = config.max_parallel ? config.max_parallel : std::max(1u, std::thread::hardware_concurrency());
    const auto overlaps = find_overlaps(pairs);
    const std::size_t n = config.n_realizations;
    const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;

    QuenchedResult result;
    result.requested = n;
    BlockAggregate total(pairs.size(), overlaps.size());

    for (std::size_t batch_start = 0; batch_start < n_blocks; batch_start += kBlocksPerBatch) {
        const std::size_t batch_end = std::min(n_blocks, batch_start + kBlocksPerBatch);
        const std::size_t first = batch_start * kBlockSize;
        const std::size_t last = std::min(n, batch_end * kBlockSize);

        std::vector<RealizationRecord> records(last - first);
        std::vector<char> fresh(last - first, 0);
        std::size_t missing = 0;
        for (std::size_t i = first; i < last; ++i) {
            const RealizationRecord *hit = cache ? cache->find(i) : nullptr;
            if (hit) {
                records[i - first] = *hit;
            } else {
                fresh[i - first] = 1;
                ++missing;
            }
        }
        if (missing > 0 && result.computed + missing > config.compute_budget) {
            throw InterruptedError("compute budget of " + std::to_string(config.compute_budget) +
                                   " realizations exhausted at index " + std::to_string(first));
        }

        std::vector<BlockAggregate> partial(batch_end - batch_start, BlockAggregate(pairs.size(), overlaps.size()));
        parallel_for(batch_end - batch_start, workers, [&](std::size_t b) {
            const std::size_t lo = (batch_start + b) * kBlockSize;
            const std::size_t hi = std::min(n, lo + kBlockSize);
            for (std::size_t i = lo; i < hi; ++i) {
                if (fresh[i - first]) records[i - first] = evaluate_realization(model, pairs, config.seed, i);
                partial[b].add(records[i - first], overlaps, pairs.size());
            }
        });

        if (cache && missing > 0) {
            std::vector<RealizationRecord> new_records;
            new_records.reserve(missing);
            for (std::size_t k = 0; k < records.size(); ++k) {
                if (fresh[k]) new_records.push_back(std::move(records[k]));
            }
            cache->append(new_records);
        }
        result.computed += missing;
        for (const BlockAggregate &b : partial) total.merge(b);
    }

    finish(result, total, overlaps, pairs);
    if (static_cast<double>(result.failed) > kMaxFailureFraction * static_cast<double>(n)) {
        throw AbortError(std::to_string(result.failed) + " of " + std::to_string(n) +
                         " realizations failed, above the abort threshold");
    }
    return result;
}

}  // namespace qdisorder
