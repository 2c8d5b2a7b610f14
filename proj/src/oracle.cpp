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

#include "qdisorder/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qdisorder/errors.hpp"
#include "qdisorder/exact_diag.hpp"
#include "qdisorder/random.hpp"

namespace qdisorder {

int cyclic_exact_sector(std::size_t n_sites) { return n_sites % 2 == 0 ? -1 : 1; }

double ObservableDeviation::max() const { return std::max({mz, xx, yy, zz}); }

void ObservableDeviation::absorb(const ObservableDeviation &o) {
    mz = std::max(mz, o.mz);
    xx = std::max(xx, o.xx);
    yy = std::max(yy, o.yy);
    zz = std::max(zz, o.zz);
}

namespace {

ObservableDeviation deviation(const CorrelatorSet &c, const Eigen::VectorXd &psi, std::size_t n, Boundary boundary) {
    ObservableDeviation d;
    for (std::size_t i = 0; i < n; ++i) {
        d.mz = std::max(d.mz, std::abs(site_magnetization(psi, n, i) - c.mz[i]));
    }
    const std::size_t n_bonds = boundary == Boundary::Open ? n - 1 : n;
    for (std::size_t b = 0; b < n_bonds; ++b) {
        const std::size_t j = (b + 1) % n;
        // The tensor is symmetric under the swap for these diagonal entries.
        const Eigen::Matrix3d t = correlation_tensor(two_site_rdm(psi, n, std::min(b, j), std::max(b, j))).T;
        d.xx = std::max(d.xx, std::abs(t(0, 0) - c.bonds[b].xx));
        d.yy = std::max(d.yy, std::abs(t(1, 1) - c.bonds[b].yy));
        d.zz = std::max(d.zz, std::abs(t(2, 2) - c.bonds[b].zz));
    }
    return d;
}

}  // namespace

ObservableDeviation compare_with_exact(const XYChainSpec &spec, WrapConvention wrap) {
    spec.validate();
    const std::size_t n = spec.size();
    const CorrelationMatrix g = solve_correlation_matrix(build_fermion_matrices(spec, wrap));
    const CorrelatorSet c = extract_observables(g, spec.boundary);
    const SpinOperator h = build_xy_hamiltonian(spec);
    const GroundStateResult gs =
        spec.boundary == Boundary::Open ? z2_ground_state(h, n) : sector_ground_state(h, n, z_parity(g));
    return deviation(c, gs.state, n, spec.boundary);
}

OracleReport run_oracle_suite(const OracleOptions &options) {
    OracleReport report;
    const std::size_t n = options.n_sites;
    for (std::size_t gi = 0; gi < options.gammas.size(); ++gi) {
        for (std::size_t r = 0; r < options.realizations_per_gamma; ++r) {
            GaussianStream normal(options.seed, r, gi);
            XYChainSpec spec;
            spec.gamma = options.gammas[gi];
            for (std::size_t i = 0; i < n; ++i) {
                spec.couplings.push_back(options.coupling_mean + options.coupling_sigma * normal());
                spec.fields.push_back(options.field_mean + options.field_sigma * normal());
            }
            for (Boundary bc : {Boundary::Open, Boundary::Cyclic}) {
                spec.boundary = bc;
                const CorrelationMatrix g = solve_correlation_matrix(build_fermion_matrices(spec));
                const CorrelatorSet c = extract_observables(g, bc);
                const SpinOperator h = build_xy_hamiltonian(spec);
                if (bc == Boundary::Open) {
                    const GroundStateResult gs = z2_ground_state(h, n);
                    if (gs.degenerate || g.degenerate) {
                        ++report.skipped_degenerate;
                        continue;
                    }
                    report.open.absorb(deviation(c, gs.state, n, bc));
                    ++report.open_compared;
                    continue;
                }
                if (g.degenerate) {
                    ++report.skipped_degenerate;
                    continue;
                }
                const int parity = z_parity(g);
                if (parity == cyclic_exact_sector(n)) {
                    report.cyclic.absorb(deviation(c, sector_ground_state(h, n, parity).state, n, bc));
                    ++report.cyclic_compared;
                } else {
                    ++report.cyclic_parity_caveat;
                    const GroundStateResult gs = z2_ground_state(h, n);
                    if (!gs.degenerate) report.cyclic_caveat.absorb(deviation(c, gs.state, n, bc));
                }
            }
        }
    }
    return report;
}

}  // namespace qdisorder
