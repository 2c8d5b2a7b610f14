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

#include "qdisorder/free_fermion.hpp"

#include <cmath>
#include <string>

#include "qdisorder/errors.hpp"

namespace qdisorder {

void XYChainSpec::validate() const {
    const std::size_t n = fields.size();
    const std::size_t min_sites = boundary == Boundary::Cyclic ? 3 : 2;
    if (n < min_sites) {
        throw SpecError("XY chain needs at least " + std::to_string(min_sites) + " sites, got " + std::to_string(n));
    }
    if (couplings.size() != n) {
        throw SpecError("XY chain: couplings has length " + std::to_string(couplings.size()) + ", expected " +
                        std::to_string(n));
    }
    if (!std::isfinite(gamma)) {
        throw SpecError("XY chain: gamma is not finite");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(couplings[i]) || !std::isfinite(fields[i])) {
            throw SpecError("XY chain: non-finite parameter at site " + std::to_string(i));
        }
    }
}

FermionMatrices build_fermion_matrices(const XYChainSpec &spec, WrapConvention wrap) {
    spec.validate();
    const auto n = static_cast<Eigen::Index>(spec.size());
    FermionMatrices fm{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        fm.A(i, i) = -spec.fields[i];
    }
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double j = spec.couplings[i];
        fm.A(i, i + 1) = fm.A(i + 1, i) = 0.5 * j;
        fm.B(i, i + 1) = 0.5 * spec.gamma * j;
        fm.B(i + 1, i) = -0.5 * spec.gamma * j;
    }
    if (spec.boundary == Boundary::Cyclic) {
        const double j = spec.couplings[n - 1];
        const double a_wrap = wrap == WrapConvention::Half ? 0.5 * j : j;
        fm.A(0, n - 1) += a_wrap;
        fm.A(n - 1, 0) += a_wrap;
        fm.B(0, n - 1) += -0.5 * spec.gamma * j;
        fm.B(n - 1, 0) += 0.5 * spec.gamma * j;
    }
    return fm;
}

CorrelationMatrix solve_correlation_matrix(const FermionMatrices &fm) {
    const Eigen::MatrixXd m = fm.A + fm.B;
    // Columns of U are Psi_k^T, columns of V are Phi_k^T.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    CorrelationMatrix out;
    out.energies = svd.singularValues();
    out.G = -svd.matrixU() * svd.matrixV().transpose();
    const Eigen::MatrixXd rebuilt = svd.matrixU() * out.energies.asDiagonal() * svd.matrixV().transpose();
    out.residual = (m - rebuilt).cwiseAbs().maxCoeff();
    out.degenerate = out.energies.size() > 0 && out.energies(out.energies.size() - 1) < kZeroModeTolerance;
    return out;
}

CorrelatorSet extract_observables(const CorrelationMatrix &g, Boundary boundary) {
    const Eigen::MatrixXd &G = g.G;
    const auto n = G.rows();
    CorrelatorSet out;
    out.degenerate = g.degenerate;
    out.mz.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.mz[i] = G(i, i);
    }
    const Eigen::Index n_bonds = boundary == Boundary::Cyclic ? n : n - 1;
    out.bonds.resize(n_bonds);
    for (Eigen::Index i = 0; i < n_bonds; ++i) {
        const Eigen::Index j = (i + 1) % n;
        BondCorrelators &b = out.bonds[i];
        b.xx = G(i, j);
        b.yy = G(j, i);
        b.zz = G(i, i) * G(j, j) - G(i, j) * G(j, i);
    }
    return out;
}

CorrelatorSet solve_xy_chain(const XYChainSpec &spec, WrapConvention wrap) {
    return extract_observables(solve_correlation_matrix(build_fermion_matrices(spec, wrap)), spec.boundary);
}

TwoQubitState pair_state(const CorrelatorSet &c, std::size_t bond) {
    if (bond >= c.bonds.size()) {
        throw SpecError("bond index " + std::to_string(bond) + " out of range");
    }
    const std::size_t j = (bond + 1) % c.mz.size();
    const BondCorrelators &b = c.bonds[bond];
    return from_pair_observables(c.mz[bond], c.mz[j], b.xx, b.yy, b.zz);
}

TwoQubitState pair_density_matrix(const XYChainSpec &spec, std::size_t bond) {
    return pair_state(solve_xy_chain(spec), bond);
}

int z_parity(const CorrelationMatrix &g) {
    // <prod Z> = det G on a Gaussian state
    return g.G.determinant() > 0.0 ? 1 : -1;
}

}  // namespace qdisorder
