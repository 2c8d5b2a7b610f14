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
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qdisorder/free_fermion.hpp"
#include "qdisorder/qubit_measures.hpp"

namespace qdisorder {

/// Largest chain handled by exact diagonalization.
inline constexpr std::size_t kMaxExactSites = 14;

/// Open XYZ chain with random couplings in a uniform field:
///
///   H = sum_i [J_i ((1+gamma) X_i X_{i+1} + (1-gamma) Y_i Y_{i+1}) + Delta Z_i Z_{i+1}] - h sum_i Z_i
///
/// No 1/4 and 1/2 prefactors, unlike XYChainSpec. An XYZ chain with Delta = 0
/// equals an open XYChainSpec with couplings 4 J_i and fields 2 h.
struct XYZChainSpec {
    std::size_t n_sites = 0;
    double gamma = 0.0;
    double delta = 0.0;
    double field = 0.0;
    std::vector<double> couplings;  // length n_sites - 1

    void validate() const;
};

/// Real symmetric operator on the 2^n computational basis. Site 0 is the most
/// significant bit and a 0 bit is the sigma^z = +1 state.
using SpinOperator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

SpinOperator build_xyz_hamiltonian(const XYZChainSpec &spec);

/// The XY chain in its own normalization, open or cyclic per spec.boundary.
SpinOperator build_xy_hamiltonian(const XYChainSpec &spec);

struct LanczosOptions {
    std::size_t krylov_dim = 100;
    std::size_t max_restarts = 50;
    std::size_t max_applications_per_restart = 5000;
    double tolerance = 1e-10;
    double degeneracy_gap = 1e-9;
    std::uint64_t start_seed = 0x5eed;
};

struct GroundStateResult {
    double energy = 0.0;
    Eigen::VectorXd state;
    /// Gap from the ground energy to the next distinct level that was resolved.
    double gap = 0.0;
    bool degenerate = false;
    double residual = 0.0;
    std::size_t applications = 0;
};

/// Lowest eigenpair of a real symmetric operator by restarted Lanczos with
/// full reorthogonalization. Throws ConvergenceError past the iteration caps.
GroundStateResult ground_state(const SpinOperator &h, const LanczosOptions &options = {});

/// Basis indices whose eigenvalue of prod_i Z_i is `parity` (+1 or -1).
std::vector<Eigen::Index> parity_sector(std::size_t n_sites, int parity);

/// Ground state inside one Z-parity sector, embedded back into the full space.
GroundStateResult sector_ground_state(const SpinOperator &h, std::size_t n_sites, int parity,
                                      const LanczosOptions &options = {});

/// Ground state of an operator commuting with prod_i Z_i: both sectors are
/// solved separately and the lower one returned. `degenerate` is set when the
/// sector energies are closer than options.degeneracy_gap.
GroundStateResult z2_ground_state(const SpinOperator &h, std::size_t n_sites, const LanczosOptions &options = {});

/// Reduced density matrix of sites i < j.
TwoQubitState two_site_rdm(const Eigen::VectorXd &psi, std::size_t n_sites, std::size_t i, std::size_t j);
TwoQubitState two_site_rdm(const GroundStateResult &gs, std::size_t n_sites, std::size_t i, std::size_t j);

/// <psi| Z_i |psi>.
double site_magnetization(const Eigen::VectorXd &psi, std::size_t n_sites, std::size_t i);

}  // namespace qdisorder
