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
#include <vector>

#include <Eigen/Dense>

#include "qdisorder/qubit_measures.hpp"

namespace qdisorder {

enum class Boundary { Open, Cyclic };

/// Disordered XY chain
///
///   H = sum_i J_i/4 [(1+gamma) X_i X_{i+1} + (1-gamma) Y_i Y_{i+1}] - sum_i h_i/2 Z_i
///
/// in units of the overall energy scale. `couplings[i]` couples sites i and
/// i+1; for a cyclic chain `couplings[n-1]` is the wrap bond (n-1, 0), for an
/// open chain it is ignored.
struct XYChainSpec {
    double gamma = 0.0;
    std::vector<double> couplings;
    std::vector<double> fields;
    Boundary boundary = Boundary::Cyclic;

    std::size_t size() const { return fields.size(); }
    /// Throws SpecError unless n >= 3 (n >= 2 for open chains), array lengths match and entries are finite.
    void validate() const;
};

/// How the wrap bond enters the hopping matrix A. `Half` uses J_N/2 like
/// every bulk bond; `Full` uses J_N.
enum class WrapConvention { Half, Full };

/// Quadratic fermion form H = c^dag A c + 1/2 (c^dag B c^dag + h.c.).
struct FermionMatrices {
    Eigen::MatrixXd A;  // symmetric
    Eigen::MatrixXd B;  // antisymmetric
};

struct CorrelationMatrix {
    Eigen::MatrixXd G;
    /// Single-particle energies Lambda_k, descending.
    Eigen::VectorXd energies;
    /// Max-norm residual of the reconstruction of A + B from its factorization.
    double residual = 0.0;
    /// Set when the smallest Lambda_k falls below kZeroModeTolerance.
    bool degenerate = false;
};

inline constexpr double kZeroModeTolerance = 1e-12;

struct BondCorrelators {
    double xx = 0.0;
    double yy = 0.0;
    double zz = 0.0;
};

/// One-site magnetizations and nearest-neighbour correlators. `bonds[i]` is
/// the bond (i, i+1 mod n); open chains carry n-1 bonds.
struct CorrelatorSet {
    std::vector<double> mz;
    std::vector<BondCorrelators> bonds;
    bool degenerate = false;
};

FermionMatrices build_fermion_matrices(const XYChainSpec &spec, WrapConvention wrap = WrapConvention::Half);

/// G = -Psi^T Phi from the singular value decomposition A + B = Psi^T diag(Lambda) Phi.
CorrelationMatrix solve_correlation_matrix(const FermionMatrices &fm);

CorrelatorSet extract_observables(const CorrelationMatrix &g, Boundary boundary);

/// Full pipeline for a whole chain.
CorrelatorSet solve_xy_chain(const XYChainSpec &spec, WrapConvention wrap = WrapConvention::Half);

/// Reduced state of sites (bond, bond+1 mod n).
TwoQubitState pair_state(const CorrelatorSet &c, std::size_t bond);

TwoQubitState pair_density_matrix(const XYChainSpec &spec, std::size_t bond);

/// Eigenvalue (+1 or -1) of prod_i Z_i on the quasiparticle vacuum, the sign
/// of det G. A cyclic chain solved with the periodic fermion boundary term is
/// an exact spin eigenstate only in one of the two sectors; see
/// cyclic_exact_sector() and the README.
int z_parity(const CorrelationMatrix &g);

}  // namespace qdisorder
