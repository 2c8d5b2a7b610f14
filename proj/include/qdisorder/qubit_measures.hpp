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

#include <Eigen/Dense>

namespace qdisorder {

/// Which party of a two-qubit state. A is the first tensor factor (the more
/// significant bit of the computational basis index).
enum class Party { A, B };

/// Tolerances applied when a matrix is accepted as a density matrix.
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
/// Eigenvalues in [-kPositivityTolerance, 0) are clamped to zero; anything more
/// negative is rejected with PositivityError.
inline constexpr double kPositivityTolerance = 1e-10;

/// Density matrix of one qubit in the basis |0>, |1> with sigma^z|0> = +|0>.
class SingleQubitState {
   public:
    explicit SingleQubitState(const Eigen::Matrix2cd &rho);

    const Eigen::Matrix2cd &matrix() const { return rho_; }
    /// Eigenvalues in ascending order, after clamping.
    const Eigen::Vector2d &spectrum() const { return spectrum_; }

   private:
    Eigen::Matrix2cd rho_;
    Eigen::Vector2d spectrum_;
};

/// Density matrix of two qubits in the basis |00>, |01>, |10>, |11>.
class TwoQubitState {
   public:
    explicit TwoQubitState(const Eigen::Matrix4cd &rho);

    static TwoQubitState pure(const Eigen::Vector4cd &psi);

    const Eigen::Matrix4cd &matrix() const { return rho_; }
    const Eigen::Vector4d &spectrum() const { return spectrum_; }

   private:
    Eigen::Matrix4cd rho_;
    Eigen::Vector4d spectrum_;
};

/// T(m, n) = Tr(sigma_m (x) sigma_n rho), m, n in {x, y, z}.
struct CorrelationTensor {
    Eigen::Matrix3d T;
};

CorrelationTensor correlation_tensor(const TwoQubitState &rho);

/// Horodecki quantity: sum of the two largest eigenvalues of T^T T. In [0, 2].
double bell_M(const TwoQubitState &rho);
double bell_M(const CorrelationTensor &t);

/// Maximal CHSH expectation over local measurements, 2 sqrt(M).
double bell_max(const TwoQubitState &rho);

/// Amount of CHSH violation, max{0, M - 1}.
double bell_violation(const TwoQubitState &rho);

/// Entropies are in bits, with 0 log 0 = 0.
double von_neumann_entropy(const TwoQubitState &rho);
double von_neumann_entropy(const SingleQubitState &rho);

SingleQubitState partial_trace(const TwoQubitState &rho, Party keep);

/// S(rho_sender) - S(rho_AB) without the clamp at zero.
double dc_advantage_unclamped(const TwoQubitState &rho, Party sender);

/// Quantum advantage of dense coding, max{0, S(rho_sender) - S(rho_AB)}, in bits.
double dc_advantage(const TwoQubitState &rho, Party sender);

/// Dense coding capacity with a qubit sender, 1 + dc_advantage, in bits.
double dc_capacity(const TwoQubitState &rho, Party sender);

/// Assembles rho = 1/4 (II + mA ZI + mB IZ + Txx XX + Tyy YY + Tzz ZZ).
/// Throws PositivityError if the correlators are inconsistent with a state.
TwoQubitState from_pair_observables(double mz_a, double mz_b, double txx, double tyy, double tzz);

}  // namespace qdisorder
