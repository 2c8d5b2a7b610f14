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

#include "qdisorder/qubit_measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "qdisorder/errors.hpp"

namespace qdisorder {
namespace {

using cd = std::complex<double>;

const std::array<Eigen::Matrix2cd, 3> &paulis() {
    static const std::array<Eigen::Matrix2cd, 3> p = [] {
        std::array<Eigen::Matrix2cd, 3> out;
        out[0] << 0, 1, 1, 0;
        out[1] << 0, cd(0, -1), cd(0, 1), 0;
        out[2] << 1, 0, 0, -1;
        return out;
    }();
    return p;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

// Validates a candidate density matrix in place and returns its clamped spectrum.
template <typename Matrix, typename Vector>
Vector validate_density_matrix(Matrix &rho) {
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (!(herm <= kHermiticityTolerance)) {
        throw StateError("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const double trace_error = std::abs(rho.trace() - cd(1.0, 0.0));
    if (!(trace_error <= kTraceTolerance)) {
        throw StateError("density matrix does not have unit trace (deviation " + std::to_string(trace_error) + ")");
    }
    rho = (0.5 * (rho + rho.adjoint())).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho);
    Vector lambda = eig.eigenvalues();
    if (lambda(0) < -kPositivityTolerance) {
        throw PositivityError("density matrix has eigenvalue " + std::to_string(lambda(0)));
    }
    if (lambda(0) < 0.0) {
        lambda = lambda.cwiseMax(0.0);
        lambda /= lambda.sum();
        rho = eig.eigenvectors() * lambda.template cast<cd>().asDiagonal() * eig.eigenvectors().adjoint();
    }
    return lambda;
}

template <typename Vector>
double entropy_bits(const Vector &lambda) {
    double s = 0.0;
    for (int i = 0; i < lambda.size(); ++i) {
        if (lambda(i) > 0.0) {
            s -= lambda(i) * std::log2(lambda(i));
        }
    }
    // an eigenvalue of 1 + eps contributes a tiny negative term
    return std::max(0.0, s);
}

}  // namespace

SingleQubitState::SingleQubitState(const Eigen::Matrix2cd &rho) : rho_(rho) {
    spectrum_ = validate_density_matrix<Eigen::Matrix2cd, Eigen::Vector2d>(rho_);
}

TwoQubitState::TwoQubitState(const Eigen::Matrix4cd &rho) : rho_(rho) {
    spectrum_ = validate_density_matrix<Eigen::Matrix4cd, Eigen::Vector4d>(rho_);
}

TwoQubitState TwoQubitState::pure(const Eigen::Vector4cd &psi) {
    const Eigen::Vector4cd v = psi.normalized();
    return TwoQubitState(v * v.adjoint());
}

CorrelationTensor correlation_tensor(const TwoQubitState &rho) {
    CorrelationTensor t;
    const auto &p = paulis();
    for (int m = 0; m < 3; ++m) {
        for (int n = 0; n < 3; ++n) {
            // Tr(P rho) for Hermitian P and rho is real; the imaginary part is round-off.
            t.T(m, n) = (kron(p[m], p[n]) * rho.matrix()).trace().real();
        }
    }
    return t;
}

double bell_M(const CorrelationTensor &t) {
    const Eigen::Matrix3d u = t.T.transpose() * t.T;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(u, Eigen::EigenvaluesOnly);
    const Eigen::Vector3d &ev = eig.eigenvalues();
    return std::max(0.0, ev(1) + ev(2));
}

double bell_M(const TwoQubitState &rho) { return bell_M(correlation_tensor(rho)); }

double bell_max(const TwoQubitState &rho) { return 2.0 * std::sqrt(bell_M(rho)); }

double bell_violation(const TwoQubitState &rho) { return std::max(0.0, bell_M(rho) - 1.0); }

double von_neumann_entropy(const TwoQubitState &rho) { return entropy_bits(rho.spectrum()); }

double von_neumann_entropy(const SingleQubitState &rho) { return entropy_bits(rho.spectrum()); }

SingleQubitState partial_trace(const TwoQubitState &rho, Party keep) {
    const Eigen::Matrix4cd &m = rho.matrix();
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a) {
        for (int ap = 0; ap < 2; ++ap) {
            for (int k = 0; k < 2; ++k) {
                if (keep == Party::A) {
                    out(a, ap) += m(2 * a + k, 2 * ap + k);
                } else {
                    out(a, ap) += m(2 * k + a, 2 * k + ap);
                }
            }
        }
    }
    return SingleQubitState(out);
}

double dc_advantage_unclamped(const TwoQubitState &rho, Party sender) {
    return von_neumann_entropy(partial_trace(rho, sender)) - von_neumann_entropy(rho);
}

double dc_advantage(const TwoQubitState &rho, Party sender) {
    return std::max(0.0, dc_advantage_unclamped(rho, sender));
}

double dc_capacity(const TwoQubitState &rho, Party sender) { return 1.0 + dc_advantage(rho, sender); }

TwoQubitState from_pair_observables(double mz_a, double mz_b, double txx, double tyy, double tzz) {
    for (double v : {mz_a, mz_b, txx, tyy, tzz}) {
        if (!std::isfinite(v) || std::abs(v) > 1.0 + kPositivityTolerance) {
            throw PositivityError("pair observable outside [-1, 1]: " + std::to_string(v));
        }
    }
    // Only the X-shaped entries are nonzero for this family of correlators.
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = 0.25 * (1.0 + mz_a + mz_b + tzz);
    rho(1, 1) = 0.25 * (1.0 + mz_a - mz_b - tzz);
    rho(2, 2) = 0.25 * (1.0 - mz_a + mz_b - tzz);
    rho(3, 3) = 0.25 * (1.0 - mz_a - mz_b + tzz);
    rho(0, 3) = rho(3, 0) = 0.25 * (txx - tyy);
    rho(1, 2) = rho(2, 1) = 0.25 * (txx + tyy);
    return TwoQubitState(rho);
}

}  // namespace qdisorder
