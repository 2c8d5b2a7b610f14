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

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qdisorder/qubit_measures.hpp"

namespace qdisorder::test_support {

using cd = std::complex<double>;

inline Eigen::Vector4cd ket(int a, int b) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    v(2 * a + b) = 1.0;
    return v;
}

inline TwoQubitState singlet() { return TwoQubitState::pure((ket(0, 1) - ket(1, 0)) / std::sqrt(2.0)); }

inline TwoQubitState maximally_mixed() { return TwoQubitState(Eigen::Matrix4cd::Identity() / 4.0); }

/// p |singlet><singlet| + (1 - p) I/4.
inline TwoQubitState werner(double p) {
    return TwoQubitState(p * singlet().matrix() + (1.0 - p) * Eigen::Matrix4cd::Identity() / 4.0);
}

template <int D>
Eigen::Matrix<cd, D, D> haar_unitary(std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    Eigen::Matrix<cd, D, D> z;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) z(i, j) = cd(nd(rng), nd(rng));
    Eigen::HouseholderQR<Eigen::Matrix<cd, D, D>> qr(z);
    Eigen::Matrix<cd, D, D> q = qr.householderQ();
    Eigen::Matrix<cd, D, D> r = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (int i = 0; i < D; ++i) q.col(i) *= std::polar(1.0, -std::arg(r(i, i)));
    return q;
}

/// Random mixed state of rank <= 4 (Ginibre ensemble).
inline TwoQubitState random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    Eigen::Matrix4cd g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = cd(nd(rng), nd(rng));
    Eigen::Matrix4cd rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return TwoQubitState(rho);
}

inline TwoQubitState random_pure(std::mt19937_64 &rng) {
    std::normal_distribution<double> nd;
    Eigen::Vector4cd v;
    for (int i = 0; i < 4; ++i) v(i) = cd(nd(rng), nd(rng));
    return TwoQubitState::pure(v.normalized());
}

}  // namespace qdisorder::test_support
