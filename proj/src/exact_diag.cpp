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

#include "qdisorder/exact_diag.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "qdisorder/errors.hpp"

namespace qdisorder {
namespace {

using Triplet = Eigen::Triplet<double>;

inline std::uint64_t site_mask(std::size_t n_sites, std::size_t site) {
    return std::uint64_t{1} << (n_sites - 1 - site);
}

// Adds c_xx X_i X_j + c_yy Y_i Y_j + c_zz Z_i Z_j.
void add_bond(std::vector<Triplet> &out, std::size_t n_sites, std::size_t i, std::size_t j, double c_xx, double c_yy,
              double c_zz) {
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    const std::uint64_t mi = site_mask(n_sites, i);
    const std::uint64_t mj = site_mask(n_sites, j);
    for (std::uint64_t s = 0; s < dim; ++s) {
        const bool same = ((s & mi) != 0) == ((s & mj) != 0);
        // Y|0> = i|1>, Y|1> = -i|0>: YY has +1 between antiparallel and -1 between parallel pairs.
        const double off = c_xx + (same ? -c_yy : c_yy);
        if (off != 0.0) {
            out.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s ^ mi ^ mj), off);
        }
        if (c_zz != 0.0) {
            out.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s), same ? c_zz : -c_zz);
        }
    }
}

// Adds c Z_i.
void add_site(std::vector<Triplet> &out, std::size_t n_sites, std::size_t i, double c) {
    if (c == 0.0) return;
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    const std::uint64_t mi = site_mask(n_sites, i);
    for (std::uint64_t s = 0; s < dim; ++s) {
        out.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s), (s & mi) ? -c : c);
    }
}

SpinOperator assemble(std::size_t n_sites, std::vector<Triplet> &triplets) {
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << n_sites);
    SpinOperator h(dim, dim);
    h.setFromTriplets(triplets.begin(), triplets.end());
    h.makeCompressed();
    return h;
}

double operator_scale(const SpinOperator &h) {
    double scale = 0.0;
    for (Eigen::Index r = 0; r < h.outerSize(); ++r) {
        double row = 0.0;
        for (SpinOperator::InnerIterator it(h, r); it; ++it) row += std::abs(it.value());
        scale = std::max(scale, row);
    }
    return scale;
}

}  // namespace

void XYZChainSpec::validate() const {
    if (n_sites < 2 || n_sites > kMaxExactSites) {
        throw SpecError("XYZ chain size " + std::to_string(n_sites) + " outside [2, " + std::to_string(kMaxExactSites) +
                        "]");
    }
    if (couplings.size() != n_sites - 1) {
        throw SpecError("XYZ chain: couplings has length " + std::to_string(couplings.size()) + ", expected " +
                        std::to_string(n_sites - 1));
    }
    if (!std::isfinite(gamma) || !std::isfinite(delta) || !std::isfinite(field)) {
        throw SpecError("XYZ chain: non-finite parameter");
    }
    for (double j : couplings) {
        if (!std::isfinite(j)) throw SpecError("XYZ chain: non-finite coupling");
    }
}

SpinOperator build_xyz_hamiltonian(const XYZChainSpec &spec) {
    spec.validate();
    const std::size_t n = spec.n_sites;
    std::vector<Triplet> triplets;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double j = spec.couplings[i];
        add_bond(triplets, n, i, i + 1, j * (1.0 + spec.gamma), j * (1.0 - spec.gamma), spec.delta);
    }
    for (std::size_t i = 0; i < n; ++i) {
        add_site(triplets, n, i, -spec.field);
    }
    return assemble(n, triplets);
}

SpinOperator build_xy_hamiltonian(const XYChainSpec &spec) {
    spec.validate();
    const std::size_t n = spec.size();
    if (n > kMaxExactSites) {
        throw SpecError("XY chain of " + std::to_string(n) + " sites is too large for exact diagonalization");
    }
    std::vector<Triplet> triplets;
    const std::size_t n_bonds = spec.boundary == Boundary::Cyclic ? n : n - 1;
    for (std::size_t i = 0; i < n_bonds; ++i) {
        const double j = spec.couplings[i];
        add_bond(triplets, n, i, (i + 1) % n, 0.25 * j * (1.0 + spec.gamma), 0.25 * j * (1.0 - spec.gamma), 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        add_site(triplets, n, i, -0.5 * spec.fields[i]);
    }
    return assemble(n, triplets);
}

GroundStateResult ground_state(const SpinOperator &h, const LanczosOptions &options) {
    const Eigen::Index dim = h.rows();
    if (dim == 0 || h.cols() != dim) {
        throw SpecError("ground_state: operator must be square and nonempty");
    }
    const double scale = std::max(operator_scale(h), 1.0);
    const double breakdown = 1e-13 * scale;
    const auto m = static_cast<Eigen::Index>(
        std::min<std::size_t>({options.krylov_dim, options.max_applications_per_restart, static_cast<std::size_t>(dim)}));

    std::mt19937_64 rng(options.start_seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd start(dim);
    for (Eigen::Index i = 0; i < dim; ++i) start(i) = normal(rng);

    GroundStateResult out;
    Eigen::MatrixXd basis(dim, m);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd w(dim);

    for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
        basis.col(0) = start.normalized();
        Eigen::Index k = 0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        for (Eigen::Index j = 0; j < m; ++j) {
            w.noalias() = h * basis.col(j);
            ++out.applications;
            alpha(j) = basis.col(j).dot(w);
            // Classical Gram-Schmidt against the whole basis, repeated once when
            // the first pass cancels most of w.
            double norm_before = w.norm();
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXd overlaps = basis.leftCols(j + 1).transpose() * w;
                w.noalias() -= basis.leftCols(j + 1) * overlaps;
                beta(j) = w.norm();
                if (beta(j) > 0.7071 * norm_before) break;
                norm_before = beta(j);
            }
            k = j + 1;
            const bool exhausted = beta(j) < breakdown || k == m;
            if (!exhausted && k % 10 != 0) {
                basis.col(j + 1) = w / beta(j);
                continue;
            }
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
            for (Eigen::Index r = 0; r < k; ++r) {
                t(r, r) = alpha(r);
                if (r + 1 < k) t(r, r + 1) = t(r + 1, r) = beta(r);
            }
            tri.compute(t);
            const double estimate = exhausted ? 0.0 : beta(j) * std::abs(tri.eigenvectors()(k - 1, 0));
            if (exhausted || estimate < 0.1 * options.tolerance) break;
            basis.col(j + 1) = w / beta(j);
        }

        Eigen::VectorXd x = basis.leftCols(k) * tri.eigenvectors().col(0);
        x.normalize();
        const double theta = tri.eigenvalues()(0);
        w.noalias() = h * x;
        ++out.applications;
        const double residual = (w - theta * x).norm();
        if (residual <= options.tolerance) {
            out.energy = x.dot(w);
            out.state = std::move(x);
            out.residual = residual;
            out.gap = k > 1 ? tri.eigenvalues()(1) - theta : std::numeric_limits<double>::infinity();
            out.degenerate = out.gap < options.degeneracy_gap;
            return out;
        }
        start = x;
        if (k > 1) start += basis.leftCols(k) * tri.eigenvectors().col(1);
    }
    throw ConvergenceError("Lanczos did not converge after " + std::to_string(options.max_restarts) + " restarts");
}

std::vector<Eigen::Index> parity_sector(std::size_t n_sites, int parity) {
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    std::vector<Eigen::Index> out;
    out.reserve(dim / 2);
    for (std::uint64_t s = 0; s < dim; ++s) {
        const int p = (std::popcount(s) % 2 == 0) ? 1 : -1;
        if (p == parity) out.push_back(static_cast<Eigen::Index>(s));
    }
    return out;
}

GroundStateResult sector_ground_state(const SpinOperator &h, std::size_t n_sites, int parity,
                                      const LanczosOptions &options) {
    const std::vector<Eigen::Index> sector = parity_sector(n_sites, parity);
    std::vector<Eigen::Index> position(static_cast<std::size_t>(h.rows()), -1);
    for (std::size_t k = 0; k < sector.size(); ++k) position[sector[k]] = static_cast<Eigen::Index>(k);

    std::vector<Triplet> triplets;
    for (std::size_t k = 0; k < sector.size(); ++k) {
        for (SpinOperator::InnerIterator it(h, sector[k]); it; ++it) {
            const Eigen::Index col = position[it.col()];
            if (col < 0) {
                if (it.value() != 0.0) throw SpecError("operator does not commute with prod_i Z_i");
                continue;
            }
            triplets.emplace_back(static_cast<Eigen::Index>(k), col, it.value());
        }
    }
    const auto dim = static_cast<Eigen::Index>(sector.size());
    SpinOperator block(dim, dim);
    block.setFromTriplets(triplets.begin(), triplets.end());

    GroundStateResult gs = ground_state(block, options);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(h.rows());
    for (std::size_t k = 0; k < sector.size(); ++k) full(sector[k]) = gs.state(static_cast<Eigen::Index>(k));
    gs.state = std::move(full);
    return gs;
}

GroundStateResult z2_ground_state(const SpinOperator &h, std::size_t n_sites, const LanczosOptions &options) {
    GroundStateResult even = sector_ground_state(h, n_sites, +1, options);
    GroundStateResult odd = sector_ground_state(h, n_sites, -1, options);
    const std::size_t applications = even.applications + odd.applications;
    GroundStateResult &low = even.energy <= odd.energy ? even : odd;
    const GroundStateResult &high = even.energy <= odd.energy ? odd : even;
    low.gap = std::min(low.gap, high.energy - low.energy);
    low.degenerate = low.gap < options.degeneracy_gap;
    low.applications = applications;
    return std::move(low);
}

TwoQubitState two_site_rdm(const Eigen::VectorXd &psi, std::size_t n_sites, std::size_t i, std::size_t j) {
    if (i >= j || j >= n_sites) {
        throw SpecError("two_site_rdm needs sites i < j < n");
    }
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    if (static_cast<std::uint64_t>(psi.size()) != dim) {
        throw SpecError("two_site_rdm: state has wrong dimension");
    }
    const std::uint64_t mi = site_mask(n_sites, i);
    const std::uint64_t mj = site_mask(n_sites, j);
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (std::uint64_t s = 0; s < dim; ++s) {
        if (s & (mi | mj)) continue;
        const std::uint64_t idx[4] = {s, s | mj, s | mi, s | mi | mj};
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                rho(a, b) += psi(static_cast<Eigen::Index>(idx[a])) * psi(static_cast<Eigen::Index>(idx[b]));
            }
        }
    }
    rho /= rho.trace();
    return TwoQubitState(rho.cast<std::complex<double>>());
}

TwoQubitState two_site_rdm(const GroundStateResult &gs, std::size_t n_sites, std::size_t i, std::size_t j) {
    return two_site_rdm(gs.state, n_sites, i, j);
}

double site_magnetization(const Eigen::VectorXd &psi, std::size_t n_sites, std::size_t i) {
    const std::uint64_t mi = site_mask(n_sites, i);
    double m = 0.0;
    for (Eigen::Index s = 0; s < psi.size(); ++s) {
        const double p = psi(s) * psi(s);
        m += (static_cast<std::uint64_t>(s) & mi) ? -p : p;
    }
    return m / psi.squaredNorm();
}

}  // namespace qdisorder
