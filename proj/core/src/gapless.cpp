// Copyright 2026 The sssb Authors
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

#include <bit>
#include <cmath>
#include <random>

#include "sssb/purify.hpp"

namespace sssb {

namespace {

using RVector = Eigen::VectorXd;

struct GaplessHamiltonian {
    std::size_t n_qubits = 0;
    std::vector<std::uint64_t> z_terms;
    std::vector<std::uint64_t> x_terms;

    explicit GaplessHamiltonian(std::size_t length) {
        const std::size_t L = length;
        n_qubits = 2 * L - 1;
        auto sys = [](std::size_t i) { return std::uint64_t{1} << i; };
        auto anc = [L](std::size_t l) { return std::uint64_t{1} << (L + l); };
        for (std::size_t i = 0; i + 1 < L; ++i) z_terms.push_back(sys(i) | anc(i) | sys(i + 1));
        for (std::size_t i = 1; i + 1 < L; ++i) x_terms.push_back(anc(i - 1) | sys(i) | anc(i));
        for (std::size_t i = 0; i < L; ++i) x_terms.push_back(sys(i));
        x_terms.push_back(sys(0) | anc(0));
        x_terms.push_back(anc(L - 2) | sys(L - 1));
    }

    void apply(const RVector& in, RVector& out) const {
        const std::uint64_t dim = std::uint64_t{1} << n_qubits;
        for (std::uint64_t b = 0; b < dim; ++b) {
            double diag = 0;
            for (std::uint64_t z : z_terms) diag -= (std::popcount(b & z) & 1) ? -1.0 : 1.0;
            double acc = diag * in[static_cast<Eigen::Index>(b)];
            for (std::uint64_t x : x_terms) acc -= in[static_cast<Eigen::Index>(b ^ x)];
            out[static_cast<Eigen::Index>(b)] = acc;
        }
    }
};

}  // namespace

double gapless_product_energy(std::size_t length) {
    if (length < 2) {
        throw PreconditionError("gapless chain needs L >= 2");
    }
    return -static_cast<double>(length);
}

GaplessResult build_gapless_spt(std::size_t length, const GaplessOptions& options) {
    if (length < 2 || 2 * length - 1 > kGaplessQubitBudget) {
        throw PreconditionError("gapless chain needs 2 <= L and 2L-1 <= 18 qubits");
    }
    const GaplessHamiltonian h(length);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << h.n_qubits);
    const std::size_t m = std::min<std::size_t>(options.krylov_dim, static_cast<std::size_t>(dim));

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> gauss;
    RVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
    v.normalize();

    Eigen::MatrixXd basis(dim, static_cast<Eigen::Index>(m));
    RVector w(dim), hv(dim);
    double energy = 0, residual = INFINITY;
    std::size_t restart = 0;
    for (; restart < options.max_restarts; ++restart) {
        std::vector<double> alpha, beta;
        basis.col(0) = v;
        std::size_t k = 0;
        for (; k < m; ++k) {
            h.apply(basis.col(static_cast<Eigen::Index>(k)), w);
            alpha.push_back(basis.col(static_cast<Eigen::Index>(k)).dot(w));
            // Two passes of full reorthogonalization.
            for (int pass = 0; pass < 2; ++pass) {
                const auto cols = static_cast<Eigen::Index>(k + 1);
                const RVector coeff = basis.leftCols(cols).transpose() * w;
                w.noalias() -= basis.leftCols(cols) * coeff;
            }
            const double b = w.norm();
            if (k + 1 == m || b < 1e-12) {
                ++k;
                break;
            }
            beta.push_back(b);
            basis.col(static_cast<Eigen::Index>(k + 1)) = w / b;
        }
        const auto kk = static_cast<Eigen::Index>(k);
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(kk, kk);
        for (Eigen::Index i = 0; i < kk; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < kk) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        energy = es.eigenvalues()[0];
        v = basis.leftCols(kk) * es.eigenvectors().col(0);
        v.normalize();
        h.apply(v, hv);
        residual = (hv - energy * v).norm();
        if (residual <= options.residual_tolerance) break;
    }
    if (residual > options.residual_tolerance) {
        throw std::runtime_error("gapless ground state did not converge: residual " + std::to_string(residual));
    }
    const Lattice lat = Lattice::chain(length, Boundary::Open, Layout::VertexSystemLinkAncilla);
    StateVector psi(h.n_qubits, v.cast<cplx>());
    return {PurifiedState{std::move(psi), lat, 0.0, SptFamily::GaplessCluster}, energy, residual, restart};
}

}  // namespace sssb
