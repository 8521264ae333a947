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

#include <algorithm>
#include <cmath>

#include "sssb/qcore.hpp"

namespace sssb {

namespace {

Eigen::Index to_index(std::uint64_t i) { return static_cast<Eigen::Index>(i); }

void check_targets(std::span<const std::size_t> targets, std::size_t n_qubits) {
    std::uint64_t seen = 0;
    for (std::size_t t : targets) {
        if (t >= n_qubits) {
            throw PreconditionError("target qubit " + std::to_string(t) + " outside register");
        }
        if ((seen >> t) & 1) {
            throw PreconditionError("duplicate target qubit " + std::to_string(t));
        }
        seen |= std::uint64_t{1} << t;
    }
}

// Left-multiplies every column of `m` (2^n rows) by `g` embedded on `targets`.
void left_apply_inplace(CMatrix& m, const CMatrix& g, std::span<const std::size_t> targets) {
    const std::size_t k = targets.size();
    const std::size_t sub = std::size_t{1} << k;
    std::uint64_t tmask = 0;
    for (std::size_t t : targets) tmask |= std::uint64_t{1} << t;

    std::vector<std::uint64_t> offsets(sub);
    for (std::size_t a = 0; a < sub; ++a) {
        std::uint64_t off = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if ((a >> j) & 1) off |= std::uint64_t{1} << targets[j];
        }
        offsets[a] = off;
    }

    const auto rows = static_cast<std::uint64_t>(m.rows());
    CVector in(static_cast<Eigen::Index>(sub)), out(static_cast<Eigen::Index>(sub));
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        for (std::uint64_t base = 0; base < rows; ++base) {
            if (base & tmask) continue;
            for (std::size_t a = 0; a < sub; ++a) in[to_index(a)] = m(to_index(base | offsets[a]), col);
            out.noalias() = g * in;
            for (std::size_t a = 0; a < sub; ++a) m(to_index(base | offsets[a]), col) = out[to_index(a)];
        }
    }
}

std::size_t log2_exact(std::size_t dim) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < dim) ++k;
    if ((std::size_t{1} << k) != dim) {
        throw PreconditionError("operator dimension is not a power of two");
    }
    return k;
}

// Splits basis index b into the bits listed in `keep` (packed) and the rest (packed).
struct IndexSplit {
    std::vector<std::uint64_t> keep_of, rest_of;
    std::size_t keep_dim = 0, rest_dim = 0;
};

IndexSplit split_register(std::size_t n_qubits, std::span<const std::size_t> keep) {
    if (keep.empty()) {
        throw PreconditionError("partial_trace: keep list is empty");
    }
    check_targets(keep, n_qubits);
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n_qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    }
    IndexSplit s;
    const std::size_t dim = std::size_t{1} << n_qubits;
    s.keep_dim = std::size_t{1} << keep.size();
    s.rest_dim = std::size_t{1} << rest.size();
    s.keep_of.resize(dim);
    s.rest_of.resize(dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::uint64_t kb = 0, rb = 0;
        for (std::size_t j = 0; j < keep.size(); ++j) kb |= ((b >> keep[j]) & 1) << j;
        for (std::size_t j = 0; j < rest.size(); ++j) rb |= ((b >> rest[j]) & 1) << j;
        s.keep_of[b] = kb;
        s.rest_of[b] = rb;
    }
    return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::size_t n_qubits, CVector amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits > 28) {
        throw PreconditionError("StateVector register too large");
    }
    if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_qubits)) {
        throw PreconditionError("StateVector amplitude count must be 2^n");
    }
}

StateVector StateVector::basis(std::size_t n_qubits, std::uint64_t index) {
    CVector v = CVector::Zero(to_index(std::uint64_t{1} << n_qubits));
    if (index >= static_cast<std::uint64_t>(v.size())) {
        throw PreconditionError("basis index outside register");
    }
    v[to_index(index)] = 1.0;
    return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::product(std::span<const std::array<cplx, 2>> states) {
    CVector v = CVector::Ones(1);
    for (const auto& s : states) {
        CVector next(v.size() * 2);
        next.head(v.size()) = v * s[0];
        next.tail(v.size()) = v * s[1];
        v = std::move(next);
    }
    return StateVector(states.size(), std::move(v)).normalized();
}

StateVector StateVector::plus_state(std::size_t n_qubits) {
    const auto dim = to_index(std::uint64_t{1} << n_qubits);
    return StateVector(n_qubits, CVector::Constant(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0)));
}

StateVector StateVector::normalized() const {
    const double nrm = norm();
    if (nrm < tol::construction) {
        throw PreconditionError("cannot normalize a zero vector");
    }
    return StateVector(n_, amps_ / nrm);
}

cplx StateVector::inner(const StateVector& ket) const {
    if (ket.n_ != n_) {
        throw PreconditionError("inner product: register size mismatch");
    }
    return amps_.dot(ket.amps_);
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(std::size_t n_qubits, CMatrix entries) : n_(n_qubits), m_(std::move(entries)) {
    const auto dim = std::size_t{1} << n_qubits;
    if (static_cast<std::size_t>(m_.rows()) != dim || static_cast<std::size_t>(m_.cols()) != dim) {
        throw PreconditionError("DensityMatrix entries must be 2^n x 2^n");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    const CVector& a = psi.amplitudes();
    return DensityMatrix(psi.n_qubits(), a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
    const auto dim = to_index(std::uint64_t{1} << n_qubits);
    return DensityMatrix(n_qubits, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid(double tolerance) const {
    return hermiticity_error() <= tolerance && std::abs(trace() - 1.0) <= tolerance && min_eigenvalue() >= -tolerance;
}

// ---------------------------------------------------------------------------
// DenseOperator

double DenseOperator::unitarity_error() const {
    const auto d = matrix.rows();
    return (matrix.adjoint() * matrix - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

DenseOperator make_unitary(CMatrix matrix, std::vector<std::size_t> targets) {
    if (matrix.rows() != matrix.cols()) {
        throw PreconditionError("operator must be square");
    }
    const std::size_t k = log2_exact(static_cast<std::size_t>(matrix.rows()));
    if (!targets.empty() && targets.size() != k) {
        throw PreconditionError("target count does not match operator dimension");
    }
    DenseOperator op{std::move(matrix), std::move(targets), true};
    if (op.unitarity_error() > tol::identity) {
        throw PreconditionError("operator is not unitary within tolerance");
    }
    return op;
}

// ---------------------------------------------------------------------------
// Pauli kernels

StateVector apply_pauli(const StateVector& psi, const PauliString& p) {
    if (p.n_qubits() != psi.n_qubits()) {
        throw PreconditionError("apply_pauli: register size mismatch");
    }
    CVector out(psi.amplitudes().size());
    for (std::uint64_t b = 0; b < psi.dim(); ++b) {
        auto [c, img] = p.act_on_basis(b);
        out[to_index(img)] = c * psi[b];
    }
    return StateVector(psi.n_qubits(), std::move(out));
}

CMatrix conjugate_by_pauli(const CMatrix& m, const PauliString& p) {
    const auto dim = static_cast<std::uint64_t>(m.rows());
    if (dim != (std::uint64_t{1} << p.n_qubits())) {
        throw PreconditionError("conjugate_by_pauli: register size mismatch");
    }
    std::vector<cplx> coef(dim);
    for (std::uint64_t b = 0; b < dim; ++b) coef[b] = p.act_on_basis(b ^ p.x_mask()).first;
    CMatrix out(m.rows(), m.cols());
    const std::uint64_t x = p.x_mask();
    for (std::uint64_t j = 0; j < dim; ++j) {
        const cplx cj = std::conj(coef[j]);
        for (std::uint64_t i = 0; i < dim; ++i) {
            out(to_index(i), to_index(j)) = coef[i] * m(to_index(i ^ x), to_index(j ^ x)) * cj;
        }
    }
    return out;
}

CMatrix left_multiply_pauli(const CMatrix& m, const PauliString& p) {
    const auto dim = static_cast<std::uint64_t>(m.rows());
    if (dim != (std::uint64_t{1} << p.n_qubits())) {
        throw PreconditionError("left_multiply_pauli: register size mismatch");
    }
    CMatrix out(m.rows(), m.cols());
    for (std::uint64_t b = 0; b < dim; ++b) {
        auto [c, img] = p.act_on_basis(b);
        out.row(to_index(img)) = c * m.row(to_index(b));
    }
    return out;
}

DensityMatrix apply_pauli(const DensityMatrix& rho, const PauliString& p, bool two_sided) {
    if (p.n_qubits() != rho.n_qubits()) {
        throw PreconditionError("apply_pauli: register size mismatch");
    }
    return DensityMatrix(rho.n_qubits(),
                         two_sided ? conjugate_by_pauli(rho.matrix(), p) : left_multiply_pauli(rho.matrix(), p));
}

// ---------------------------------------------------------------------------
// Dense gates

StateVector apply_gate(const StateVector& psi, const DenseOperator& gate, std::span<const std::size_t> targets) {
    if (!gate.unitary || gate.unitarity_error() > tol::identity) {
        throw PreconditionError("apply_gate: gate is not unitary");
    }
    if ((std::size_t{1} << targets.size()) != gate.dimension()) {
        throw PreconditionError("apply_gate: target count does not match gate dimension");
    }
    check_targets(targets, psi.n_qubits());
    CMatrix col = psi.amplitudes();
    left_apply_inplace(col, gate.matrix, targets);
    return StateVector(psi.n_qubits(), col.col(0));
}

StateVector apply_gate(const StateVector& psi, const DenseOperator& gate) { return apply_gate(psi, gate, gate.targets); }

CMatrix conjugate_by_operator(const CMatrix& m, const CMatrix& g, std::span<const std::size_t> targets,
                              std::size_t n_qubits) {
    if ((std::size_t{1} << targets.size()) != static_cast<std::size_t>(g.rows())) {
        throw PreconditionError("conjugate_by_operator: target count does not match operator dimension");
    }
    if (static_cast<std::size_t>(m.rows()) != (std::size_t{1} << n_qubits)) {
        throw PreconditionError("conjugate_by_operator: register size mismatch");
    }
    check_targets(targets, n_qubits);
    CMatrix a = m;
    left_apply_inplace(a, g, targets);
    CMatrix b = a.adjoint();
    left_apply_inplace(b, g, targets);
    return b.adjoint();
}

CMatrix embed_operator(const CMatrix& g, std::span<const std::size_t> targets, std::size_t n_qubits) {
    if ((std::size_t{1} << targets.size()) != static_cast<std::size_t>(g.rows())) {
        throw PreconditionError("embed_operator: target count does not match operator dimension");
    }
    check_targets(targets, n_qubits);
    const auto dim = to_index(std::uint64_t{1} << n_qubits);
    CMatrix out = CMatrix::Identity(dim, dim);
    left_apply_inplace(out, g, targets);
    return out;
}

// ---------------------------------------------------------------------------
// Reductions

DensityMatrix partial_trace(const StateVector& psi, std::span<const std::size_t> keep) {
    const IndexSplit s = split_register(psi.n_qubits(), keep);
    CMatrix block = CMatrix::Zero(to_index(s.keep_dim), to_index(s.rest_dim));
    for (std::uint64_t b = 0; b < psi.dim(); ++b) block(to_index(s.keep_of[b]), to_index(s.rest_of[b])) = psi[b];
    return DensityMatrix(keep.size(), block * block.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
    const IndexSplit s = split_register(rho.n_qubits(), keep);
    CMatrix out = CMatrix::Zero(to_index(s.keep_dim), to_index(s.keep_dim));
    const std::uint64_t dim = rho.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
        for (std::uint64_t j = 0; j < dim; ++j) {
            if (s.rest_of[i] != s.rest_of[j]) continue;
            out(to_index(s.keep_of[i]), to_index(s.keep_of[j])) += rho.matrix()(to_index(i), to_index(j));
        }
    }
    return DensityMatrix(keep.size(), std::move(out));
}

CMatrix matrix_sqrt_psd(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (ev[k] < -tol::psd_reject) {
            throw PreconditionError("matrix_sqrt_psd: eigenvalue " + std::to_string(ev[k]) + " below -1e-8");
        }
        ev[k] = ev[k] < tol::psd_clamp ? 0.0 : std::sqrt(ev[k]);
    }
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

DenseOperator matrix_sqrt_psd(const DensityMatrix& rho) {
    std::vector<std::size_t> targets(rho.n_qubits());
    for (std::size_t q = 0; q < targets.size(); ++q) targets[q] = q;
    return DenseOperator{matrix_sqrt_psd(rho.matrix()), std::move(targets), false};
}

double purity(const DensityMatrix& rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return rho.matrix().squaredNorm();
}

cplx expectation(const StateVector& psi, const PauliString& p) { return psi.inner(apply_pauli(psi, p)); }

cplx expectation(const DensityMatrix& rho, const PauliString& p) {
    if (p.n_qubits() != rho.n_qubits()) {
        throw PreconditionError("expectation: register size mismatch");
    }
    // Tr(P rho) = sum_b <b|P rho|b> = sum_b c(b^x) rho_{b^x, b}
    cplx acc = 0;
    for (std::uint64_t b = 0; b < rho.dim(); ++b) {
        auto [c, img] = p.act_on_basis(b);
        acc += c * rho.matrix()(to_index(b), to_index(img));
    }
    return acc;
}

double von_neumann_entropy(const CMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    double s = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double l = es.eigenvalues()[k];
        if (l > 1e-15) s -= l * std::log(l);
    }
    return s;
}

}  // namespace sssb
