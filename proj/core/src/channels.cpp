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

#include "sssb/channels.hpp"

namespace sssb {

namespace {

CMatrix full_matrix(const KrausTerm& term, std::size_t n_qubits) {
    if (term.is_pauli()) return term.pauli().to_matrix();
    const DenseOperator& d = term.dense();
    return embed_operator(d.matrix, d.targets, n_qubits);
}

void require_periodic_links(const Lattice& lat) {
    if (lat.is_chain() || lat.boundary() != Boundary::Periodic) {
        throw PreconditionError("toric-code register needs a periodic square lattice");
    }
    if (lat.layout() != Layout::LinkSystem && lat.layout() != Layout::LinkSystemVertexAncilla) {
        throw PreconditionError("toric-code register needs system qubits on links");
    }
}

void require_vertex_system(const Lattice& lat) {
    if (lat.layout() == Layout::LinkSystem || lat.layout() == Layout::LinkSystemVertexAncilla) {
        throw PreconditionError("channel needs system qubits on vertices");
    }
}

}  // namespace

KrausChannel::KrausChannel(std::size_t n_qubits, std::vector<KrausTerm> kraus) : n_(n_qubits), kraus_(std::move(kraus)) {
    for (const KrausTerm& k : kraus_) {
        if (k.weight < 0) {
            throw PreconditionError("Kraus weight must be nonnegative");
        }
        if (k.is_pauli() && k.pauli().n_qubits() != n_) {
            throw PreconditionError("Kraus Pauli register mismatch");
        }
        if (!k.is_pauli() && (std::size_t{1} << k.dense().targets.size()) != k.dense().dimension()) {
            throw PreconditionError("dense Kraus operator needs explicit targets");
        }
    }
}

double KrausChannel::trace_preservation_error() const {
    double pauli_weight = 0;
    bool any_dense = false;
    for (const KrausTerm& k : kraus_) {
        if (k.is_pauli()) pauli_weight += k.weight;
        else any_dense = true;
    }
    if (!any_dense) return std::abs(pauli_weight - 1.0);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_);
    CMatrix acc = CMatrix::Identity(dim, dim) * (pauli_weight - 1.0);
    for (const KrausTerm& k : kraus_) {
        if (k.is_pauli()) continue;
        const CMatrix m = full_matrix(k, n_);
        acc += k.weight * m.adjoint() * m;
    }
    return acc.cwiseAbs().maxCoeff();
}

CMatrix KrausChannel::apply(const CMatrix& rho) const {
    if (static_cast<std::size_t>(rho.rows()) != (std::size_t{1} << n_)) {
        throw PreconditionError("channel register size mismatch");
    }
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (const KrausTerm& k : kraus_) {
        if (k.weight == 0) continue;
        if (k.is_pauli()) {
            if (k.pauli().is_identity() && k.pauli().phase() % 2 == 0) out += k.weight * rho;
            else out += k.weight * conjugate_by_pauli(rho, k.pauli());
        } else {
            out += k.weight * conjugate_by_operator(rho, k.dense().matrix, k.dense().targets, n_);
        }
    }
    return out;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const { return DensityMatrix(n_, apply(rho.matrix())); }

ChannelSequence::ChannelSequence(std::size_t n_qubits, std::vector<KrausChannel> factors) : n_(n_qubits) {
    for (auto& f : factors) append(std::move(f));
}

void ChannelSequence::append(KrausChannel ch) {
    if (ch.n_qubits() != n_) {
        throw PreconditionError("channel sequence register mismatch");
    }
    factors_.push_back(std::move(ch));
}

ChannelSequence ChannelSequence::reordered(const std::vector<std::size_t>& order) const {
    if (order.size() != factors_.size()) {
        throw PreconditionError("reordering must list every factor");
    }
    ChannelSequence out(n_);
    for (std::size_t i : order) out.append(factors_.at(i));
    return out;
}

double ChannelSequence::trace_preservation_error() const {
    double worst = 0;
    for (const auto& f : factors_) worst = std::max(worst, f.trace_preservation_error());
    return worst;
}

CMatrix ChannelSequence::apply(const CMatrix& rho) const {
    CMatrix out = rho;
    for (const auto& f : factors_) out = f.apply(out);
    return out;
}

DensityMatrix ChannelSequence::apply(const DensityMatrix& rho) const { return DensityMatrix(n_, apply(rho.matrix())); }

KrausChannel pauli_mix(const PauliString& p_op, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw PreconditionError("pauli_mix: p must lie in [0, 1]");
    }
    std::vector<KrausTerm> terms;
    terms.push_back({1.0 - p, PauliString(p_op.n_qubits())});
    terms.push_back({p, p_op});
    return KrausChannel(p_op.n_qubits(), std::move(terms));
}

ChannelSequence bond_dephase_1d(const Lattice& lat, double p) {
    if (!lat.is_chain()) {
        throw PreconditionError("bond_dephase_1d needs a chain");
    }
    require_vertex_system(lat);
    ChannelSequence seq(lat.n_qubits());
    for (const Bond& b : lat.enumerate_bonds()) {
        seq.append(pauli_mix(pauli_on(lat.n_qubits(), {lat.system_qubit(b.a), lat.system_qubit(b.b)}, 'Z'), p));
    }
    return seq;
}

ChannelSequence bond_dephase_2d(const Lattice& lat, double p) {
    if (lat.is_chain()) {
        throw PreconditionError("bond_dephase_2d needs a square lattice");
    }
    require_vertex_system(lat);
    ChannelSequence seq(lat.n_qubits());
    for (const Bond& b : lat.enumerate_bonds()) {
        seq.append(pauli_mix(pauli_on(lat.n_qubits(), {lat.system_qubit(b.a), lat.system_qubit(b.b)}, 'Z'), p));
    }
    return seq;
}

ChannelSequence star_channel(const Lattice& lat, double p) {
    require_periodic_links(lat);
    ChannelSequence seq(lat.n_qubits());
    for (std::size_t v = 0; v < lat.n_vertices(); ++v) seq.append(pauli_mix(lat.star_operator(v), p));
    return seq;
}

ChannelSequence plaquette_channel(const Lattice& lat, double p) {
    if (lat.is_chain()) {
        throw PreconditionError("plaquette_channel needs a square lattice");
    }
    require_vertex_system(lat);
    ChannelSequence seq(lat.n_qubits());
    for (std::size_t q = 0; q < lat.n_plaquettes(); ++q) seq.append(pauli_mix(lat.plaquette_corner_operator(q), p));
    return seq;
}

ChannelSequence toric_dephase(const Lattice& lat, double p) {
    require_periodic_links(lat);
    ChannelSequence seq(lat.n_qubits());
    for (std::size_t l = 0; l < lat.n_links(); ++l) {
        seq.append(pauli_mix(PauliString::single(lat.n_qubits(), lat.system_qubit(l), 'Z'), p));
    }
    return seq;
}

std::size_t fermion_partner(const Lattice& lat, std::size_t link) {
    require_periodic_links(lat);
    auto [a, b] = lat.link_endpoints(link);
    (void)b;
    const std::size_t x = lat.vertex_x(a), y = lat.vertex_y(a);
    if (lat.is_x_link(link)) return lat.y_link((x + 1) % lat.lx(), (y + lat.ly() - 1) % lat.ly());
    return lat.x_link(x, y);
}

PauliString fermion_hop(const Lattice& lat, std::size_t link) {
    const std::size_t n = lat.n_qubits();
    return PauliString::single(n, lat.system_qubit(link), 'Z') *
           PauliString::single(n, lat.system_qubit(fermion_partner(lat, link)), 'X');
}

ChannelSequence toric_fermion_channel(const Lattice& lat, double p) {
    require_periodic_links(lat);
    ChannelSequence seq(lat.n_qubits());
    for (std::size_t l = 0; l < lat.n_links(); ++l) seq.append(pauli_mix(fermion_hop(lat, l), p));
    return seq;
}

PauliString fermion_loop_horizontal(const Lattice& lat, std::size_t y0) {
    require_periodic_links(lat);
    const std::size_t n = lat.n_qubits();
    PauliString out(n);
    for (std::size_t x = 0; x < lat.lx(); ++x) {
        out *= PauliString::single(n, lat.system_qubit(lat.x_link(x, y0)), 'Z');
        out *= PauliString::single(n, lat.system_qubit(lat.y_link(x, y0)), 'X');
    }
    return out;
}

PauliString fermion_loop_vertical(const Lattice& lat, std::size_t x0) {
    require_periodic_links(lat);
    const std::size_t n = lat.n_qubits();
    const std::size_t xm = (x0 + lat.lx() - 1) % lat.lx();
    PauliString out(n);
    for (std::size_t y = 0; y < lat.ly(); ++y) {
        out *= PauliString::single(n, lat.system_qubit(lat.y_link(x0, y)), 'Z');
        out *= PauliString::single(n, lat.system_qubit(lat.x_link(xm, y)), 'X');
    }
    return out;
}

SymmetryOp SymmetryOp::pauli(PauliString p, SymmetrySupport support) { return SymmetryOp{std::move(p), support}; }

SymmetryOp SymmetryOp::dense(CMatrix u, SymmetrySupport support) {
    const std::size_t dim = static_cast<std::size_t>(u.rows());
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    std::vector<std::size_t> targets(n);
    for (std::size_t q = 0; q < n; ++q) targets[q] = q;
    return SymmetryOp{make_unitary(std::move(u), std::move(targets)), support};
}

std::size_t SymmetryOp::n_qubits() const {
    if (auto* p = std::get_if<PauliString>(&generator)) return p->n_qubits();
    return std::get<DenseOperator>(generator).targets.size();
}

CMatrix SymmetryOp::matrix() const {
    if (auto* p = std::get_if<PauliString>(&generator)) return p->to_matrix();
    return std::get<DenseOperator>(generator).matrix;
}

bool is_strong_symmetric_channel(const KrausChannel& ch, const SymmetryOp& u) {
    if (u.n_qubits() != ch.n_qubits()) {
        throw PreconditionError("symmetry and channel registers differ");
    }
    const auto* up = std::get_if<PauliString>(&u.generator);
    const bool all_pauli =
        std::all_of(ch.kraus().begin(), ch.kraus().end(), [](const KrausTerm& k) { return k.is_pauli(); });
    if (up != nullptr && all_pauli) {
        int shared = 0;
        for (const KrausTerm& k : ch.kraus()) {
            if (k.weight == 0) continue;
            const int sign = k.pauli().commutes_with(*up) ? 1 : -1;
            if (shared == 0) shared = sign;
            else if (shared != sign) return false;
        }
        return true;
    }
    const CMatrix um = u.matrix();
    bool have_phase = false;
    cplx phase = 1;
    for (const KrausTerm& k : ch.kraus()) {
        if (k.weight == 0) continue;
        const CMatrix km = full_matrix(k, ch.n_qubits());
        const CMatrix conj = um * km * um.adjoint();
        const cplx overlap = (km.adjoint() * conj).trace();
        if (std::abs(overlap) < tol::identity) return false;
        const cplx ph = overlap / std::abs(overlap);
        if ((conj - ph * km).norm() > tol::identity * std::max(1.0, km.norm())) return false;
        if (!have_phase) {
            phase = ph;
            have_phase = true;
        } else if (std::abs(ph - phase) > tol::identity) {
            return false;
        }
    }
    return true;
}

bool is_strong_symmetric_channel(const ChannelSequence& ch, const SymmetryOp& u) {
    for (const auto& f : ch.factors()) {
        if (!is_strong_symmetric_channel(f, u)) return false;
    }
    return true;
}

const char* to_string(StateSymmetry s) {
    switch (s) {
        case StateSymmetry::Strong:
            return "Strong";
        case StateSymmetry::WeakOnly:
            return "WeakOnly";
        default:
            return "None";
    }
}

StateSymmetry classify_state_symmetry(const CMatrix& rho, const CMatrix& u, double tolerance) {
    if (rho.rows() != u.rows()) {
        throw PreconditionError("classify_state_symmetry: dimension mismatch");
    }
    const bool weak = (u * rho * u.adjoint() - rho).norm() <= tolerance;
    if (!weak) return StateSymmetry::None;
    const CMatrix left = u * rho;
    cplx z = 0;
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        for (Eigen::Index i = 0; i < rho.rows(); ++i) {
            if (std::abs(rho(i, j)) > 1e-8) z += std::conj(rho(i, j)) * left(i, j);
        }
    }
    if (std::abs(z) < 1e-300) return StateSymmetry::WeakOnly;
    const cplx phase = z / std::abs(z);
    return (left - phase * rho).norm() <= tolerance ? StateSymmetry::Strong : StateSymmetry::WeakOnly;
}

StateSymmetry classify_state_symmetry(const DensityMatrix& rho, const SymmetryOp& u, double tolerance) {
    if (const auto* up = std::get_if<PauliString>(&u.generator)) {
        if (up->n_qubits() != rho.n_qubits()) {
            throw PreconditionError("classify_state_symmetry: register mismatch");
        }
        const CMatrix& m = rho.matrix();
        const bool weak = (conjugate_by_pauli(m, *up) - m).norm() <= tolerance;
        if (!weak) return StateSymmetry::None;
        const CMatrix left = left_multiply_pauli(m, *up);
        cplx z = 0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                if (std::abs(m(i, j)) > 1e-8) z += std::conj(m(i, j)) * left(i, j);
            }
        }
        if (std::abs(z) < 1e-300) return StateSymmetry::WeakOnly;
        const cplx phase = z / std::abs(z);
        return (left - phase * m).norm() <= tolerance ? StateSymmetry::Strong : StateSymmetry::WeakOnly;
    }
    return classify_state_symmetry(rho.matrix(), u.matrix(), tolerance);
}

}  // namespace sssb
