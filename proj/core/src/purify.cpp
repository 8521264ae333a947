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

#include "sssb/purify.hpp"

namespace sssb {

namespace {

using Mat2 = Eigen::Matrix2cd;

const cplx kI{0, 1};

Mat2 pauli_y() {
    Mat2 y;
    y << 0, -kI, kI, 0;
    return y;
}

Mat2 pauli_x() {
    Mat2 x;
    x << 0, 1, 1, 0;
    return x;
}

Mat2 pauli_z() {
    Mat2 z;
    z << 1, 0, 0, -1;
    return z;
}

// Ancilla rotation used by the cluster, link, 1-form and toric gates:
// even parity -> cos I + i sin Y, odd parity -> sin I + i cos Y.
std::pair<Mat2, Mat2> y_rotation_pair(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Mat2 id = Mat2::Identity();
    return {c * id + kI * s * pauli_y(), s * id + kI * c * pauli_y()};
}

// Subsystem gate: even -> cos I - i sin Y, odd -> sin Z + cos X.
std::pair<Mat2, Mat2> subsystem_pair(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * Mat2::Identity() - kI * s * pauli_y(), s * pauli_z() + c * pauli_x()};
}

// Gate on k controls plus one ancilla at bit `anc_pos`; applies a_plus or
// a_minus to the ancilla according to the Z-parity of the controls.
CMatrix parity_gate(std::size_t n_total, std::size_t anc_pos, const Mat2& a_plus, const Mat2& a_minus) {
    const std::size_t dim = std::size_t{1} << n_total;
    const std::uint64_t abit = std::uint64_t{1} << anc_pos;
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        const bool odd = std::popcount(b & ~abit) & 1;
        const Mat2& a = odd ? a_minus : a_plus;
        const int in = (b & abit) ? 1 : 0;
        for (int out = 0; out < 2; ++out) {
            const std::uint64_t b2 = out ? (b | abit) : (b & ~abit);
            m(static_cast<Eigen::Index>(b2), static_cast<Eigen::Index>(b)) = a(out, in);
        }
    }
    return m;
}

// Conjugates the controls (every qubit except anc_pos) by Hadamards.
CMatrix hadamard_controls(const CMatrix& g, std::size_t n_total, std::size_t anc_pos) {
    Mat2 h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    CMatrix hk = CMatrix::Identity(1, 1);
    for (std::size_t q = 0; q < n_total; ++q) {
        const Mat2 f = q == anc_pos ? Mat2::Identity() : h;
        CMatrix next(hk.rows() * 2, hk.cols() * 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) next.block(r * hk.rows(), c * hk.cols(), hk.rows(), hk.cols()) = f(r, c) * hk;
        hk = std::move(next);
    }
    return hk * g * hk;
}

void check_theta(double theta) {
    if (!(theta >= -tol::construction && theta <= M_PI / 4 + tol::construction)) {
        throw PreconditionError("theta must lie in [0, pi/4]");
    }
}

std::array<cplx, 2> ket_zero() { return {cplx{1, 0}, cplx{0, 0}}; }
std::array<cplx, 2> ket_plus() { return {cplx{M_SQRT1_2, 0}, cplx{M_SQRT1_2, 0}}; }

StateVector product_state(std::size_t n_system, std::array<cplx, 2> sys, std::size_t n_ancilla,
                          std::array<cplx, 2> anc) {
    std::vector<std::array<cplx, 2>> kets(n_system, sys);
    kets.resize(n_system + n_ancilla, anc);
    return StateVector::product(kets);
}

void check_budget(const Lattice& lat, std::size_t budget) {
    if (lat.n_qubits() > budget) {
        throw PreconditionError("register of " + std::to_string(lat.n_qubits()) + " qubits exceeds the budget of " +
                                std::to_string(budget));
    }
}

double error_rate(double theta) { return std::max(0.0, (1.0 - std::sin(2.0 * theta)) / 2.0); }

std::vector<std::size_t> plaquettes_touching(const Lattice& lat, std::size_t v) {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < lat.n_plaquettes(); ++p) {
        for (std::size_t c : lat.plaquette_corners(p)) {
            if (c == v) {
                out.push_back(p);
                break;
            }
        }
    }
    return out;
}

}  // namespace

DenseOperator make_gate(const GateSpec& spec) {
    check_theta(spec.theta);
    switch (spec.family) {
        case GateFamily::Cluster1D:
        case GateFamily::Link2D: {
            auto [ap, am] = y_rotation_pair(spec.theta);
            return make_unitary(parity_gate(3, 1, ap, am));
        }
        case GateFamily::Star1Form: {
            auto [ap, am] = y_rotation_pair(spec.theta);
            return make_unitary(hadamard_controls(parity_gate(5, 4, ap, am), 5, 4));
        }
        case GateFamily::PlaquetteSub: {
            auto [ap, am] = subsystem_pair(spec.theta);
            return make_unitary(parity_gate(5, 4, ap, am));
        }
        case GateFamily::ToricProjector: {
            auto [ap, am] = y_rotation_pair(spec.theta);
            return make_unitary(parity_gate(2, 1, ap, am));
        }
    }
    throw PreconditionError("unknown gate family");
}

DenseOperator cluster_gate_1d(double theta) { return make_gate({GateFamily::Cluster1D, theta}); }

// ---------------------------------------------------------------------------
// PurifiedState

Lattice PurifiedState::system_lattice() const {
    switch (lattice.layout()) {
        case Layout::LinkSystemVertexAncilla:
            return lattice.with_layout(Layout::LinkSystem);
        default:
            return lattice.with_layout(Layout::VertexSystem);
    }
}

DensityMatrix PurifiedState::system_density() const { return partial_trace(state, lattice.system_qubits()); }

DensityMatrix PurifiedState::initial_system_density() const {
    const std::size_t n = lattice.n_system();
    const auto ket = family == SptFamily::OneForm ? ket_zero() : ket_plus();
    return DensityMatrix::from_pure(product_state(n, ket, 0, ket));
}

ChannelSequence PurifiedState::equivalent_channel() const {
    const Lattice sys = system_lattice();
    const double p = error_rate(theta);
    switch (family) {
        case SptFamily::Cluster1D:
            return bond_dephase_1d(sys, p);
        case SptFamily::Link2D:
            return bond_dephase_2d(sys, p);
        case SptFamily::OneForm:
            return star_channel(sys, p);
        case SptFamily::Subsystem:
            return plaquette_channel(sys, p);
        case SptFamily::GaplessCluster:
            break;
    }
    throw PreconditionError("no equivalent channel for the gapless state");
}

// ---------------------------------------------------------------------------
// Builders

PurifiedState build_1d_spt(std::size_t length, double theta, Boundary boundary) {
    check_theta(theta);
    const Lattice lat = Lattice::chain(length, boundary, Layout::VertexSystemLinkAncilla);
    check_budget(lat, kBuilderQubitBudget);
    StateVector psi = product_state(lat.n_system(), ket_plus(), lat.n_ancilla(), ket_zero());
    const DenseOperator gate = cluster_gate_1d(theta);
    for (const Bond& b : lat.enumerate_bonds()) {
        const std::size_t t[3] = {lat.system_qubit(b.a), lat.ancilla_qubit(b.link), lat.system_qubit(b.b)};
        psi = apply_gate(psi, gate, t);
    }
    return {std::move(psi), lat, theta, SptFamily::Cluster1D};
}

PurifiedState build_2d_spt(std::size_t lx, std::size_t ly, double theta) {
    check_theta(theta);
    const Lattice lat = Lattice::square(lx, ly, Boundary::Periodic, Layout::VertexSystemLinkAncilla);
    check_budget(lat, kBuilderQubitBudget);
    StateVector psi = product_state(lat.n_system(), ket_plus(), lat.n_ancilla(), ket_zero());
    const DenseOperator gate = make_gate({GateFamily::Link2D, theta});
    for (const Bond& b : lat.enumerate_bonds()) {
        const std::size_t t[3] = {lat.system_qubit(b.a), lat.ancilla_qubit(b.link), lat.system_qubit(b.b)};
        psi = apply_gate(psi, gate, t);
    }
    return {std::move(psi), lat, theta, SptFamily::Link2D};
}

PurifiedState build_1form_system_spt(std::size_t lx, std::size_t ly, double theta) {
    check_theta(theta);
    const Lattice lat = Lattice::square(lx, ly, Boundary::Periodic, Layout::LinkSystemVertexAncilla);
    check_budget(lat, kBuilderQubitBudget);
    StateVector psi = product_state(lat.n_system(), ket_zero(), lat.n_ancilla(), ket_plus());
    const DenseOperator gate = make_gate({GateFamily::Star1Form, theta});
    for (std::size_t v = 0; v < lat.n_vertices(); ++v) {
        std::vector<std::size_t> t;
        for (std::size_t l : lat.star_of(v).links) t.push_back(lat.system_qubit(l));
        t.push_back(lat.ancilla_qubit(v));
        psi = apply_gate(psi, gate, t);
    }
    return {std::move(psi), lat, theta, SptFamily::OneForm};
}

PurifiedState build_subsystem_spt(std::size_t lx, std::size_t ly, double theta) {
    check_theta(theta);
    const Lattice lat = Lattice::square(lx, ly, Boundary::Periodic, Layout::VertexSystemPlaquetteAncilla);
    check_budget(lat, kBuilderQubitBudget);
    StateVector psi = product_state(lat.n_system(), ket_plus(), lat.n_ancilla(), ket_zero());
    const DenseOperator gate = make_gate({GateFamily::PlaquetteSub, theta});
    for (std::size_t p = 0; p < lat.n_plaquettes(); ++p) {
        std::vector<std::size_t> t;
        for (std::size_t v : lat.plaquette_corners(p)) t.push_back(lat.system_qubit(v));
        t.push_back(lat.ancilla_qubit(p));
        psi = apply_gate(psi, gate, t);
    }
    return {std::move(psi), lat, theta, SptFamily::Subsystem};
}

StateVector build_toric_code(std::size_t lx, std::size_t ly) {
    const Lattice lat = Lattice::square(lx, ly, Boundary::Periodic, Layout::LinkSystem);
    check_budget(lat, kBuilderQubitBudget);
    StateVector psi = StateVector::basis(lat.n_qubits(), 0);
    for (std::size_t v = 0; v < lat.n_vertices(); ++v) {
        const StateVector flipped = apply_pauli(psi, lat.star_operator(v));
        psi = StateVector(lat.n_qubits(), 0.5 * (psi.amplitudes() + flipped.amplitudes()));
    }
    return psi.normalized();
}

PauliString toric_z_loop_horizontal(const Lattice& lat, std::size_t y) {
    std::vector<std::size_t> links;
    for (std::size_t x = 0; x < lat.lx(); ++x) links.push_back(lat.system_qubit(lat.x_link(x, y)));
    return pauli_on(lat.n_qubits(), links, 'Z');
}

PauliString toric_z_loop_vertical(const Lattice& lat, std::size_t x) {
    std::vector<std::size_t> links;
    for (std::size_t y = 0; y < lat.ly(); ++y) links.push_back(lat.system_qubit(lat.y_link(x, y)));
    return pauli_on(lat.n_qubits(), links, 'Z');
}

std::vector<PauliString> defining_stabilizers(const PurifiedState& psi) {
    const Lattice& lat = psi.lattice;
    const std::size_t n = lat.n_qubits();
    std::vector<PauliString> out;
    switch (psi.family) {
        case SptFamily::Cluster1D:
        case SptFamily::Link2D:
        case SptFamily::GaplessCluster:
            for (const Bond& b : lat.enumerate_bonds()) {
                out.push_back(pauli_on(n, {lat.system_qubit(b.a), lat.ancilla_qubit(b.link), lat.system_qubit(b.b)}, 'Z'));
            }
            for (std::size_t v = 0; v < lat.n_vertices(); ++v) {
                PauliString s = PauliString::single(n, lat.system_qubit(v), 'X');
                const auto& links = lat.star_of(v).links;
                for (std::size_t l : links) s *= PauliString::single(n, lat.ancilla_qubit(l), 'X');
                // The odd-parity gate sends |0> to -|1>, so each incident link contributes a sign.
                if (psi.family != SptFamily::GaplessCluster && links.size() % 2 == 1) s = s.with_phase(2);
                out.push_back(s);
            }
            break;
        case SptFamily::OneForm:
            for (std::size_t v = 0; v < lat.n_vertices(); ++v) {
                out.push_back(lat.star_operator(v) * PauliString::single(n, lat.ancilla_qubit(v), 'X'));
            }
            for (const Bond& b : lat.enumerate_bonds()) {
                out.push_back(pauli_on(n, {lat.system_qubit(b.link), lat.ancilla_qubit(b.a), lat.ancilla_qubit(b.b)}, 'Z'));
            }
            break;
        case SptFamily::Subsystem:
            for (std::size_t p = 0; p < lat.n_plaquettes(); ++p) {
                out.push_back(lat.plaquette_corner_operator(p) * PauliString::single(n, lat.ancilla_qubit(p), 'Z'));
            }
            for (std::size_t v = 0; v < lat.n_vertices(); ++v) {
                PauliString s = PauliString::single(n, lat.system_qubit(v), 'X');
                for (std::size_t p : plaquettes_touching(lat, v)) s *= PauliString::single(n, lat.ancilla_qubit(p), 'X');
                out.push_back(s);
            }
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// EPR doubling

StateVector epr_double(const DensityMatrix& rho) {
    const std::size_t n = rho.n_qubits();
    if (2 * n > 28) {
        throw PreconditionError("epr_double: register too large");
    }
    const double pur = purity(rho);
    if (pur < 1e-14) {
        throw PreconditionError("epr_double: Tr rho^2 below 1e-14");
    }
    const std::size_t dim = rho.dim();
    CVector amps(static_cast<Eigen::Index>(dim * dim));
    const double scale = 1.0 / std::sqrt(pur);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = 0; i < dim; ++i) {
            amps[static_cast<Eigen::Index>(i | (j << n))] =
                rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * scale;
        }
    }
    return StateVector(2 * n, std::move(amps));
}

StateVector epr_double(const PurifiedState& psi) { return epr_double(psi.system_density()); }

double four_point(const StateVector& pp, const PauliString& o) {
    const std::size_t n = o.n_qubits();
    if (pp.n_qubits() != 2 * n) {
        throw PreconditionError("four_point: doubled register must have 2n qubits");
    }
    // O (x) O^* : the i^k phase cancels against its conjugate.
    const PauliString doubled(2 * n, o.x_mask() | (o.x_mask() << n), o.z_mask() | (o.z_mask() << n), 0);
    return expectation(pp, doubled).real();
}

// ---------------------------------------------------------------------------
// String and membrane order

PauliString string_operator(const Lattice& lat, const Path& path) {
    if (lat.layout() != Layout::VertexSystemLinkAncilla) {
        throw PreconditionError("string order needs system vertices and ancilla links");
    }
    if (!lat.is_valid_path(path)) {
        throw PreconditionError("malformed path");
    }
    const std::size_t n = lat.n_qubits();
    PauliString s = PauliString::single(n, lat.system_qubit(path.front()), 'Z') *
                    PauliString::single(n, lat.system_qubit(path.back()), 'Z');
    for (std::size_t l : path.links) s *= PauliString::single(n, lat.ancilla_qubit(l), 'Z');
    return s;
}

double string_order(const PurifiedState& psi, const Path& path) {
    return expectation(psi.state, string_operator(psi.lattice, path)).real();
}

PauliString membrane_operator(const PurifiedState& psi, const std::vector<std::size_t>& region) {
    const Lattice& lat = psi.lattice;
    const std::size_t n = lat.n_qubits();
    PauliString m(n);
    if (psi.family == SptFamily::OneForm) {
        for (std::size_t v : region) m *= lat.star_operator(v) * PauliString::single(n, lat.ancilla_qubit(v), 'X');
        return m;
    }
    if (psi.family == SptFamily::Subsystem) {
        for (std::size_t p : region) m *= lat.plaquette_corner_operator(p) * PauliString::single(n, lat.ancilla_qubit(p), 'Z');
        return m;
    }
    throw PreconditionError("membrane order needs a 1-form or subsystem state");
}

double membrane_order(const PurifiedState& psi, const std::vector<std::size_t>& region) {
    return expectation(psi.state, membrane_operator(psi, region)).real();
}

PauliString wilson_line(const Lattice& lat, std::size_t column) {
    if (lat.layout() != Layout::LinkSystem && lat.layout() != Layout::LinkSystemVertexAncilla) {
        throw PreconditionError("Wilson line needs system qubits on links");
    }
    std::vector<std::size_t> links;
    for (std::size_t y = 0; y < lat.ly(); ++y) links.push_back(lat.system_qubit(lat.x_link(column, y)));
    return pauli_on(lat.n_qubits(), links, 'X');
}

}  // namespace sssb
