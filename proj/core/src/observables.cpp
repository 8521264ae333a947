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

#include "sssb/observables.hpp"

namespace sssb {

namespace {

double trace_product(const CMatrix& a, const CMatrix& b) { return (a.cwiseProduct(b.transpose())).sum().real(); }

PauliString lift_to_register(const PauliString& p, std::size_t n_qubits) {
    if (p.n_qubits() > n_qubits) {
        throw PreconditionError("operator register larger than target register");
    }
    return PauliString(n_qubits, p.x_mask(), p.z_mask(), p.phase());
}

double entropy_of(const StateVector& psi, const std::vector<std::size_t>& keep) {
    return von_neumann_entropy(partial_trace(psi, keep).matrix());
}

}  // namespace

ChargedPair::ChargedPair(PauliString x, PauliString y) : o_x(std::move(x)), o_y(std::move(y)) {
    if (o_x.n_qubits() != o_y.n_qubits()) {
        throw PreconditionError("charged pair operators live on different registers");
    }
    if ((o_x.x_mask() | o_x.z_mask()) & (o_y.x_mask() | o_y.z_mask())) {
        throw PreconditionError("charged pair operators must have disjoint supports");
    }
}

ChargedPair ChargedPair::zz(std::size_t n_qubits, std::size_t a, std::size_t b) {
    return ChargedPair(PauliString::single(n_qubits, a, 'Z'), PauliString::single(n_qubits, b, 'Z'));
}

double renyi2_correlator(const DensityMatrix& rho, const ChargedPair& pair) {
    const double pur = purity(rho);
    if (pur < 1e-14) {
        throw PreconditionError("renyi2_correlator: Tr rho^2 below 1e-14");
    }
    return trace_product(conjugate_by_pauli(rho.matrix(), pair.product()), rho.matrix()) / pur;
}

double renyi2_order_param(const DensityMatrix& rho, const PauliString& o) {
    const double pur = purity(rho);
    if (pur < 1e-14) {
        throw PreconditionError("renyi2_order_param: Tr rho^2 below 1e-14");
    }
    return trace_product(conjugate_by_pauli(rho.matrix(), o), rho.matrix()) / pur;
}

double conventional_correlator(const DensityMatrix& rho, const ChargedPair& pair) {
    return expectation(rho, pair.product()).real();
}

double typeII_strange_correlator(const DensityMatrix& rho, const DensityMatrix& rho0, const ChargedPair& pair) {
    const double den = trace_product(rho0.matrix(), rho.matrix());
    if (std::abs(den) < 1e-14) {
        throw PreconditionError("typeII_strange_correlator: Tr(rho0 rho) below 1e-14");
    }
    return trace_product(rho0.matrix(), conjugate_by_pauli(rho.matrix(), pair.product())) / den;
}

double typeII_strange_correlator(const DensityMatrix& rho, const StateVector& trivial, const ChargedPair& pair) {
    const CVector& t = trivial.amplitudes();
    const double den = t.dot(rho.matrix() * t).real();
    if (std::abs(den) < 1e-14) {
        throw PreconditionError("typeII_strange_correlator: <t|rho|t> below 1e-14");
    }
    return t.dot(conjugate_by_pauli(rho.matrix(), pair.product()) * t).real() / den;
}

cplx strange_correlator(const StateVector& trivial, const StateVector& psi, const ChargedPair& pair) {
    const cplx overlap = trivial.inner(psi);
    if (std::abs(overlap) < 1e-12) {
        throw PreconditionError("strange_correlator: overlap below 1e-12");
    }
    const PauliString o = lift_to_register(pair.product(), psi.n_qubits());
    return trivial.inner(apply_pauli(psi, o)) / overlap;
}

StateVector trivial_reference_state(const Lattice& lat) {
    std::vector<std::array<cplx, 2>> kets(lat.n_system(), {cplx{M_SQRT1_2, 0}, cplx{M_SQRT1_2, 0}});
    kets.resize(lat.n_qubits(), {cplx{1, 0}, cplx{0, 0}});
    return StateVector::product(kets);
}

double annealed_strange_correlator(const PurifiedState& psi, const ChargedPair& pair, AnnealedWeighting weighting) {
    const std::size_t n_sys = psi.lattice.n_system();
    const std::size_t n_anc = psi.lattice.n_ancilla();
    if (n_anc > kAnnealedAncillaBudget) {
        throw PreconditionError("annealed_strange_correlator: more than 20 ancillae");
    }
    const PauliString o = lift_to_register(pair.product(), psi.state.n_qubits());
    const StateVector opsi = apply_pauli(psi.state, o);
    const std::uint64_t sys_dim = std::uint64_t{1} << n_sys;
    const double plus_amp = 1.0 / std::sqrt(static_cast<double>(sys_dim));

    double num = 0, den = 0, born_sum = 0, born_kept = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n_anc); ++s) {
        cplx amp = 0, amp_o = 0;
        double born = 0;
        for (std::uint64_t b = 0; b < sys_dim; ++b) {
            const std::uint64_t idx = b | (s << n_sys);
            amp += psi.state[idx];
            amp_o += opsi[idx];
            born += std::norm(psi.state[idx]);
        }
        amp *= plus_amp;
        amp_o *= plus_amp;
        num += std::norm(amp_o);
        den += std::norm(amp);
        if (std::abs(amp) > 1e-12) {
            born_sum += born * std::norm(amp_o / amp);
            born_kept += born;
        }
    }
    if (weighting == AnnealedWeighting::Uniform) {
        if (den < 1e-14) {
            throw PreconditionError("annealed_strange_correlator: vanishing denominator");
        }
        return num / den;
    }
    if (born_kept < 1e-14) {
        throw PreconditionError("annealed_strange_correlator: no pattern with nonzero overlap");
    }
    return born_sum / born_kept;
}

double uhlmann_fidelity(const CMatrix& rho, const CMatrix& sigma) {
    const CMatrix s = matrix_sqrt_psd(rho);
    const CMatrix m = s * sigma * s;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    double tr = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double l = es.eigenvalues()[k];
        if (l < -tol::psd_reject) {
            throw PreconditionError("fidelity: negative eigenvalue inside square root");
        }
        if (l > tol::psd_clamp) tr += std::sqrt(l);
    }
    return tr * tr;
}

double fidelity_correlator(const DensityMatrix& rho, const ChargedPair& pair) {
    return uhlmann_fidelity(rho.matrix(), conjugate_by_pauli(rho.matrix(), pair.product()));
}

double mutual_information(const StateVector& psi, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    for (std::size_t q : a) {
        if (std::find(b.begin(), b.end(), q) != b.end()) {
            throw PreconditionError("mutual_information: regions overlap");
        }
    }
    std::vector<std::size_t> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    return entropy_of(psi, a) + entropy_of(psi, b) - entropy_of(psi, ab);
}

MieReport mie_bound_check(const PurifiedState& psi, std::size_t site_a, std::size_t site_b,
                          const std::vector<std::size_t>& region_c, const ChargedPair& pair) {
    const Lattice& lat = psi.lattice;
    const std::size_t n_sys = lat.n_system();
    std::vector<bool> covered(n_sys, false);
    auto claim = [&](std::size_t q) {
        if (q >= n_sys || covered[q]) {
            throw PreconditionError("mie_bound_check: A, B, C must be disjoint system sites");
        }
        covered[q] = true;
    };
    claim(site_a);
    claim(site_b);
    for (std::size_t q : region_c) claim(q);
    for (bool c : covered) {
        if (!c) throw PreconditionError("mie_bound_check: A, B and C must cover the system");
    }

    const PauliString o_sys = pair.product();
    const std::uint64_t ab_mask = (std::uint64_t{1} << site_a) | (std::uint64_t{1} << site_b);
    if ((o_sys.x_mask() | o_sys.z_mask()) & ~ab_mask) {
        throw PreconditionError("mie_bound_check: charged operators must act inside A and B");
    }
    // O restricted to (a, b) as a 2-qubit operator; bit 0 = a, bit 1 = b.
    auto bit = [](std::uint64_t m, std::size_t q) -> std::uint64_t { return (m >> q) & 1; };
    const PauliString o_ab(2, bit(o_sys.x_mask(), site_a) | (bit(o_sys.x_mask(), site_b) << 1),
                           bit(o_sys.z_mask(), site_a) | (bit(o_sys.z_mask(), site_b) << 1), o_sys.phase());
    const CMatrix o_mat = o_ab.to_matrix();

    // Rotate C into the X basis so that every measurement is a Z readout.
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    const DenseOperator had = make_unitary(h);
    StateVector rotated = psi.state;
    StateVector rotated_o = apply_pauli(psi.state, lift_to_register(o_sys, psi.state.n_qubits()));
    for (std::size_t q : region_c) {
        const std::size_t t[1] = {lat.system_qubit(q)};
        rotated = apply_gate(rotated, had, t);
        rotated_o = apply_gate(rotated_o, had, t);
    }

    std::vector<std::size_t> measured;
    for (std::size_t q : region_c) measured.push_back(lat.system_qubit(q));
    for (std::size_t q : lat.ancilla_qubits()) measured.push_back(q);

    // X eigenstates of (a, b).
    std::array<CVector, 4> m_states;
    for (int k = 0; k < 4; ++k) {
        CVector m(4);
        const double sa = (k & 1) ? -1 : 1, sb = (k & 2) ? -1 : 1;
        m << 0.5, 0.5 * sa, 0.5 * sb, 0.5 * sa * sb;
        m_states[static_cast<std::size_t>(k)] = m;
    }

    MieReport rep;
    rep.min_slack = INFINITY;
    rep.min_rigorous_slack = INFINITY;
    const std::size_t qa = lat.system_qubit(site_a), qb = lat.system_qubit(site_b);
    for (std::uint64_t outcome = 0; outcome < (std::uint64_t{1} << measured.size()); ++outcome) {
        std::uint64_t base = 0;
        for (std::size_t k = 0; k < measured.size(); ++k) base |= ((outcome >> k) & 1) << measured[k];
        CVector phi(4), chi(4);
        for (std::uint64_t ab = 0; ab < 4; ++ab) {
            const std::uint64_t idx = base | ((ab & 1) << qa) | (((ab >> 1) & 1) << qb);
            phi[static_cast<Eigen::Index>(ab)] = rotated[idx];
            chi[static_cast<Eigen::Index>(ab)] = rotated_o[idx];
        }
        const double p_cs = phi.squaredNorm();
        if (p_cs <= 1e-12) continue;
        ++rep.outcomes_checked;
        const CVector post = phi / std::sqrt(p_cs);
        const StateVector post_state(2, post);
        const std::size_t a_only[1] = {0}, b_only[1] = {1};
        const CMatrix rho_a = partial_trace(post_state, a_only).matrix();
        const CMatrix rho_b = partial_trace(post_state, b_only).matrix();
        const double info = 2.0 * von_neumann_entropy(rho_a);
        // rho_A (x) rho_B with bit 0 = a.
        CMatrix prod(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) prod(r, c) = rho_a(r & 1, c & 1) * rho_b(r >> 1, c >> 1);

        for (const CVector& m : m_states) {
            const cplx m_phi = m.dot(phi), m_chi = m.dot(chi);
            const double rhs = std::norm(m_phi) * std::norm(m_chi) / (p_cs * p_cs) / 2.0;
            const cplx tr_ab = m_chi * std::conj(m_phi) / p_cs;
            const cplx tr_prod = m.dot(o_mat * prod * m);
            const double rigorous = 0.5 * std::norm(tr_ab - tr_prod);
            rep.max_rhs = std::max(rep.max_rhs, rhs);
            rep.min_slack = std::min(rep.min_slack, info - rhs);
            rep.min_rigorous_slack = std::min(rep.min_rigorous_slack, info - rigorous);
            if (info < rhs - 1e-12) ++rep.violations;
            if (info < rigorous - 1e-12) ++rep.rigorous_violations;
        }
    }
    return rep;
}

}  // namespace sssb
