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

#pragma once

#include <vector>

#include "sssb/purify.hpp"
#include "sssb/qcore.hpp"

namespace sssb {

/// O_x and O_y: local Pauli strings with disjoint supports.
struct ChargedPair {
    PauliString o_x;
    PauliString o_y;

    ChargedPair(PauliString x, PauliString y);
    static ChargedPair zz(std::size_t n_qubits, std::size_t a, std::size_t b);
    PauliString product() const { return o_x * o_y; }
};

/// Tr(O rho O^dagger rho) / Tr(rho^2) with O = O_x O_y.
double renyi2_correlator(const DensityMatrix& rho, const ChargedPair& pair);
double renyi2_order_param(const DensityMatrix& rho, const PauliString& o);
double conventional_correlator(const DensityMatrix& rho, const ChargedPair& pair);

/// Tr[rho0 O rho O^dagger] / Tr[rho0 rho].
double typeII_strange_correlator(const DensityMatrix& rho, const DensityMatrix& rho0, const ChargedPair& pair);
/// Same with rho0 = |t><t|.
double typeII_strange_correlator(const DensityMatrix& rho, const StateVector& trivial, const ChargedPair& pair);

cplx strange_correlator(const StateVector& trivial, const StateVector& psi, const ChargedPair& pair);
/// Ancillae up, system in |+>.
StateVector trivial_reference_state(const Lattice& lat);

enum class AnnealedWeighting {
    Uniform,      // ratio of pattern sums, equal to the type-II correlator
    BornAverage,  // sum_s p(s) |C_s|^2 with p(s) the Born weight of ancilla pattern s
};

inline constexpr std::size_t kAnnealedAncillaBudget = 20;

/// `pair` acts on the system register (n_system qubits).
double annealed_strange_correlator(const PurifiedState& psi, const ChargedPair& pair,
                                   AnnealedWeighting weighting = AnnealedWeighting::Uniform);

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 with sigma = O rho O^dagger.
double fidelity_correlator(const DensityMatrix& rho, const ChargedPair& pair);
double uhlmann_fidelity(const CMatrix& rho, const CMatrix& sigma);

/// Von Neumann mutual information in nats between qubit sets A and B.
double mutual_information(const StateVector& psi, const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

struct MieReport {
    std::size_t outcomes_checked = 0;
    std::size_t violations = 0;          // printed bound I >= p_ab^2 |C|^2 / 2
    std::size_t rigorous_violations = 0;  // I >= |tr(rho_AB Y) - tr(rho_A x rho_B Y)|^2 / 2
    double min_slack = 0.0;
    double min_rigorous_slack = 0.0;
    double max_rhs = 0.0;
    bool holds() const { return violations == 0 && rigorous_violations == 0; }
};

/// Exhaustive check of the measurement-induced entanglement bound.
/// Ancillae are measured in Z, the system sites of C in X; A and B are
/// single system sites; m_a and m_b run over the X eigenstates.
/// `pair` acts on the system register.
MieReport mie_bound_check(const PurifiedState& psi, std::size_t site_a, std::size_t site_b,
                          const std::vector<std::size_t>& region_c, const ChargedPair& pair);

}  // namespace sssb
