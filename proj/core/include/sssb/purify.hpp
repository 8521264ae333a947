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

#include <cstdint>
#include <vector>

#include "sssb/channels.hpp"
#include "sssb/lattice.hpp"
#include "sssb/qcore.hpp"

namespace sssb {

enum class GateFamily { Cluster1D, Link2D, Star1Form, PlaquetteSub, ToricProjector };

/// Purification family of a PurifiedState.
enum class SptFamily { Cluster1D, Link2D, OneForm, Subsystem, GaplessCluster };

struct GateSpec {
    GateFamily family = GateFamily::Cluster1D;
    double theta = 0.0;
};

/// Unitary for `spec`. Qubit order of the matrix:
///   Cluster1D, Link2D: (system a, ancilla, system b)
///   Star1Form:         (4 star links, ancilla), parity prod X
///   PlaquetteSub:      (4 corners, ancilla), parity prod Z
///   ToricProjector:    (link, ancilla), parity Z
DenseOperator make_gate(const GateSpec& spec);
DenseOperator cluster_gate_1d(double theta);

/// Largest register the dense builders accept.
inline constexpr std::size_t kBuilderQubitBudget = 14;
inline constexpr std::size_t kGaplessQubitBudget = 18;

struct PurifiedState {
    StateVector state;
    Lattice lattice;
    double theta = 0.0;
    SptFamily family = SptFamily::Cluster1D;

    /// Tr over ancillae; system qubit j of the result is lattice system site j.
    DensityMatrix system_density() const;
    /// Product state the system starts in before the gates act.
    DensityMatrix initial_system_density() const;
    /// Channel at p = (1 - sin 2 theta)/2 whose output equals system_density().
    ChannelSequence equivalent_channel() const;
    /// Same lattice restricted to the system register.
    Lattice system_lattice() const;
};

PurifiedState build_1d_spt(std::size_t length, double theta, Boundary boundary = Boundary::Open);
PurifiedState build_2d_spt(std::size_t lx, std::size_t ly, double theta);
PurifiedState build_1form_system_spt(std::size_t lx, std::size_t ly, double theta);
PurifiedState build_subsystem_spt(std::size_t lx, std::size_t ly, double theta = 0.0);

/// +1 eigenstate of every star and plaquette operator with both
/// noncontractible Z-loops equal to +1. Qubits are links.
StateVector build_toric_code(std::size_t lx, std::size_t ly);
/// Z on every x-link of row y (horizontal loop) or every y-link of column x.
PauliString toric_z_loop_horizontal(const Lattice& lat, std::size_t y);
PauliString toric_z_loop_vertical(const Lattice& lat, std::size_t x);

/// Defining stabilizers of the family at theta = 0.
std::vector<PauliString> defining_stabilizers(const PurifiedState& psi);

/// Vectorized rho / sqrt(Tr rho^2) on 2n qubits: amplitude of |i>|j> is rho_ij.
StateVector epr_double(const DensityMatrix& rho);
StateVector epr_double(const PurifiedState& psi);
/// <pp| O (x) O^* |pp> with O on the first copy and its conjugate on the second.
double four_point(const StateVector& pp, const PauliString& o);

/// Z_a prod_{l in path} Z~_l Z_b on a vertex-system / link-ancilla state.
PauliString string_operator(const Lattice& lat, const Path& path);
double string_order(const PurifiedState& psi, const Path& path);

/// 1-form family: region is a vertex set, operator prod_{v in A} X~_v prod_{l in boundary} X_l.
/// Subsystem family: region is a plaquette set, operator prod_{p} Z~_p times the
/// Z corner product (which reduces to the rectangle corners for a rectangle).
PauliString membrane_operator(const PurifiedState& psi, const std::vector<std::size_t>& region);
double membrane_order(const PurifiedState& psi, const std::vector<std::size_t>& region);
/// Wilson line prod_y X on the x-links at column x (1-form system register).
PauliString wilson_line(const Lattice& lat, std::size_t column);

/// Open-chain Hamiltonian -sum(Z Z~ Z + X~ X X~ + X) with end terms
/// X_0 X~_01 and X~_{L-2,L-1} X_{L-1}, acting on 2L-1 qubits.
struct GaplessOptions {
    double residual_tolerance = 1e-9;
    std::size_t krylov_dim = 48;
    std::size_t max_restarts = 400;
    std::uint64_t seed = 20240611;
};

struct GaplessResult {
    PurifiedState psi;
    double energy = 0.0;
    double residual = 0.0;
    std::size_t restarts = 0;
};

GaplessResult build_gapless_spt(std::size_t length, const GaplessOptions& options = {});
/// Energy of the product state |+>^L (system) |0>^{L-1} (ancilla) under the same Hamiltonian.
double gapless_product_energy(std::size_t length);

}  // namespace sssb
