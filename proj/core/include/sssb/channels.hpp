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

#include <variant>
#include <vector>

#include "sssb/lattice.hpp"
#include "sssb/qcore.hpp"

namespace sssb {

/// One Kraus operator K = sqrt(weight) * op.
struct KrausTerm {
    double weight = 0.0;
    std::variant<PauliString, DenseOperator> op;

    bool is_pauli() const { return std::holds_alternative<PauliString>(op); }
    const PauliString& pauli() const { return std::get<PauliString>(op); }
    const DenseOperator& dense() const { return std::get<DenseOperator>(op); }
};

class KrausChannel {
  public:
    KrausChannel(std::size_t n_qubits, std::vector<KrausTerm> kraus);

    std::size_t n_qubits() const { return n_; }
    const std::vector<KrausTerm>& kraus() const { return kraus_; }

    /// max |sum_m K_m^dagger K_m - I|.
    double trace_preservation_error() const;
    CMatrix apply(const CMatrix& rho) const;
    DensityMatrix apply(const DensityMatrix& rho) const;

  private:
    std::size_t n_ = 0;
    std::vector<KrausTerm> kraus_;
};

/// Ordered composition; factors[0] acts first.
class ChannelSequence {
  public:
    ChannelSequence() = default;
    explicit ChannelSequence(std::size_t n_qubits) : n_(n_qubits) {}
    ChannelSequence(std::size_t n_qubits, std::vector<KrausChannel> factors);

    std::size_t n_qubits() const { return n_; }
    const std::vector<KrausChannel>& factors() const { return factors_; }
    void append(KrausChannel ch);
    ChannelSequence reordered(const std::vector<std::size_t>& order) const;

    double trace_preservation_error() const;
    CMatrix apply(const CMatrix& rho) const;
    DensityMatrix apply(const DensityMatrix& rho) const;

  private:
    std::size_t n_ = 0;
    std::vector<KrausChannel> factors_;
};

/// rho -> (1-p) rho + p P rho P.
KrausChannel pauli_mix(const PauliString& p_op, double p);

/// pauli_mix(Z_a Z_b, p) over every bond; system qubits on vertices.
ChannelSequence bond_dephase_1d(const Lattice& lat, double p);
ChannelSequence bond_dephase_2d(const Lattice& lat, double p);
/// pauli_mix(prod_{l in star(v)} X_l, p) over every vertex; system qubits on links.
ChannelSequence star_channel(const Lattice& lat, double p);
/// pauli_mix(prod_{v in corners(P)} Z_v, p) over every plaquette; system qubits on vertices.
ChannelSequence plaquette_channel(const Lattice& lat, double p);
/// pauli_mix(Z_l, p) on every link of a toric-code register.
ChannelSequence toric_dephase(const Lattice& lat, double p);

/// Partner link of `link` under the diagonal offset (x/2, -y/2):
/// x-link (x, y) -> y-link at vertex (x+1, y-1); y-link (x, y) -> x-link (x, y).
std::size_t fermion_partner(const Lattice& lat, std::size_t link);
/// Kraus Z_l X_{partner(l)} for every link l.
PauliString fermion_hop(const Lattice& lat, std::size_t link);
ChannelSequence toric_fermion_channel(const Lattice& lat, double p);
/// Noncontractible fermion loops along row y0 and column x0.
PauliString fermion_loop_horizontal(const Lattice& lat, std::size_t y0);
PauliString fermion_loop_vertical(const Lattice& lat, std::size_t x0);

enum class SymmetrySupport { Global, Path, Row, Column, Loop };

struct SymmetryOp {
    std::variant<PauliString, DenseOperator> generator;
    SymmetrySupport support = SymmetrySupport::Global;

    static SymmetryOp pauli(PauliString p, SymmetrySupport support = SymmetrySupport::Global);
    /// Dense unitary on the whole register.
    static SymmetryOp dense(CMatrix u, SymmetrySupport support = SymmetrySupport::Global);

    std::size_t n_qubits() const;
    CMatrix matrix() const;
};

/// True iff U K U^dagger = e^{i phi} K for every Kraus K with one shared phi.
bool is_strong_symmetric_channel(const KrausChannel& ch, const SymmetryOp& u);
bool is_strong_symmetric_channel(const ChannelSequence& ch, const SymmetryOp& u);

enum class StateSymmetry { Strong, WeakOnly, None };

const char* to_string(StateSymmetry s);

StateSymmetry classify_state_symmetry(const CMatrix& rho, const CMatrix& u, double tolerance = tol::decomposition);
StateSymmetry classify_state_symmetry(const DensityMatrix& rho, const SymmetryOp& u,
                                      double tolerance = tol::decomposition);

}  // namespace sssb
