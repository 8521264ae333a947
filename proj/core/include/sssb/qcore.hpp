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

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sssb {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Raised when an operation's documented precondition does not hold.
/// The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double construction = 1e-12;
inline constexpr double identity = 1e-10;
inline constexpr double decomposition = 1e-9;
inline constexpr double psd_clamp = 1e-10;
inline constexpr double psd_reject = 1e-8;
}  // namespace tol

/// Signed tensor product of single-qubit Paulis, i^phase * X^x * Z^z.
///
/// Bit j of the masks addresses qubit j (qubit 0 is the least-significant
/// basis bit). Acting on a basis state: P|b> = i^phase (-1)^{|b & z|} |b ^ x>.
/// With this convention Y = i X Z has both bits set and phase 1.
class PauliString {
  public:
    static constexpr std::size_t max_qubits = 64;

    PauliString() = default;
    explicit PauliString(std::size_t n_qubits);
    PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask, int phase = 0);

    /// Parses "+XIZY" style text. Character i addresses qubit i.
    static PauliString from_string(std::string_view text);
    static PauliString single(std::size_t n_qubits, std::size_t qubit, char pauli);
    /// Product of `pauli` over every qubit in `qubits`.
    static PauliString on(std::size_t n_qubits, std::span<const std::size_t> qubits, char pauli);

    std::size_t n_qubits() const { return n_; }
    std::uint64_t x_mask() const { return x_; }
    std::uint64_t z_mask() const { return z_; }
    /// Phase exponent k in i^k, k in {0,1,2,3}.
    int phase() const { return phase_; }
    cplx phase_factor() const;

    bool is_identity() const { return x_ == 0 && z_ == 0; }
    bool is_hermitian() const;
    bool commutes_with(const PauliString& other) const;
    std::size_t weight() const;
    char pauli_at(std::size_t qubit) const;

    PauliString operator*(const PauliString& rhs) const;
    PauliString& operator*=(const PauliString& rhs);
    bool operator==(const PauliString& rhs) const = default;

    PauliString adjoint() const;
    /// Entrywise complex conjugate in the computational basis.
    PauliString conjugate() const;
    PauliString with_phase(int phase) const;

    /// Image of basis state b, returned as (coefficient, index).
    std::pair<cplx, std::uint64_t> act_on_basis(std::uint64_t b) const;

    CMatrix to_matrix() const;
    std::string str() const;

  private:
    std::size_t n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int phase_ = 0;
};

class StateVector {
  public:
    StateVector() = default;
    /// Takes amplitudes as given; use normalized() to rescale.
    StateVector(std::size_t n_qubits, CVector amplitudes);

    static StateVector basis(std::size_t n_qubits, std::uint64_t index);
    /// Tensor product of single-qubit states; states[j] lands on qubit j.
    static StateVector product(std::span<const std::array<cplx, 2>> states);
    static StateVector plus_state(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const CVector& amplitudes() const { return amps_; }
    CVector& amplitudes() { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

    double norm() const { return amps_.norm(); }
    StateVector normalized() const;
    cplx inner(const StateVector& ket) const;

  private:
    std::size_t n_ = 0;
    CVector amps_;
};

class DensityMatrix {
  public:
    DensityMatrix() = default;
    DensityMatrix(std::size_t n_qubits, CMatrix entries);

    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix& matrix() const { return m_; }
    CMatrix& matrix() { return m_; }

    cplx trace() const { return m_.trace(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// Hermitian, PSD and unit-trace within the module tolerances.
    bool is_valid(double tolerance = tol::identity) const;

  private:
    std::size_t n_ = 0;
    CMatrix m_;
};

/// Square matrix acting on `targets.size()` qubits. Row/column bit j of the
/// matrix refers to targets[j].
struct DenseOperator {
    CMatrix matrix;
    std::vector<std::size_t> targets;
    bool unitary = false;

    std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
    double unitarity_error() const;
};

DenseOperator make_unitary(CMatrix matrix, std::vector<std::size_t> targets = {});

StateVector apply_pauli(const StateVector& psi, const PauliString& p);
/// P rho P^dagger when `two_sided`, otherwise P rho.
DensityMatrix apply_pauli(const DensityMatrix& rho, const PauliString& p, bool two_sided = true);
/// Raw-matrix variant of P M P^dagger used by channel kernels.
CMatrix conjugate_by_pauli(const CMatrix& m, const PauliString& p);
CMatrix left_multiply_pauli(const CMatrix& m, const PauliString& p);

StateVector apply_gate(const StateVector& psi, const DenseOperator& gate, std::span<const std::size_t> targets);
StateVector apply_gate(const StateVector& psi, const DenseOperator& gate);
/// G M G^dagger with G embedded on targets; G need not be unitary.
CMatrix conjugate_by_operator(const CMatrix& m, const CMatrix& g, std::span<const std::size_t> targets, std::size_t n_qubits);
/// Full 2^n matrix of G embedded on targets.
CMatrix embed_operator(const CMatrix& g, std::span<const std::size_t> targets, std::size_t n_qubits);

/// Keeps qubits in `keep` (ordered: keep[j] becomes qubit j of the result).
DensityMatrix partial_trace(const StateVector& psi, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// Hermitian PSD square root; eigenvalues in (-psd_reject, 0) are clamped.
CMatrix matrix_sqrt_psd(const CMatrix& m);
DenseOperator matrix_sqrt_psd(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);

cplx expectation(const StateVector& psi, const PauliString& p);
cplx expectation(const DensityMatrix& rho, const PauliString& p);

/// Von Neumann entropy in nats.
double von_neumann_entropy(const CMatrix& rho);

}  // namespace sssb
