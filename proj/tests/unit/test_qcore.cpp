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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sssb/qcore.hpp"

using namespace sssb;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// (I + prod X) / 2^N, the p = 1/2 dephased state.
CMatrix rho_plus(std::size_t n) {
    return (CMatrix::Identity(1 << n, 1 << n) + oracle::pauli_matrix(std::string(n, 'X'))) / std::pow(2.0, n);
}

}  // namespace

TEST(PauliString, MatrixMatchesKronecker) {
    for (const char* s : {"X", "Y", "Z", "XYZ", "IZYX", "YYIZ"}) {
        EXPECT_LT(max_abs(PauliString::from_string(s).to_matrix() - oracle::pauli_matrix(s)), 1e-15) << s;
    }
}

TEST(PauliString, SignedText) {
    const PauliString p = PauliString::from_string("-iXZ");
    EXPECT_LT(max_abs(p.to_matrix() - cplx(0, -1) * oracle::pauli_matrix("XZ")), 1e-15);
    EXPECT_EQ(p.str(), "-iXZ");
    EXPECT_EQ(PauliString::from_string("+YIY").str(), "+Y_Y");
}

TEST(PauliString, ProductTracksPhase) {
    const PauliString x = PauliString::single(1, 0, 'X');
    const PauliString z = PauliString::single(1, 0, 'Z');
    const PauliString y = PauliString::single(1, 0, 'Y');
    const cplx i(0, 1);
    EXPECT_LT(((x * z).to_matrix() + i * y.to_matrix()).cwiseAbs().maxCoeff(), 1e-15);  // XZ = -iY
    EXPECT_LT(((z * x).to_matrix() - i * y.to_matrix()).cwiseAbs().maxCoeff(), 1e-15);  // ZX = iY
    EXPECT_EQ(z * x * x, z);
    EXPECT_EQ(x * x, PauliString(1));
    EXPECT_FALSE(x.commutes_with(z));
    EXPECT_TRUE(PauliString::from_string("XX").commutes_with(PauliString::from_string("ZZ")));
}

TEST(PauliString, HermiticityAndAdjoint) {
    EXPECT_TRUE(PauliString::from_string("XYZ").is_hermitian());
    const PauliString p = PauliString::from_string("iXZ");
    EXPECT_FALSE(p.is_hermitian());
    EXPECT_LT(max_abs(p.adjoint().to_matrix() - p.to_matrix().adjoint()), 1e-15);
    EXPECT_LT(max_abs(p.conjugate().to_matrix() - p.to_matrix().conjugate()), 1e-15);
}

TEST(PauliString, Accessors) {
    const PauliString p = PauliString::from_string("XIYZ");
    EXPECT_EQ(p.weight(), 3u);
    EXPECT_EQ(p.pauli_at(0), 'X');
    EXPECT_EQ(p.pauli_at(1), 'I');
    EXPECT_EQ(p.pauli_at(2), 'Y');
    EXPECT_EQ(p.pauli_at(3), 'Z');
    const std::size_t qs[] = {0, 2, 2};
    EXPECT_EQ(PauliString::on(3, qs, 'Z'), PauliString::single(3, 0, 'Z'));
}

TEST(PauliString, RejectsBadInput) {
    EXPECT_THROW(PauliString(65), PreconditionError);
    EXPECT_THROW(PauliString(2, 0b100, 0), PreconditionError);
    EXPECT_THROW(PauliString::from_string("XQ"), PreconditionError);
    EXPECT_THROW(PauliString::single(2, 2, 'X'), PreconditionError);
    EXPECT_THROW(PauliString::from_string("X") * PauliString::from_string("XX"), PreconditionError);
}

TEST(ApplyPauli, BasisExamples) {
    const StateVector zero = StateVector::basis(1, 0);
    EXPECT_NEAR(std::abs(apply_pauli(zero, PauliString::from_string("Z"))[0] - 1.0), 0, 1e-15);
    const StateVector flipped = apply_pauli(zero, PauliString::from_string("X"));
    EXPECT_NEAR(std::abs(flipped[1] - 1.0), 0, 1e-15);
    EXPECT_NEAR(std::abs(flipped[0]), 0, 1e-15);
}

TEST(ApplyPauli, ZZPreservesRhoPlus) {
    const DensityMatrix rho(4, rho_plus(4));
    const DensityMatrix out = apply_pauli(rho, PauliString::from_string("ZZII"));
    EXPECT_LT(max_abs(out.matrix() - rho.matrix()), 1e-15);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
}

TEST(ApplyPauli, OneSidedAndConjugation) {
    oracle::Gen gen(11);
    const CMatrix m = gen.density(3, 3);
    const PauliString p = PauliString::from_string("iXYZ").with_phase(1);
    const CMatrix pm = p.to_matrix();
    EXPECT_LT(max_abs(conjugate_by_pauli(m, p) - pm * m * pm.adjoint()), 1e-14);
    EXPECT_LT(max_abs(left_multiply_pauli(m, p) - pm * m), 1e-14);
    const DensityMatrix one_sided = apply_pauli(DensityMatrix(3, m), p, false);
    EXPECT_LT(max_abs(one_sided.matrix() - pm * m), 1e-14);
}

TEST(ApplyPauli, SizeMismatchThrows) {
    EXPECT_THROW(apply_pauli(StateVector::basis(2, 0), PauliString::from_string("XXX")), PreconditionError);
}

TEST(ApplyGate, IdentityAndHadamard) {
    const StateVector psi = StateVector::plus_state(2);
    const std::size_t t0[] = {0};
    const StateVector same = apply_gate(psi, make_unitary(CMatrix::Identity(2, 2)), t0);
    EXPECT_LT((same.amplitudes() - psi.amplitudes()).norm(), 1e-15);

    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    const StateVector out = apply_gate(StateVector::basis(1, 0), make_unitary(h), t0);
    EXPECT_NEAR(out[0].real(), M_SQRT1_2, 1e-15);
    EXPECT_NEAR(out[1].real(), M_SQRT1_2, 1e-15);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12);
}

TEST(ApplyGate, TargetsOrderMatters) {
    // CNOT with control = matrix bit 0, target = matrix bit 1.
    CMatrix cnot = CMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(2, 2) = 1;
    cnot(3, 1) = cnot(1, 3) = 1;
    const DenseOperator g = make_unitary(cnot);
    const std::size_t ctrl2[] = {2, 0};
    const StateVector out = apply_gate(StateVector::basis(3, 0b100), g, ctrl2);
    EXPECT_NEAR(std::abs(out[0b101]), 1.0, 1e-15);
}

TEST(ApplyGate, RejectsNonUnitaryAndDuplicates) {
    const std::size_t t[] = {0};
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(0, 1) = 0.5;
    EXPECT_THROW(make_unitary(bad), PreconditionError);
    const std::size_t dup[] = {1, 1};
    EXPECT_THROW(apply_gate(StateVector::basis(2, 0), make_unitary(CMatrix::Identity(4, 4)), dup), PreconditionError);
    EXPECT_THROW(apply_gate(StateVector::basis(2, 0), make_unitary(CMatrix::Identity(4, 4)), t), PreconditionError);
}

TEST(EmbedOperator, MatchesKronecker) {
    oracle::Gen gen(5);
    const CMatrix u = gen.density(1, 2);
    const std::size_t t[] = {2};
    EXPECT_LT(max_abs(embed_operator(u, t, 4) - oracle::embed(u, 2, 4)), 1e-15);
    const CMatrix m = gen.density(4, 4);
    EXPECT_LT(max_abs(conjugate_by_operator(m, u, t, 4) - oracle::embed(u, 2, 4) * m * oracle::embed(u, 2, 4).adjoint()),
              1e-14);
}

TEST(PartialTrace, Examples) {
    const std::size_t keep0[] = {0};
    const DensityMatrix r0 = partial_trace(StateVector::basis(2, 0), keep0);
    EXPECT_NEAR(r0.matrix()(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(r0.matrix()(1, 1)), 0.0, 1e-15);

    CVector bell = CVector::Zero(4);
    bell[0] = bell[3] = M_SQRT1_2;
    const DensityMatrix half = partial_trace(StateVector(2, bell), keep0);
    EXPECT_LT(max_abs(half.matrix() - 0.5 * CMatrix::Identity(2, 2)), 1e-15);

    EXPECT_THROW(partial_trace(StateVector::basis(2, 0), std::span<const std::size_t>{}), PreconditionError);
}

TEST(PartialTrace, MatchesIndexLoopOracle) {
    oracle::Gen gen(17);
    const CVector psi = gen.state(5);
    const std::vector<std::size_t> keep{1, 3, 4};
    const DensityMatrix fast = partial_trace(StateVector(5, psi), keep);
    EXPECT_LT(max_abs(fast.matrix() - oracle::partial_trace(oracle::outer(psi), 5, keep)), 1e-14);
    const DensityMatrix from_rho = partial_trace(DensityMatrix(5, oracle::outer(psi)), keep);
    EXPECT_LT(max_abs(from_rho.matrix() - fast.matrix()), 1e-14);
}

TEST(PartialTrace, KeepOrderRelabels) {
    const std::vector<std::size_t> swapped{1, 0};
    const DensityMatrix r = partial_trace(StateVector::basis(2, 0b01), swapped);
    EXPECT_NEAR(r.matrix()(0b10, 0b10).real(), 1.0, 1e-15);
}

TEST(MatrixSqrt, Examples) {
    const CMatrix s = matrix_sqrt_psd(CMatrix(0.5 * CMatrix::Identity(2, 2)));
    EXPECT_LT(max_abs(s - M_SQRT1_2 * CMatrix::Identity(2, 2)), 1e-15);

    const CMatrix proj = oracle::outer(oracle::plus_state(2));
    EXPECT_LT(max_abs(matrix_sqrt_psd(proj) - proj), 1e-12);

    const CMatrix rp = rho_plus(3);
    const CMatrix r = matrix_sqrt_psd(rp);
    EXPECT_LT(max_abs(r * r - rp), 1e-10);
    EXPECT_LT(max_abs(r - r.adjoint()), 1e-15);
}

TEST(MatrixSqrt, ClampsAndRejects) {
    CMatrix tiny = CMatrix::Zero(2, 2);
    tiny(0, 0) = 1.0;
    tiny(1, 1) = -5e-11;
    EXPECT_NO_THROW(matrix_sqrt_psd(tiny));
    tiny(1, 1) = -1e-6;
    EXPECT_THROW(matrix_sqrt_psd(tiny), PreconditionError);
}

TEST(Purity, Examples) {
    EXPECT_NEAR(purity(DensityMatrix::from_pure(StateVector::plus_state(3))), 1.0, 1e-14);
    EXPECT_NEAR(purity(DensityMatrix::maximally_mixed(4)), 1.0 / 16, 1e-15);
    EXPECT_NEAR(purity(DensityMatrix(4, rho_plus(4))), 0.125, 1e-15);
}

TEST(DensityMatrix, Validity) {
    EXPECT_TRUE(DensityMatrix(4, rho_plus(4)).is_valid());
    CMatrix bad = rho_plus(2);
    bad(0, 1) += 0.1;
    EXPECT_FALSE(DensityMatrix(2, bad).is_valid());
    EXPECT_THROW(DensityMatrix(3, CMatrix::Identity(4, 4)), PreconditionError);
}

TEST(StateVector, ProductAndInner) {
    const std::array<cplx, 2> up{1, 0}, plus{M_SQRT1_2, M_SQRT1_2};
    const std::vector<std::array<cplx, 2>> kets{plus, up};
    const StateVector psi = StateVector::product(kets);
    EXPECT_NEAR(std::abs(psi[0] - M_SQRT1_2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi[1] - M_SQRT1_2), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(psi.inner(psi) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(expectation(psi, PauliString::from_string("XZ")) - 1.0), 0.0, 1e-15);
}

TEST(Entropy, BellHalfIsLn2) {
    EXPECT_NEAR(von_neumann_entropy(0.5 * CMatrix::Identity(2, 2)), std::log(2.0), 1e-14);
    EXPECT_NEAR(von_neumann_entropy(oracle::outer(oracle::plus_state(2))), 0.0, 1e-12);
}
