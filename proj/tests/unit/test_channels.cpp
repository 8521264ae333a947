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
#include "sssb/channels.hpp"
#include "sssb/purify.hpp"

using namespace sssb;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

CMatrix plus_density(std::size_t n) { return oracle::outer(oracle::plus_state(n)); }

}  // namespace

TEST(PauliMix, MatchesOracle) {
    oracle::Gen gen(3);
    const CMatrix rho = gen.density(3, 2);
    const KrausChannel ch = pauli_mix(PauliString::from_string("ZZI"), 0.3);
    EXPECT_LT(ch.trace_preservation_error(), 1e-15);
    EXPECT_LT(max_abs(ch.apply(rho) - oracle::mix(rho, oracle::pauli_matrix("ZZI"), 0.3)), 1e-15);
    EXPECT_THROW(pauli_mix(PauliString::from_string("Z"), 1.5), PreconditionError);
    EXPECT_THROW(pauli_mix(PauliString::from_string("Z"), -0.1), PreconditionError);
}

TEST(PauliMix, HalfDephasedPair) {
    // |++> under p = 1/2 ZZ dephasing is (I + XX)/4.
    const CMatrix out = pauli_mix(PauliString::from_string("ZZ"), 0.5).apply(plus_density(2));
    EXPECT_LT(max_abs(out - (CMatrix::Identity(4, 4) + oracle::pauli_matrix("XX")) / 4.0), 1e-15);
}

TEST(KrausChannel, DenseTermsAndValidation) {
    CMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    std::vector<KrausTerm> terms;
    terms.push_back({1.0, make_unitary(h, {1})});
    const KrausChannel ch(2, std::move(terms));
    EXPECT_LT(ch.trace_preservation_error(), 1e-15);
    const CMatrix rho = oracle::outer(oracle::Gen(9).state(2));
    const CMatrix hh = oracle::embed(h, 1, 2);
    EXPECT_LT(max_abs(ch.apply(rho) - hh * rho * hh.adjoint()), 1e-14);

    std::vector<KrausTerm> neg;
    neg.push_back({-0.1, PauliString(2)});
    EXPECT_THROW(KrausChannel(2, std::move(neg)), PreconditionError);
    std::vector<KrausTerm> wrong;
    wrong.push_back({1.0, PauliString(3)});
    EXPECT_THROW(KrausChannel(2, std::move(wrong)), PreconditionError);
}

TEST(KrausChannel, DetectsTraceLoss) {
    std::vector<KrausTerm> terms;
    terms.push_back({0.5, PauliString(1)});
    EXPECT_NEAR(KrausChannel(1, std::move(terms)).trace_preservation_error(), 0.5, 1e-15);
}

TEST(BondDephase, OneDimensionalOracle) {
    const Lattice chain = Lattice::chain(4);
    const double p = 0.2;
    const ChannelSequence seq = bond_dephase_1d(chain, p);
    EXPECT_EQ(seq.factors().size(), 3u);
    CMatrix ref = plus_density(4);
    for (const char* s : {"ZZII", "IZZI", "IIZZ"}) ref = oracle::mix(ref, oracle::pauli_matrix(s), p);
    EXPECT_LT(max_abs(seq.apply(plus_density(4)) - ref), 1e-15);
    // X_v decays by (1 - 2p) per bond touching v.
    const DensityMatrix out = seq.apply(DensityMatrix(4, plus_density(4)));
    EXPECT_NEAR(expectation(out, PauliString::from_string("XIII")).real(), 1 - 2 * p, 1e-14);
    EXPECT_NEAR(expectation(out, PauliString::from_string("IXII")).real(), (1 - 2 * p) * (1 - 2 * p), 1e-14);
    EXPECT_NEAR(expectation(out, PauliString::from_string("XXXX")).real(), 1.0, 1e-14);
    EXPECT_THROW(bond_dephase_1d(Lattice::square(2, 2), p), PreconditionError);
}

TEST(BondDephase, TwoDimensionalKeepsGlobalX) {
    const Lattice t = Lattice::square(2, 2);
    const ChannelSequence seq = bond_dephase_2d(t, 0.35);
    EXPECT_EQ(seq.factors().size(), 8u);
    const DensityMatrix out = seq.apply(DensityMatrix(4, plus_density(4)));
    EXPECT_TRUE(out.is_valid());
    EXPECT_NEAR(expectation(out, PauliString::from_string("XXXX")).real(), 1.0, 1e-14);
    // Each vertex touches four bonds on the doubled 2x2 torus.
    EXPECT_NEAR(expectation(out, PauliString::from_string("XIII")).real(), std::pow(0.3, 4), 1e-14);
    EXPECT_EQ(classify_state_symmetry(out, SymmetryOp::pauli(PauliString::from_string("XXXX"))),
              StateSymmetry::Strong);
}

TEST(ChannelSequence, ReorderingCommutingFactors) {
    const ChannelSequence seq = bond_dephase_1d(Lattice::chain(4, Boundary::Periodic), 0.3);
    const CMatrix rho = oracle::Gen(21).density(4, 3);
    const ChannelSequence rev = seq.reordered({3, 1, 0, 2});
    EXPECT_LT(max_abs(seq.apply(rho) - rev.apply(rho)), 1e-14);
    EXPECT_THROW(seq.reordered({0, 1}), PreconditionError);
    ChannelSequence s2(3);
    EXPECT_THROW(s2.append(pauli_mix(PauliString(2), 0.1)), PreconditionError);
}

TEST(StarChannel, WilsonLineDecay) {
    const Lattice lat = Lattice::square(2, 2, Boundary::Periodic, Layout::LinkSystem);
    const ChannelSequence seq = star_channel(lat, 0.25);
    EXPECT_EQ(seq.factors().size(), 4u);
    EXPECT_LT(seq.trace_preservation_error(), 1e-15);
    for (std::size_t p = 0; p < lat.n_plaquettes(); ++p) {
        EXPECT_TRUE(is_strong_symmetric_channel(seq, SymmetryOp::pauli(lat.plaquette_operator(p))));
    }
    EXPECT_THROW(star_channel(Lattice::square(2, 2), 0.1), PreconditionError);
}

TEST(PlaquetteChannel, CornersAndSubsystemSymmetry) {
    const Lattice t = Lattice::square(3, 3);
    const ChannelSequence seq = plaquette_channel(t, 0.2);
    EXPECT_EQ(seq.factors().size(), 9u);
    // Row and column X lines commute with every corner product.
    for (std::size_t y = 0; y < 3; ++y) {
        const PauliString row = pauli_on(9, {t.vertex(0, y), t.vertex(1, y), t.vertex(2, y)}, 'X');
        EXPECT_TRUE(is_strong_symmetric_channel(seq, SymmetryOp::pauli(row, SymmetrySupport::Row)));
    }
    EXPECT_FALSE(is_strong_symmetric_channel(seq, SymmetryOp::pauli(PauliString::single(9, 0, 'X'))));
}

TEST(ToricDephase, StarExpectation) {
    const Lattice lat = Lattice::square(2, 2, Boundary::Periodic, Layout::LinkSystem);
    const StateVector tc = build_toric_code(2, 2);
    const DensityMatrix out = toric_dephase(lat, 0.1).apply(DensityMatrix::from_pure(tc));
    EXPECT_NEAR(expectation(out, lat.star_operator(0)).real(), std::pow(0.8, 4), 1e-13);
    EXPECT_NEAR(expectation(out, lat.plaquette_operator(0)).real(), 1.0, 1e-13);
}

TEST(FermionChannel, PartnerOffset) {
    const Lattice lat = Lattice::square(3, 3, Boundary::Periodic, Layout::LinkSystem);
    EXPECT_EQ(fermion_partner(lat, lat.x_link(0, 0)), lat.y_link(1, 2));
    EXPECT_EQ(fermion_partner(lat, lat.x_link(2, 1)), lat.y_link(0, 0));
    EXPECT_EQ(fermion_partner(lat, lat.y_link(1, 2)), lat.x_link(1, 2));
    const PauliString hop = fermion_hop(lat, lat.x_link(0, 0));
    EXPECT_EQ(hop.pauli_at(lat.x_link(0, 0)), 'Z');
    EXPECT_EQ(hop.pauli_at(lat.y_link(1, 2)), 'X');
    EXPECT_EQ(hop.weight(), 2u);
}

TEST(FermionChannel, HopsAnticommuteWithTwoPlaquettesAndStars) {
    const Lattice lat = Lattice::square(3, 3, Boundary::Periodic, Layout::LinkSystem);
    for (std::size_t l = 0; l < lat.n_links(); ++l) {
        const PauliString hop = fermion_hop(lat, l);
        int stars = 0, plaqs = 0;
        for (std::size_t v = 0; v < lat.n_vertices(); ++v) stars += !hop.commutes_with(lat.star_operator(v));
        for (std::size_t p = 0; p < lat.n_plaquettes(); ++p) plaqs += !hop.commutes_with(lat.plaquette_operator(p));
        EXPECT_EQ(stars, 2) << l;
        EXPECT_EQ(plaqs, 2) << l;
    }
}

TEST(FermionChannel, LoopsAreStrongSymmetries) {
    const Lattice lat = Lattice::square(3, 3, Boundary::Periodic, Layout::LinkSystem);
    const ChannelSequence seq = toric_fermion_channel(lat, 0.3);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_TRUE(is_strong_symmetric_channel(seq, SymmetryOp::pauli(fermion_loop_horizontal(lat, k), SymmetrySupport::Loop)));
        EXPECT_TRUE(is_strong_symmetric_channel(seq, SymmetryOp::pauli(fermion_loop_vertical(lat, k), SymmetrySupport::Loop)));
    }
    for (std::size_t v = 0; v < lat.n_vertices(); ++v)
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_TRUE(fermion_loop_horizontal(lat, k).commutes_with(lat.star_operator(v)));
            EXPECT_TRUE(fermion_loop_vertical(lat, k).commutes_with(lat.plaquette_operator(v)));
        }
    EXPECT_FALSE(is_strong_symmetric_channel(seq, SymmetryOp::pauli(toric_z_loop_horizontal(lat, 0))));
}

TEST(StrongSymmetry, PauliAndDensePathsAgree) {
    const KrausChannel ch = pauli_mix(PauliString::from_string("ZZ"), 0.4);
    EXPECT_TRUE(is_strong_symmetric_channel(ch, SymmetryOp::pauli(PauliString::from_string("XX"))));
    EXPECT_TRUE(is_strong_symmetric_channel(ch, SymmetryOp::dense(oracle::pauli_matrix("XX"))));
    EXPECT_FALSE(is_strong_symmetric_channel(ch, SymmetryOp::pauli(PauliString::from_string("XI"))));
    EXPECT_FALSE(is_strong_symmetric_channel(ch, SymmetryOp::dense(oracle::pauli_matrix("XI"))));
    // Anticommuting with every nontrivial Kraus is still strong when the identity has zero weight.
    EXPECT_TRUE(is_strong_symmetric_channel(pauli_mix(PauliString::from_string("Z"), 1.0),
                                            SymmetryOp::pauli(PauliString::from_string("X"))));
    EXPECT_THROW(is_strong_symmetric_channel(ch, SymmetryOp::pauli(PauliString(3))), PreconditionError);
}

TEST(StateSymmetry, Classification) {
    const SymmetryOp xx = SymmetryOp::pauli(PauliString::from_string("XX"));
    EXPECT_EQ(classify_state_symmetry(DensityMatrix(2, plus_density(2)), xx), StateSymmetry::Strong);
    EXPECT_EQ(classify_state_symmetry(DensityMatrix::maximally_mixed(2), xx), StateSymmetry::WeakOnly);
    EXPECT_EQ(classify_state_symmetry(DensityMatrix::from_pure(StateVector::basis(2, 0)), xx), StateSymmetry::None);
    EXPECT_EQ(classify_state_symmetry(CMatrix(CMatrix::Identity(4, 4) / 4.0), oracle::pauli_matrix("XX")),
              StateSymmetry::WeakOnly);
    EXPECT_STREQ(to_string(StateSymmetry::WeakOnly), "WeakOnly");
}
