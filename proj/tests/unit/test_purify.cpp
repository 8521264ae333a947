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
#include "sssb/purify.hpp"

using namespace sssb;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

const double kThetas[] = {0.0, M_PI / 16, M_PI / 8, 3 * M_PI / 16, M_PI / 4};

void expect_stinespring(const PurifiedState& psi) {
    const CMatrix direct = psi.system_density().matrix();
    const CMatrix via = psi.equivalent_channel().apply(psi.initial_system_density()).matrix();
    EXPECT_LT(max_abs(direct - via), 1e-10) << "theta " << psi.theta;
}

void expect_stabilized(const PurifiedState& psi) {
    for (const PauliString& s : defining_stabilizers(psi)) {
        EXPECT_NEAR(expectation(psi.state, s).real(), 1.0, 1e-12) << s.str();
    }
}

}  // namespace

TEST(Gates, AllUnitary) {
    for (GateFamily f : {GateFamily::Cluster1D, GateFamily::Link2D, GateFamily::Star1Form, GateFamily::PlaquetteSub,
                         GateFamily::ToricProjector}) {
        for (double th : kThetas) {
            const DenseOperator g = make_gate({f, th});
            EXPECT_TRUE(g.unitary);
            EXPECT_LT(g.unitarity_error(), 1e-12);
        }
    }
    EXPECT_EQ(make_gate({GateFamily::Cluster1D, 0}).dimension(), 8u);
    EXPECT_EQ(make_gate({GateFamily::Star1Form, 0}).dimension(), 32u);
    EXPECT_EQ(make_gate({GateFamily::ToricProjector, 0}).dimension(), 4u);
}

TEST(Gates, ClusterGateAtZeroIsControlledParity) {
    // The ancilla (bit 1) flips exactly when the controls disagree.
    const CMatrix g = cluster_gate_1d(0.0).matrix;
    for (std::uint64_t a = 0; a < 2; ++a)
        for (std::uint64_t b = 0; b < 2; ++b) {
            const std::uint64_t in = a | (b << 2);
            const std::uint64_t out = in | ((a ^ b) << 1);
            EXPECT_NEAR(std::abs(g(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in))), 1.0, 1e-15);
        }
}

TEST(Builders, OneDimensionalStinespring) {
    for (double th : kThetas) expect_stinespring(build_1d_spt(5, th));
    expect_stinespring(build_1d_spt(4, M_PI / 8, Boundary::Periodic));
}

TEST(Builders, TwoDimensionalStinespring) {
    for (double th : {0.0, M_PI / 8, M_PI / 4}) expect_stinespring(build_2d_spt(2, 2, th));
}

TEST(Builders, OneFormStinespring) {
    for (double th : {0.0, M_PI / 8, M_PI / 4}) expect_stinespring(build_1form_system_spt(2, 2, th));
}

TEST(Builders, SubsystemStinespring) {
    for (double th : {0.0, M_PI / 8, M_PI / 4}) expect_stinespring(build_subsystem_spt(2, 2, th));
}

TEST(Builders, StabilizersAtZero) {
    expect_stabilized(build_1d_spt(5, 0.0));
    expect_stabilized(build_1d_spt(4, 0.0, Boundary::Periodic));
    expect_stabilized(build_2d_spt(2, 2, 0.0));
    expect_stabilized(build_1form_system_spt(2, 2, 0.0));
    expect_stabilized(build_subsystem_spt(2, 2, 0.0));
}

TEST(Builders, TrivialEndpoint) {
    // theta = pi/4 is p = 0: the system is left in its initial product state.
    const PurifiedState psi = build_1d_spt(4, M_PI / 4);
    EXPECT_LT(max_abs(psi.system_density().matrix() - psi.initial_system_density().matrix()), 1e-12);
    EXPECT_NEAR(purity(psi.system_density()), 1.0, 1e-12);
}

TEST(Builders, NormPreserved) {
    EXPECT_NEAR(build_2d_spt(2, 2, 0.3).state.norm(), 1.0, 1e-12);
    EXPECT_NEAR(build_subsystem_spt(2, 2, 0.2).state.norm(), 1.0, 1e-12);
}

TEST(Builders, RejectBadInput) {
    EXPECT_THROW(build_1d_spt(4, -0.1), PreconditionError);
    EXPECT_THROW(build_1d_spt(4, 1.0), PreconditionError);
    EXPECT_THROW(build_2d_spt(3, 3, 0.0), PreconditionError);
    EXPECT_THROW(build_1d_spt(8, 0.0), PreconditionError);
}

TEST(StringOrder, ClosedForm) {
    for (double th : kThetas) {
        const PurifiedState psi = build_1d_spt(6, th);
        for (std::size_t r = 1; r <= 4; ++r) {
            const Path path = psi.lattice.path_between(1, 1 + r);
            EXPECT_NEAR(string_order(psi, path), std::pow(std::cos(2 * th), static_cast<double>(r)), 1e-12);
        }
    }
}

TEST(StringOrder, OperatorShape) {
    const PurifiedState psi = build_1d_spt(4, 0.0);
    const PauliString s = string_operator(psi.lattice, psi.lattice.path_between(0, 2));
    EXPECT_EQ(s.str(), "+Z_Z_ZZ_");
    Path bad = psi.lattice.path_between(0, 2);
    bad.links[0] = 2;
    EXPECT_THROW(string_operator(psi.lattice, bad), PreconditionError);
}

TEST(MembraneOrder, OneAtZeroTheta) {
    const PurifiedState one_form = build_1form_system_spt(2, 2, 0.0);
    EXPECT_NEAR(membrane_order(one_form, {0}), 1.0, 1e-12);
    EXPECT_NEAR(membrane_order(one_form, {0, 1}), 1.0, 1e-12);
    const PurifiedState sub = build_subsystem_spt(2, 2, 0.0);
    EXPECT_NEAR(membrane_order(sub, {0, 1}), 1.0, 1e-12);
    EXPECT_THROW(membrane_operator(build_1d_spt(3, 0.0), {0}), PreconditionError);
}

TEST(ToricCode, Stabilizers) {
    const StateVector tc = build_toric_code(2, 3);
    const Lattice lat = Lattice::square(2, 3, Boundary::Periodic, Layout::LinkSystem);
    EXPECT_NEAR(tc.norm(), 1.0, 1e-12);
    for (std::size_t v = 0; v < lat.n_vertices(); ++v)
        EXPECT_NEAR(expectation(tc, lat.star_operator(v)).real(), 1.0, 1e-12);
    for (std::size_t p = 0; p < lat.n_plaquettes(); ++p)
        EXPECT_NEAR(expectation(tc, lat.plaquette_operator(p)).real(), 1.0, 1e-12);
    EXPECT_NEAR(expectation(tc, toric_z_loop_horizontal(lat, 1)).real(), 1.0, 1e-12);
    EXPECT_NEAR(expectation(tc, toric_z_loop_vertical(lat, 0)).real(), 1.0, 1e-12);
}

TEST(EprDouble, FourPointIsRenyi) {
    oracle::Gen gen(41);
    const CMatrix rho = gen.density(3, 3);
    const StateVector pp = epr_double(DensityMatrix(3, rho));
    EXPECT_NEAR(pp.norm(), 1.0, 1e-12);
    for (int k = 0; k < 10; ++k) {
        const PauliString o = gen.pauli(3);
        EXPECT_NEAR(four_point(pp, o), oracle::renyi2(rho, o.to_matrix()), 1e-12);
    }
    EXPECT_THROW(four_point(pp, PauliString(2)), PreconditionError);
}

TEST(Wilson, LineShape) {
    const Lattice lat = Lattice::square(2, 2, Boundary::Periodic, Layout::LinkSystem);
    const PauliString w = wilson_line(lat, 1);
    EXPECT_EQ(w.weight(), 2u);
    EXPECT_EQ(w.pauli_at(lat.x_link(1, 0)), 'X');
    EXPECT_EQ(w.pauli_at(lat.x_link(1, 1)), 'X');
    EXPECT_THROW(wilson_line(Lattice::square(2, 2), 0), PreconditionError);
}

TEST(Gapless, MatchesDenseDiagonalization) {
    const std::size_t L = 4, n = 2 * L - 1;
    auto ops = [&](std::vector<std::pair<std::size_t, char>> f) { return oracle::product_of(f, n); };
    auto anc = [&](std::size_t l) { return L + l; };
    CMatrix h = CMatrix::Zero(1 << n, 1 << n);
    for (std::size_t i = 0; i + 1 < L; ++i) h -= ops({{i, 'Z'}, {anc(i), 'Z'}, {i + 1, 'Z'}});
    for (std::size_t i = 1; i + 1 < L; ++i) h -= ops({{anc(i - 1), 'X'}, {i, 'X'}, {anc(i), 'X'}});
    for (std::size_t i = 0; i < L; ++i) h -= ops({{i, 'X'}});
    h -= ops({{0, 'X'}, {anc(0), 'X'}});
    h -= ops({{anc(L - 2), 'X'}, {L - 1, 'X'}});
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);

    const GaplessResult g = build_gapless_spt(L);
    EXPECT_NEAR(g.energy, es.eigenvalues()[0], 1e-9);
    EXPECT_GT(es.eigenvalues()[1] - es.eigenvalues()[0], 1e-3);
    EXPECT_LT(g.residual, 1e-8);
    const CVector ground = es.eigenvectors().col(0);
    EXPECT_NEAR(std::abs(ground.dot(g.psi.state.amplitudes())), 1.0, 1e-8);
    EXPECT_EQ(g.psi.family, SptFamily::GaplessCluster);
}

TEST(Gapless, ProductEnergyAndBudget) {
    EXPECT_EQ(gapless_product_energy(8), -8.0);
    EXPECT_NEAR(build_gapless_spt(8).energy, -17.837951447459453, 1e-9);
    EXPECT_THROW(build_gapless_spt(10), PreconditionError);
    EXPECT_THROW(build_gapless_spt(1), PreconditionError);
}
