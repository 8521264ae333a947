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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sssb/statmech.hpp"

using namespace sssb;

namespace {

// <corner product of the d x d square> in the periodic L x L plaquette model, by enumeration.
double plaquette_oracle(std::size_t L, double k, std::size_t d) {
    double z = 0, c = 0;
    for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << (L * L)); ++cfg) {
        auto s = [&](std::size_t x, std::size_t y) { return ((cfg >> ((y % L) * L + x % L)) & 1) ? -1.0 : 1.0; };
        double e = 0, corner = 0;
        for (std::size_t y = 0; y < L; ++y)
            for (std::size_t x = 0; x < L; ++x) {
                e += s(x, y) * s(x + 1, y) * s(x, y + 1) * s(x + 1, y + 1);
                corner += s(x, y) * s(x + d, y) * s(x, y + d) * s(x + d, y + d);
            }
        const double w = std::exp(k * e);
        z += w;
        c += w * corner / static_cast<double>(L * L);
    }
    return c / z;
}

McOptions quick_options(std::uint64_t seed) {
    McOptions o;
    o.thermalization = 2000;
    o.sweeps = 40000;
    o.bins = 40;
    o.seed = seed;
    return o;
}

}  // namespace

TEST(Coupling, InfinityTag) {
    const Coupling inf = Coupling::infinite();
    EXPECT_TRUE(inf.is_infinite());
    EXPECT_EQ(inf.str(), "inf");
    EXPECT_EQ(inf.tanh(), 1.0);
    EXPECT_TRUE(inf.scaled(2.0).is_infinite());
    EXPECT_THROW(inf.value(), PreconditionError);
    EXPECT_THROW(Coupling{std::numeric_limits<double>::infinity()}, PreconditionError);
    EXPECT_EQ(Coupling(0.5).str(), "0.5");
    EXPECT_EQ(Coupling(0.25).scaled(2.0), Coupling(0.5));
}

TEST(ParameterMap, QuarterErrorRate) {
    const ParameterMap m = param_from_p(0.25);
    EXPECT_NEAR(m.theta, M_PI / 12, 1e-15);
    EXPECT_NEAR(m.beta.value(), 0.5 * std::log(2.0), 1e-15);
    EXPECT_NEAR(m.beta_tilde.value(), -0.5 * std::log(2.0 - std::sqrt(3.0)), 1e-14);
    EXPECT_NEAR(m.renyi2_coupling().tanh(), 0.6, 1e-15);
    EXPECT_NEAR(m.beta.tanh(), m.beta_tilde.tanh() * m.beta_tilde.tanh(), 1e-15);
}

TEST(ParameterMap, Endpoints) {
    const ParameterMap half = param_from_p(0.5);
    EXPECT_TRUE(half.beta.is_infinite());
    EXPECT_TRUE(half.beta_tilde.is_infinite());
    EXPECT_EQ(half.theta, 0.0);
    const ParameterMap zero = param_from_p(0.0);
    EXPECT_NEAR(zero.theta, M_PI / 4, 1e-15);
    EXPECT_EQ(zero.beta.value(), 0.0);
    EXPECT_NEAR(zero.beta_tilde.value(), 0.0, 1e-15);
    EXPECT_TRUE(param_from_theta(0.0).beta.is_infinite());
    EXPECT_TRUE(param_map(ParamSource::Beta, INFINITY).beta_tilde.is_infinite());
    EXPECT_THROW(param_from_p(0.6), PreconditionError);
    EXPECT_THROW(param_from_p(-0.1), PreconditionError);
    EXPECT_THROW(param_from_theta(1.0), PreconditionError);
    EXPECT_THROW(param_from_beta(Coupling(-1.0)), PreconditionError);
}

TEST(ParameterMap, RoutesAgree) {
    for (double p : {0.01, 0.1, 0.178, 0.3, 0.49}) {
        const ParameterMap a = param_from_p(p);
        for (const ParameterMap& b : {param_from_theta(a.theta), param_from_beta(a.beta), param_from_beta_tilde(a.beta_tilde),
                                      param_map(ParamSource::P, p)}) {
            EXPECT_NEAR(b.p, p, 1e-12);
            EXPECT_NEAR(b.theta, a.theta, 1e-12);
            EXPECT_NEAR(b.beta.value(), a.beta.value(), 1e-12);
            EXPECT_NEAR(b.beta_tilde.value(), a.beta_tilde.value(), 1e-9);
        }
    }
}

TEST(Critical, Values) {
    EXPECT_NEAR(critical_error_rate(), 0.17820, 5e-6);
    EXPECT_NEAR(critical_coupling_2d(), 0.44068679350977147, 1e-15);
    const ParameterMap pc = param_from_p(critical_error_rate());
    EXPECT_NEAR(pc.renyi2_coupling().tanh(), std::sqrt(2.0) - 1, 1e-12);
    EXPECT_NEAR(pc.renyi2_coupling().value(), critical_coupling_2d(), 1e-12);
    EXPECT_NEAR(error_rate_from_renyi2_coupling(critical_coupling_2d()), critical_error_rate(), 1e-12);
}

TEST(Ising1d, OpenAndPeriodic) {
    const Coupling k(0.7);
    const double t = std::tanh(0.7);
    EXPECT_NEAR(ising1d_corr(k, 3, 8), t * t * t, 1e-15);
    std::vector<std::pair<std::size_t, std::size_t>> ring;
    for (std::size_t i = 0; i < 8; ++i) ring.emplace_back(i, (i + 1) % 8);
    EXPECT_NEAR(ising1d_corr(k, 3, 8, Boundary::Periodic), oracle::ising_corr(8, ring, 0.7, 0, 3), 1e-13);
    EXPECT_EQ(ising1d_corr(Coupling::infinite(), 5, 8), 1.0);
    EXPECT_THROW(ising1d_corr(k, 8, 8), PreconditionError);
}

TEST(Ising2d, TransferMatrixMatchesEnumeration) {
    for (auto [lx, ly] : {std::pair<std::size_t, std::size_t>{3, 3}, {4, 3}, {2, 2}, {3, 4}}) {
        const auto bonds = oracle::torus_bonds(lx, ly);
        for (double k : {0.2, 0.44, 0.9}) {
            for (std::size_t dx = 0; dx < lx; ++dx)
                for (std::size_t dy = 0; dy < ly; ++dy) {
                    const double ref = oracle::ising_corr(lx * ly, bonds, k, 0, dy * lx + dx);
                    EXPECT_NEAR(ising2d_tm_corr(Coupling(k), lx, ly, dx, dy), ref, 1e-8)
                        << lx << "x" << ly << " K=" << k << " d=(" << dx << "," << dy << ")";
                }
        }
    }
    EXPECT_EQ(ising2d_tm_corr(Coupling::infinite(), 3, 3, 1), 1.0);
    EXPECT_THROW(ising2d_tm_corr(Coupling(0.3), 13, 3, 1), PreconditionError);
    EXPECT_THROW(ising2d_tm_corr(Coupling(0.3), 3, 3, 3), PreconditionError);
}

TEST(Ising2d, EnumerationRoutes) {
    const Lattice t = Lattice::square(3, 3);
    const IsingInstance inst = IsingInstance::from_lattice(t, 0.3);
    EXPECT_EQ(inst.bonds.size(), 18u);
    EXPECT_NEAR(ising_enumerate_corr(inst, 0, 4), oracle::ising_corr(9, oracle::torus_bonds(3, 3), 0.3, 0, 4), 1e-13);
    IsingInstance signed_inst = inst;
    signed_inst.signs.assign(18, 1);
    signed_inst.signs[0] = -1;
    EXPECT_LT(ising_enumerate_corr(signed_inst, 0, 1), ising_enumerate_corr(inst, 0, 1));
    signed_inst.signs.pop_back();
    EXPECT_THROW(ising_enumerate_corr(signed_inst, 0, 1), PreconditionError);
}

TEST(Rbim, NishimoriRoutesAgree) {
    for (const Lattice& lat : {Lattice::square(2, 2), Lattice::square(3, 2, Boundary::Open), Lattice::chain(5)}) {
        for (double bt : {0.2, 0.6, 1.3}) {
            const RbimResult r = rbim_nishimori_annealed_corr(Coupling(bt), lat, 0, lat.n_vertices() - 1);
            EXPECT_NEAR(r.explicit_sum, r.reduced, 1e-12) << lat.describe() << " " << bt;
        }
    }
    const RbimResult chain = rbim_nishimori_annealed_corr(Coupling(0.6), Lattice::chain(5), 0, 3);
    EXPECT_NEAR(chain.explicit_sum, std::pow(std::tanh(0.6), 6), 1e-12);
    EXPECT_EQ(rbim_nishimori_annealed_corr(Coupling::infinite(), Lattice::chain(3), 0, 2).reduced, 1.0);
    EXPECT_THROW(rbim_nishimori_annealed_corr(Coupling(0.3), Lattice::square(3, 3), 0, 1), PreconditionError);
}

TEST(Tfim, ToeplitzValues) {
    EXPECT_EQ(tfim_critical_corr(0), 1.0);
    EXPECT_NEAR(tfim_critical_corr(1), 2 / M_PI, 1e-15);
    EXPECT_NEAR(tfim_critical_corr(2), 16 / (3 * M_PI * M_PI), 1e-14);
    // Asymptotic amplitude of r^{-1/4}.
    EXPECT_NEAR(tfim_critical_corr(64) * std::pow(64.0, 0.25), 0.6450, 1e-3);
    EXPECT_THROW(tfim_critical_corr(65), PreconditionError);
}

TEST(Fit, ExactPowerLaw) {
    std::vector<double> x, y;
    for (double r = 2; r <= 10; ++r) {
        x.push_back(r);
        y.push_back(3.0 * std::pow(r, -0.75));
    }
    EXPECT_NEAR(fit_decay_exponent(x, y), 0.75, 1e-13);
    EXPECT_THROW(fit_decay_exponent({1.0}, {1.0}), PreconditionError);
    EXPECT_THROW(fit_decay_exponent({1.0, 2.0}, {1.0, -1.0}), PreconditionError);
}

TEST(MonteCarlo, IsingMatchesEnumeration) {
    McOptions o = quick_options(11);
    o.distances = {1, 2};
    const double k = 0.35;
    const McResult r = ising2d_mc(k, 4, o);
    const auto bonds = oracle::torus_bonds(4, 4);
    EXPECT_EQ(r.samples, 40000u);
    EXPECT_NEAR(r.corr[0], oracle::ising_corr(16, bonds, k, 0, 1), 4 * r.corr_err[0] + 1e-3);
    EXPECT_NEAR(r.corr[1], oracle::ising_corr(16, bonds, k, 0, 2), 4 * r.corr_err[1] + 1e-3);
}

TEST(MonteCarlo, Deterministic) {
    McOptions o = quick_options(5);
    o.sweeps = 2000;
    o.thermalization = 100;
    const McResult a = ising2d_mc(0.4, 6, o), b = ising2d_mc(0.4, 6, o);
    EXPECT_EQ(a.m2, b.m2);
    EXPECT_EQ(a.binder, b.binder);
    o.substream = 1;
    EXPECT_NE(ising2d_mc(0.4, 6, o).m2, a.m2);
}

TEST(MonteCarlo, BinderLimits) {
    McOptions o = quick_options(3);
    o.sweeps = 4000;
    EXPECT_NEAR(ising2d_mc(2.0, 8, o).binder, 2.0 / 3.0, 1e-3);
    EXPECT_LT(ising2d_mc(0.05, 8, o).binder, 0.1);
}

TEST(MonteCarlo, RejectsBadOptions) {
    McOptions o;
    o.bins = 1;
    EXPECT_THROW(ising2d_mc(0.4, 4, o), PreconditionError);
    EXPECT_THROW(ising2d_mc(0.4, 1, McOptions{}), PreconditionError);
}

TEST(Binder, CrossingInterpolation) {
    BinderCurve a{8, {0.4, 0.45, 0.5}, {0.3, 0.5, 0.6}, {}};
    BinderCurve b{16, {0.4, 0.45, 0.5}, {0.2, 0.54, 0.66}, {}};
    const auto c = binder_crossing(a, b);
    ASSERT_TRUE(c.has_value());
    EXPECT_NEAR(*c, 0.4 + 0.05 * 0.1 / 0.14, 1e-15);
    b.binder = {0.1, 0.2, 0.3};
    EXPECT_FALSE(binder_crossing(a, b).has_value());
    b.couplings = {0.4, 0.45};
    EXPECT_THROW(binder_crossing(a, b), PreconditionError);
}

TEST(Binder, ScanIndependentOfThreads) {
    McOptions o = quick_options(7);
    o.sweeps = 4000;
    o.thermalization = 500;
    const std::vector<double> ks{0.38, 0.44, 0.50};
    const BinderScan one = binder_scan({4, 8}, ks, o, 1);
    const BinderScan two = binder_scan({4, 8}, ks, o, 3);
    ASSERT_EQ(one.curves.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(one.curves[i].binder, two.curves[i].binder);
    EXPECT_EQ(one.k_star, two.k_star);
    EXPECT_NEAR(one.p_star, error_rate_from_renyi2_coupling(one.k_star), 1e-15);
    EXPECT_THROW(binder_scan({4}, ks, o), PreconditionError);
}

TEST(PlaquetteMc, MatchesEnumeration) {
    const McOptions o = quick_options(13);
    for (std::size_t d : {1, 2}) {
        const PlaquetteMcResult r = plaquette_ising_mc(Coupling(0.5), 4, d, o);
        EXPECT_NEAR(r.four_point, plaquette_oracle(4, 0.5, d), 4 * r.error + 1e-3) << d;
    }
    EXPECT_EQ(plaquette_ising_mc(Coupling::infinite(), 8, 4, o).four_point, 1.0);
    EXPECT_EQ(plaquette_ising_mc(Coupling(0.0), 8, 4, o).four_point, 0.0);
    EXPECT_THROW(plaquette_ising_mc(Coupling(0.5), 8, 8, o), PreconditionError);
    EXPECT_THROW(plaquette_ising_mc(Coupling(0.5), 8, 7, o, Boundary::Open), PreconditionError);
}

TEST(PlaquetteMc, TorusClosedFormMatchesEnumeration) {
    for (double k : {0.3, 0.5, 1.2})
        for (std::size_t d : {1, 2, 3}) EXPECT_NEAR(oracle::plaquette_torus_corner(4, k, d), plaquette_oracle(4, k, d), 1e-12);
    // A row strip through the square contributes tanh(K)^(L + d^2 - 2d); large tori lose it.
    EXPECT_NEAR(oracle::plaquette_torus_corner(128, 1.2, 2), std::pow(std::tanh(1.2), 4), 1e-8);
}

TEST(PlaquetteMc, OpenBoundaryIsUnconstrained) {
    const McOptions o = quick_options(17);
    for (std::size_t d : {1, 2}) {
        const PlaquetteMcResult r = plaquette_ising_mc(Coupling(0.5), 6, d, o, Boundary::Open);
        EXPECT_NEAR(r.four_point, std::pow(std::tanh(0.5), static_cast<double>(d * d)), 4 * r.error + 1e-3) << d;
    }
}
