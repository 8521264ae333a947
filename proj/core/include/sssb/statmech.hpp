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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sssb/lattice.hpp"

namespace sssb {

/// Coupling or inverse temperature with an exact infinity tag.
class Coupling {
  public:
    Coupling() = default;
    explicit Coupling(double value);
    static Coupling infinite();

    bool is_infinite() const { return infinite_; }
    /// Finite value; throws on infinity.
    double value() const;
    double tanh() const;
    Coupling scaled(double factor) const;
    /// "inf" or the shortest round-trip decimal.
    std::string str() const;

    bool operator==(const Coupling&) const = default;

  private:
    double value_ = 0.0;
    bool infinite_ = false;
};

/// p = (1 - sin 2 theta)/2, tanh beta = p/(1-p), exp(-2 beta~) = tan theta,
/// tanh beta = tanh^2 beta~.
struct ParameterMap {
    double p = 0.0;
    double theta = 0.0;
    Coupling beta;
    Coupling beta_tilde;

    /// Ising coupling reproducing the Renyi-2 correlator (2 beta).
    Coupling renyi2_coupling() const { return beta.scaled(2.0); }
    /// Ising coupling reproducing the type-II / annealed correlators (beta).
    Coupling typeII_coupling() const { return beta; }
};

enum class ParamSource { P, Theta, Beta, BetaTilde };

ParameterMap param_map(ParamSource from, double value);
ParameterMap param_from_p(double p);
ParameterMap param_from_theta(double theta);
ParameterMap param_from_beta(Coupling beta);
ParameterMap param_from_beta_tilde(Coupling beta_tilde);

/// 1/2 (1 - sqrt(sqrt 2 - 1)).
double critical_error_rate();
/// 1/2 ln(1 + sqrt 2).
double critical_coupling_2d();
/// Inverse of K = 2 beta(p).
double error_rate_from_renyi2_coupling(double k);

double ising1d_corr(Coupling k, std::size_t r, std::size_t length, Boundary boundary = Boundary::Open);

inline constexpr std::size_t kTransferWidthBudget = 12;

/// Periodic Lx by Ly Ising model, <s(0,0) s(dx,dy)> by row transfer matrix.
double ising2d_tm_corr(Coupling k, std::size_t lx, std::size_t ly, std::size_t dx, std::size_t dy = 0);

/// Explicit Ising model on an arbitrary bond multiset, with optional bond signs.
struct IsingInstance {
    std::size_t n_sites = 0;
    std::vector<std::pair<std::size_t, std::size_t>> bonds;
    double coupling = 0.0;
    std::vector<int> signs;

    static IsingInstance from_lattice(const Lattice& lat, double coupling);
};

/// Brute-force <s_a s_b> over all 2^n_sites configurations (n_sites <= 24).
double ising_enumerate_corr(const IsingInstance& inst, std::size_t a, std::size_t b);

struct McOptions {
    std::size_t thermalization = 10000;
    std::size_t sweeps = 100000;
    std::size_t measure_every = 1;
    std::size_t bins = 50;
    std::uint64_t seed = 7;
    std::uint64_t substream = 0;
    std::vector<std::size_t> distances;
};

struct McResult {
    double m2 = 0, m2_err = 0;
    double m4 = 0;
    double binder = 0, binder_err = 0;
    std::vector<double> corr, corr_err;
    std::size_t samples = 0;
};

/// Metropolis on the periodic L x L Ising model; U4 = 1 - <m^4>/(3 <m^2>^2).
McResult ising2d_mc(double k, std::size_t length, const McOptions& options);

struct BinderCurve {
    std::size_t length = 0;
    std::vector<double> couplings;
    std::vector<double> binder;
    std::vector<double> binder_err;
};

/// Coupling where two Binder curves on a common grid cross (linear interpolation).
std::optional<double> binder_crossing(const BinderCurve& small, const BinderCurve& large);

struct BinderScan {
    std::vector<BinderCurve> curves;
    std::vector<double> crossings;
    double k_star = 0;
    double p_star = 0;
};

/// Runs the MC grid for each size and averages crossings of consecutive sizes.
/// Chain (size i, coupling j) uses substream options.substream + i * couplings.size() + j,
/// so the result does not depend on `threads`.
BinderScan binder_scan(const std::vector<std::size_t>& lengths, const std::vector<double>& couplings,
                       const McOptions& options, std::size_t threads = 1);

inline constexpr std::size_t kRbimBondBudget = 12;

/// Annealed RBIM on the Nishimori line, both routes.
struct RbimResult {
    double explicit_sum = 0;  // sum over bond signs and spins
    double reduced = 0;       // Ising at tanh beta = tanh^2 beta~
};

/// Explicit route on `lat` (<= 12 bonds, vertex sites); reduced route by enumeration
/// on the same bond multiset, or by closed form / transfer matrix when infinite.
RbimResult rbim_nishimori_annealed_corr(Coupling beta_tilde, const Lattice& lat, std::size_t a, std::size_t b);

struct PlaquetteMcResult {
    double four_point = 0;
    double error = 0;
    std::size_t samples = 0;
};

/// L x L plaquette Ising model, H = -K sum_P s s s s; corner product of the square
/// with side `separation` averaged over translations. On the torus the row and column
/// products of plaquettes are constrained to 1; open boundaries leave them free.
PlaquetteMcResult plaquette_ising_mc(Coupling k, std::size_t length, std::size_t separation, const McOptions& options,
                                     Boundary boundary = Boundary::Periodic);

/// Critical transverse-field Ising <s^z_0 s^z_r> as a Toeplitz determinant.
double tfim_critical_corr(std::size_t r);

/// Least-squares slope of -log y against log x.
double fit_decay_exponent(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sssb
