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

#include <complex>
#include <string>
#include <vector>

#include "sssb/qcore.hpp"

namespace sssb {

class FiniteGroup {
  public:
    /// table[g][h] = index of g*h.
    FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> table);

    static FiniteGroup cyclic(std::size_t n);
    static FiniteGroup symmetric3();
    static FiniteGroup dihedral4();

    const std::string& name() const { return name_; }
    std::size_t order() const { return table_.size(); }
    std::size_t identity() const { return identity_; }
    std::size_t multiply(std::size_t g, std::size_t h) const { return table_[g][h]; }
    std::size_t inverse(std::size_t g) const { return inverse_[g]; }
    /// Associativity, identity and inverse laws on the full table.
    bool satisfies_group_laws() const;

  private:
    std::string name_;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::size_t identity_ = 0;
};

struct LocalRep {
    FiniteGroup group;
    std::size_t d = 0;
    std::vector<CMatrix> u;
    std::string name;

    /// max over (g, h) of |u_g u_h - u_{gh}|.
    double homomorphism_error() const;
    /// u_g^{(x) L}; site 0 is the least-significant digit.
    CMatrix global(std::size_t g, std::size_t length) const;
};

/// Z_2 acting by X on a qubit.
LocalRep z2_flip_rep();
/// Z_n with u = diag(1, w, ..., w^{n-1}), w = exp(2 pi i / n).
LocalRep zn_clock_rep(std::size_t n);
/// Z_n with u_g = w^g I_d.
LocalRep zn_scalar_rep(std::size_t n, std::size_t d);
/// S_3 by 3x3 permutation matrices.
LocalRep s3_permutation_rep();
/// D_4 by its two-dimensional rotation/reflection representation.
LocalRep d4_two_dim_rep();
/// Names: z2, z3, z4, z4-scalar, s3, d4.
LocalRep rep_by_name(const std::string& name);

struct ScalarSubgroup {
    std::vector<std::size_t> elements;     // H
    std::vector<std::size_t> coset_reps;   // one per element of G~ = G/H
    std::size_t quotient_order() const { return coset_reps.size(); }
};

ScalarSubgroup scalar_subgroup(const LocalRep& rep);

inline constexpr std::size_t kGroupDenseBudget = 4096;

/// P0 = (1/|G|) sum_g U_g.
CMatrix identity_projector(const LocalRep& rep, std::size_t length);
/// rho_S = P0 / N_I as a d^L x d^L matrix.
CMatrix build_sssb_state(const LocalRep& rep, std::size_t length);
/// (1/|G|) sum_g (tr u_g)^L.
std::size_t identity_sector_count(const LocalRep& rep, std::size_t length);
/// Number of eigenvalues of P0 above 1/2.
std::size_t dense_projector_rank(const LocalRep& rep, std::size_t length);

struct PurityRow {
    std::size_t length = 0;
    std::size_t sectors = 0;
    double purity = 0;
    double ratio = 0;  // Tr rho^2 d^L / |G~|
};

std::vector<PurityRow> purity_asymptote_report(const LocalRep& rep, const std::vector<std::size_t>& lengths);

/// Single-site operators O^alpha with u_g^dagger O^alpha u_g = sum_beta M_{alpha beta}(g) O^beta.
struct OrderParamMultiplet {
    std::vector<CMatrix> ops;
    std::vector<CMatrix> m;  // one k x k matrix per group element
    double residual = 0;

    /// (1/|G|) sum_g tr M(g); zero when M has no identity component.
    cplx trivial_content() const;
    /// (1/|G|) sum_g |tr M(g)|^2; one when M is irreducible.
    double irreducibility() const;
    /// max entry of |sum_g M(g)|.
    double orthogonality_residual() const;
};

OrderParamMultiplet make_multiplet(const LocalRep& rep, std::vector<CMatrix> ops);
/// Charged multiplet for the catalog reps (z2: Z; zn clock: shift; s3: a 1^T with sum a = 0; d4: X).
OrderParamMultiplet default_multiplet(const LocalRep& rep);

struct MultipletCorrelators {
    cplx conventional;  // Tr(rho_S Obar^alpha(s1) O^beta(s2))
    double renyi2 = 0;  // Tr(rho_S A rho_S A^dagger)/Tr rho_S^2, A = Obar^alpha(s1) O^beta(s2)
};

MultipletCorrelators multiplet_correlators(const LocalRep& rep, const OrderParamMultiplet& mult, std::size_t length,
                                           std::size_t site1, std::size_t site2, std::size_t alpha = 0,
                                           std::size_t beta = 0);
/// Renyi-2 from Tr(U_g A U_g' B) = tr_Omega(u_g A u_g' B) (tr u_g u_g')^{L - |Omega|}.
double multiplet_renyi2_trace_formula(const LocalRep& rep, const OrderParamMultiplet& mult, std::size_t length,
                                      std::size_t alpha = 0, std::size_t beta = 0);
/// Single charged operator O^alpha at `site`: Tr(rho O rho O^dagger)/Tr rho^2.
double multiplet_single_renyi2(const LocalRep& rep, const OrderParamMultiplet& mult, std::size_t length,
                               std::size_t site, std::size_t alpha = 0);

/// Kronecker embedding of a d x d operator on `site` of L sites.
CMatrix embed_site(const CMatrix& op, std::size_t site, std::size_t d, std::size_t length);

}  // namespace sssb
