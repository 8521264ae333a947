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

#include <algorithm>
#include <array>
#include <cmath>

#include "sssb/groups.hpp"

namespace sssb {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::size_t dense_dim(std::size_t d, std::size_t length) {
    std::size_t dim = 1;
    for (std::size_t i = 0; i < length; ++i) {
        dim *= d;
        if (dim > kGroupDenseBudget) {
            throw PreconditionError("d^L exceeds the dense budget of 4096");
        }
    }
    return dim;
}

void check_length(const LocalRep& rep, std::size_t length) {
    const std::size_t h = scalar_subgroup(rep).elements.size();
    if (length == 0 || length % h != 0) {
        throw PreconditionError("L must be a positive multiple of |H| = " + std::to_string(h));
    }
    dense_dim(rep.d, length);
}

cplx omega(std::size_t n, std::size_t k) {
    return std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n));
}

cplx int_power(cplx z, std::size_t e) {
    cplx out = 1;
    for (std::size_t i = 0; i < e; ++i) out *= z;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> table)
    : name_(std::move(name)), table_(std::move(table)) {
    const std::size_t n = table_.size();
    for (const auto& row : table_) {
        if (row.size() != n) throw PreconditionError("multiplication table must be square");
        for (std::size_t v : row)
            if (v >= n) throw PreconditionError("multiplication table entry out of range");
    }
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
        if (ok) {
            identity_ = e;
            found = true;
        }
    }
    if (!found) throw PreconditionError("multiplication table has no identity");
    inverse_.assign(n, n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            if (table_[g][h] == identity_) inverse_[g] = h;
    for (std::size_t g = 0; g < n; ++g)
        if (inverse_[g] == n) throw PreconditionError("multiplication table element without inverse");
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0) throw PreconditionError("cyclic group order must be positive");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) t[g][h] = (g + h) % n;
    return FiniteGroup("Z" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::symmetric3() {
    std::vector<std::array<std::size_t, 3>> perms;
    std::array<std::size_t, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
    for (std::size_t g = 0; g < 6; ++g) {
        for (std::size_t h = 0; h < 6; ++h) {
            std::array<std::size_t, 3> c{};
            for (std::size_t i = 0; i < 3; ++i) c[i] = perms[g][perms[h][i]];
            t[g][h] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    }
    return FiniteGroup("S3", std::move(t));
}

FiniteGroup FiniteGroup::dihedral4() {
    // element r^k s^m has index k + 4 m; (r^a s^b)(r^c s^d) = r^{a + (-1)^b c} s^{b + d}.
    std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
    for (std::size_t g = 0; g < 8; ++g) {
        for (std::size_t h = 0; h < 8; ++h) {
            const std::size_t a = g % 4, b = g / 4, c = h % 4, d = h / 4;
            const std::size_t k = (a + (b ? 4 - c : c)) % 4;
            t[g][h] = k + 4 * ((b + d) % 2);
        }
    }
    return FiniteGroup("D4", std::move(t));
}

bool FiniteGroup::satisfies_group_laws() const {
    const std::size_t n = order();
    for (std::size_t g = 0; g < n; ++g) {
        if (table_[g][identity_] != g || table_[identity_][g] != g) return false;
        if (table_[g][inverse_[g]] != identity_ || table_[inverse_[g]][g] != identity_) return false;
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t k = 0; k < n; ++k)
                if (table_[table_[g][h]][k] != table_[g][table_[h][k]]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Representations

double LocalRep::homomorphism_error() const {
    double worst = 0;
    for (std::size_t g = 0; g < group.order(); ++g)
        for (std::size_t h = 0; h < group.order(); ++h)
            worst = std::max(worst, (u[g] * u[h] - u[group.multiply(g, h)]).cwiseAbs().maxCoeff());
    const auto dd = static_cast<Eigen::Index>(d);
    worst = std::max(worst, (u[group.identity()] - CMatrix::Identity(dd, dd)).cwiseAbs().maxCoeff());
    return worst;
}

CMatrix LocalRep::global(std::size_t g, std::size_t length) const {
    dense_dim(d, length);
    CMatrix out = CMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < length; ++i) out = kron(out, u[g]);
    return out;
}

LocalRep z2_flip_rep() {
    CMatrix x(2, 2);
    x << 0, 1, 1, 0;
    return {FiniteGroup::cyclic(2), 2, {CMatrix::Identity(2, 2), x}, "z2"};
}

LocalRep zn_clock_rep(std::size_t n) {
    const auto nn = static_cast<Eigen::Index>(n);
    std::vector<CMatrix> u;
    for (std::size_t g = 0; g < n; ++g) {
        CMatrix m = CMatrix::Zero(nn, nn);
        for (std::size_t k = 0; k < n; ++k) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = omega(n, g * k % n);
        u.push_back(m);
    }
    return {FiniteGroup::cyclic(n), n, std::move(u), "z" + std::to_string(n)};
}

LocalRep zn_scalar_rep(std::size_t n, std::size_t d) {
    const auto dd = static_cast<Eigen::Index>(d);
    std::vector<CMatrix> u;
    for (std::size_t g = 0; g < n; ++g) u.push_back(omega(n, g) * CMatrix::Identity(dd, dd));
    return {FiniteGroup::cyclic(n), d, std::move(u), "z" + std::to_string(n) + "-scalar"};
}

LocalRep s3_permutation_rep() {
    std::vector<std::array<std::size_t, 3>> perms;
    std::array<std::size_t, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<CMatrix> u;
    for (const auto& perm : perms) {
        CMatrix m = CMatrix::Zero(3, 3);
        for (std::size_t i = 0; i < 3; ++i) m(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(i)) = 1;
        u.push_back(m);
    }
    return {FiniteGroup::symmetric3(), 3, std::move(u), "s3"};
}

LocalRep d4_two_dim_rep() {
    CMatrix r(2, 2), s(2, 2);
    r << 0, -1, 1, 0;
    s << 1, 0, 0, -1;
    std::vector<CMatrix> u;
    for (std::size_t g = 0; g < 8; ++g) {
        CMatrix m = CMatrix::Identity(2, 2);
        for (std::size_t k = 0; k < g % 4; ++k) m = m * r;
        if (g / 4) m = m * s;
        u.push_back(m);
    }
    return {FiniteGroup::dihedral4(), 2, std::move(u), "d4"};
}

LocalRep rep_by_name(const std::string& name) {
    if (name == "z2") return z2_flip_rep();
    if (name == "z3") return zn_clock_rep(3);
    if (name == "z4") return zn_clock_rep(4);
    if (name == "z4-scalar") return zn_scalar_rep(4, 2);
    if (name == "s3") return s3_permutation_rep();
    if (name == "d4") return d4_two_dim_rep();
    throw PreconditionError("unknown group representation '" + name + "'");
}

ScalarSubgroup scalar_subgroup(const LocalRep& rep) {
    ScalarSubgroup out;
    const auto dd = static_cast<Eigen::Index>(rep.d);
    for (std::size_t g = 0; g < rep.group.order(); ++g) {
        const cplx c = rep.u[g](0, 0);
        if ((rep.u[g] - c * CMatrix::Identity(dd, dd)).cwiseAbs().maxCoeff() <= tol::identity) out.elements.push_back(g);
    }
    std::vector<bool> covered(rep.group.order(), false);
    for (std::size_t g = 0; g < rep.group.order(); ++g) {
        if (covered[g]) continue;
        out.coset_reps.push_back(g);
        for (std::size_t h : out.elements) covered[rep.group.multiply(g, h)] = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// SSSB state

CMatrix identity_projector(const LocalRep& rep, std::size_t length) {
    check_length(rep, length);
    const auto dim = static_cast<Eigen::Index>(dense_dim(rep.d, length));
    CMatrix p0 = CMatrix::Zero(dim, dim);
    for (std::size_t g = 0; g < rep.group.order(); ++g) p0 += rep.global(g, length);
    return p0 / static_cast<double>(rep.group.order());
}

std::size_t identity_sector_count(const LocalRep& rep, std::size_t length) {
    check_length(rep, length);
    cplx sum = 0;
    for (std::size_t g = 0; g < rep.group.order(); ++g) sum += int_power(rep.u[g].trace(), length);
    sum /= static_cast<double>(rep.group.order());
    const double rounded = std::round(sum.real());
    if (std::abs(sum - cplx(rounded, 0)) > 1e-8) {
        throw std::runtime_error("character sum is not an integer");
    }
    return static_cast<std::size_t>(rounded);
}

CMatrix build_sssb_state(const LocalRep& rep, std::size_t length) {
    const std::size_t n_i = identity_sector_count(rep, length);
    if (n_i == 0) throw std::runtime_error("identity sector is empty");
    return identity_projector(rep, length) / static_cast<double>(n_i);
}

std::size_t dense_projector_rank(const LocalRep& rep, std::size_t length) {
    const CMatrix p0 = identity_projector(rep, length);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p0 + p0.adjoint()), Eigen::EigenvaluesOnly);
    return static_cast<std::size_t>((es.eigenvalues().array() > 0.5).count());
}

std::vector<PurityRow> purity_asymptote_report(const LocalRep& rep, const std::vector<std::size_t>& lengths) {
    const std::size_t q = scalar_subgroup(rep).quotient_order();
    std::vector<PurityRow> rows;
    for (std::size_t L : lengths) {
        const CMatrix rho = build_sssb_state(rep, L);
        PurityRow row;
        row.length = L;
        row.sectors = identity_sector_count(rep, L);
        row.purity = (rho * rho).trace().real();
        row.ratio = row.purity * static_cast<double>(rho.rows()) / static_cast<double>(q);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Multiplets

cplx OrderParamMultiplet::trivial_content() const {
    cplx s = 0;
    for (const CMatrix& mg : m) s += mg.trace();
    return s / static_cast<double>(m.size());
}

double OrderParamMultiplet::irreducibility() const {
    double s = 0;
    for (const CMatrix& mg : m) s += std::norm(mg.trace());
    return s / static_cast<double>(m.size());
}

double OrderParamMultiplet::orthogonality_residual() const {
    CMatrix s = CMatrix::Zero(m.front().rows(), m.front().cols());
    for (const CMatrix& mg : m) s += mg;
    return s.cwiseAbs().maxCoeff();
}

OrderParamMultiplet make_multiplet(const LocalRep& rep, std::vector<CMatrix> ops) {
    if (ops.empty()) throw PreconditionError("multiplet needs at least one operator");
    const auto dd = static_cast<Eigen::Index>(rep.d);
    const auto k = static_cast<Eigen::Index>(ops.size());
    CMatrix basis(dd * dd, k);
    for (Eigen::Index b = 0; b < k; ++b) {
        const CMatrix& o = ops[static_cast<std::size_t>(b)];
        if (o.rows() != dd || o.cols() != dd) throw PreconditionError("multiplet operator has the wrong dimension");
        basis.col(b) = o.reshaped();
    }
    const auto qr = basis.colPivHouseholderQr();
    if (qr.rank() != k) throw PreconditionError("multiplet operators are linearly dependent");

    OrderParamMultiplet out;
    out.ops = std::move(ops);
    for (std::size_t g = 0; g < rep.group.order(); ++g) {
        CMatrix mg(k, k);
        for (Eigen::Index a = 0; a < k; ++a) {
            const CMatrix image = rep.u[g].adjoint() * out.ops[static_cast<std::size_t>(a)] * rep.u[g];
            const CVector target = image.reshaped();
            const CVector coeff = qr.solve(target);
            out.residual = std::max(out.residual, (basis * coeff - target).cwiseAbs().maxCoeff());
            mg.row(a) = coeff.transpose();
        }
        out.m.push_back(mg);
    }
    if (out.residual > tol::identity) {
        throw PreconditionError("operators do not close under the group action");
    }
    return out;
}

OrderParamMultiplet default_multiplet(const LocalRep& rep) {
    const auto dd = static_cast<Eigen::Index>(rep.d);
    if (rep.name == "z2") {
        CMatrix z(2, 2);
        z << 1, 0, 0, -1;
        return make_multiplet(rep, {z});
    }
    if (rep.name == "s3") {
        CMatrix o1 = CMatrix::Zero(3, 3), o2 = CMatrix::Zero(3, 3);
        o1.row(0).setOnes();
        o1.row(1).setConstant(-1);
        o2.row(1).setOnes();
        o2.row(2).setConstant(-1);
        return make_multiplet(rep, {o1, o2});
    }
    if (rep.name == "d4") {
        CMatrix x(2, 2);
        x << 0, 1, 1, 0;
        return make_multiplet(rep, {x});
    }
    if (rep.name.rfind("z", 0) == 0 && rep.name.find("scalar") == std::string::npos) {
        CMatrix shift = CMatrix::Zero(dd, dd);
        for (Eigen::Index i = 0; i < dd; ++i) shift((i + 1) % dd, i) = 1;
        return make_multiplet(rep, {shift});
    }
    throw PreconditionError("no default multiplet for representation '" + rep.name + "'");
}

CMatrix embed_site(const CMatrix& op, std::size_t site, std::size_t d, std::size_t length) {
    if (site >= length) throw PreconditionError("site out of range");
    dense_dim(d, length);
    const auto dd = static_cast<Eigen::Index>(d);
    CMatrix out = CMatrix::Identity(1, 1);
    for (std::size_t i = length; i-- > 0;) out = kron(out, i == site ? op : CMatrix::Identity(dd, dd));
    return out;
}

MultipletCorrelators multiplet_correlators(const LocalRep& rep, const OrderParamMultiplet& mult, std::size_t length,
                                           std::size_t site1, std::size_t site2, std::size_t alpha, std::size_t beta) {
    if (site1 == site2) throw PreconditionError("regions must be disjoint");
    const CMatrix rho = build_sssb_state(rep, length);
    const CMatrix a = embed_site(mult.ops.at(alpha).adjoint(), site1, rep.d, length) *
                      embed_site(mult.ops.at(beta), site2, rep.d, length);
    MultipletCorrelators out;
    out.conventional = (rho * a).trace();
    const CMatrix ra = rho * a;
    const double pur = (rho * rho).trace().real();
    out.renyi2 = (ra * rho * a.adjoint()).trace().real() / pur;
    return out;
}

double multiplet_renyi2_trace_formula(const LocalRep& rep, const OrderParamMultiplet& mult, std::size_t length,
                                      std::size_t alpha, std::size_t beta) {
    if (length < 2) throw PreconditionError("need at least two sites");
    check_length(rep, length);
    const CMatrix& oa = mult.ops.at(alpha);
    const CMatrix& ob = mult.ops.at(beta);
    const CMatrix oa_bar = oa.adjoint(), ob_bar = ob.adjoint();
    const std::size_t n = rep.group.order();
    cplx sum = 0;
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
            const cplx site1 = (rep.u[g] * oa_bar * rep.u[h] * oa).trace();
            const cplx site2 = (rep.u[g] * ob * rep.u[h] * ob_bar).trace();
            const cplx rest = int_power((rep.u[g] * rep.u[h]).trace(), length - 2);
            sum += site1 * site2 * rest;
        }
    }
    // Tr(rho A rho A^dag) / Tr rho^2 with rho = P0/N_I and Tr rho^2 = 1/N_I.
    const auto n_i = static_cast<double>(identity_sector_count(rep, length));
    return sum.real() / (static_cast<double>(n * n) * n_i);
}

double multiplet_single_renyi2(const LocalRep& rep, const OrderParamMultiplet& mult, std::size_t length,
                               std::size_t site, std::size_t alpha) {
    const CMatrix rho = build_sssb_state(rep, length);
    const CMatrix o = embed_site(mult.ops.at(alpha), site, rep.d, length);
    const double pur = (rho * rho).trace().real();
    return (rho * o * rho * o.adjoint()).trace().real() / pur;
}

}  // namespace sssb
