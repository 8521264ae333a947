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

#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "sssb/statmech.hpp"

namespace sssb {

// ---------------------------------------------------------------------------
// Coupling and parameter map

Coupling::Coupling(double value) : value_(value) {
    if (!std::isfinite(value)) {
        throw PreconditionError("use Coupling::infinite() for an infinite coupling");
    }
}

Coupling Coupling::infinite() {
    Coupling c;
    c.infinite_ = true;
    return c;
}

double Coupling::value() const {
    if (infinite_) {
        throw PreconditionError("coupling is infinite");
    }
    return value_;
}

double Coupling::tanh() const { return infinite_ ? 1.0 : std::tanh(value_); }

Coupling Coupling::scaled(double factor) const { return infinite_ ? *this : Coupling(value_ * factor); }

std::string Coupling::str() const {
    if (infinite_) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

ParameterMap param_from_p(double p) {
    if (!(p >= 0.0)) {
        throw PreconditionError("p must be nonnegative");
    }
    if (p > 0.5) {
        throw PreconditionError("p > 1/2: fold with p -> 1 - p first");
    }
    ParameterMap m;
    m.p = p;
    if (p == 0.5) {
        m.theta = 0.0;
        m.beta = Coupling::infinite();
        m.beta_tilde = Coupling::infinite();
        return m;
    }
    m.theta = 0.5 * std::asin(1.0 - 2.0 * p);
    m.beta = Coupling(std::atanh(p / (1.0 - p)));
    m.beta_tilde = Coupling(-0.5 * std::log(std::tan(m.theta)));
    return m;
}

ParameterMap param_from_theta(double theta) {
    if (!(theta >= 0.0 && theta <= M_PI / 4 + 1e-15)) {
        throw PreconditionError("theta must lie in [0, pi/4]");
    }
    if (theta == 0.0) return param_from_p(0.5);
    ParameterMap m;
    m.theta = std::min(theta, M_PI / 4);
    m.p = std::max(0.0, 0.5 * (1.0 - std::sin(2.0 * m.theta)));
    m.beta = Coupling(std::atanh(m.p / (1.0 - m.p)));
    m.beta_tilde = Coupling(std::max(0.0, -0.5 * std::log(std::tan(m.theta))));
    return m;
}

ParameterMap param_from_beta(Coupling beta) {
    if (beta.is_infinite()) return param_from_p(0.5);
    if (beta.value() < 0) {
        throw PreconditionError("beta must be nonnegative");
    }
    const double t = std::tanh(beta.value());
    ParameterMap m;
    m.p = t / (1.0 + t);
    m.theta = 0.5 * std::asin(1.0 - 2.0 * m.p);
    m.beta = beta;
    m.beta_tilde = Coupling(std::atanh(std::sqrt(t)));
    return m;
}

ParameterMap param_from_beta_tilde(Coupling beta_tilde) {
    if (beta_tilde.is_infinite()) return param_from_p(0.5);
    if (beta_tilde.value() < 0) {
        throw PreconditionError("beta~ must be nonnegative");
    }
    const double tt = std::tanh(beta_tilde.value());
    const double t = tt * tt;
    ParameterMap m;
    m.theta = std::atan(std::exp(-2.0 * beta_tilde.value()));
    m.p = t / (1.0 + t);
    m.beta = Coupling(std::atanh(t));
    m.beta_tilde = beta_tilde;
    return m;
}

ParameterMap param_map(ParamSource from, double value) {
    switch (from) {
        case ParamSource::P:
            return param_from_p(value);
        case ParamSource::Theta:
            return param_from_theta(value);
        case ParamSource::Beta:
            return param_from_beta(std::isinf(value) ? Coupling::infinite() : Coupling(value));
        case ParamSource::BetaTilde:
            return param_from_beta_tilde(std::isinf(value) ? Coupling::infinite() : Coupling(value));
    }
    throw PreconditionError("unknown parameter source");
}

double critical_error_rate() { return 0.5 * (1.0 - std::sqrt(std::sqrt(2.0) - 1.0)); }

double critical_coupling_2d() { return 0.5 * std::log(1.0 + std::sqrt(2.0)); }

double error_rate_from_renyi2_coupling(double k) {
    const double t = std::tanh(k / 2.0);
    return t / (1.0 + t);
}

// ---------------------------------------------------------------------------
// Exact Ising correlators

double ising1d_corr(Coupling k, std::size_t r, std::size_t length, Boundary boundary) {
    if (r >= length) {
        throw PreconditionError("ising1d_corr: r must be smaller than L");
    }
    if (k.is_infinite()) return 1.0;
    const double t = k.tanh();
    if (boundary == Boundary::Open) return std::pow(t, static_cast<double>(r));
    const double tl = std::pow(t, static_cast<double>(length));
    return (std::pow(t, static_cast<double>(r)) + std::pow(t, static_cast<double>(length - r))) / (1.0 + tl);
}

double ising2d_tm_corr(Coupling k, std::size_t lx, std::size_t ly, std::size_t dx, std::size_t dy) {
    if (lx > kTransferWidthBudget) {
        throw PreconditionError("ising2d_tm_corr: width above 12");
    }
    if (lx < 2 || ly < 1 || dx >= lx || dy >= ly) {
        throw PreconditionError("ising2d_tm_corr: displacement outside the torus");
    }
    if (k.is_infinite()) return 1.0;
    const double kv = k.value();
    const std::size_t dim = std::size_t{1} << lx;
    auto spin = [](std::size_t s, std::size_t x) { return ((s >> x) & 1) ? -1.0 : 1.0; };

    Eigen::VectorXd half_row(static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < dim; ++s) {
        double e = 0;
        for (std::size_t x = 0; x < lx; ++x) e += spin(s, x) * spin(s, (x + 1) % lx) - 1.0;
        half_row[static_cast<Eigen::Index>(s)] = std::exp(0.5 * kv * e);
    }
    const double w_flip = std::exp(-2.0 * kv);
    Eigen::MatrixXd t(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        for (std::size_t u = 0; u < dim; ++u) {
            const int diff = std::popcount(s ^ u);
            t(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(u)) =
                std::pow(w_flip, diff) * half_row[static_cast<Eigen::Index>(s)] * half_row[static_cast<Eigen::Index>(u)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd lam = es.eigenvalues() / es.eigenvalues().cwiseAbs().maxCoeff();
    const Eigen::MatrixXd& q = es.eigenvectors();

    Eigen::VectorXd s0(dim), sr(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        s0[static_cast<Eigen::Index>(s)] = spin(s, 0);
        sr[static_cast<Eigen::Index>(s)] = spin(s, dx);
    }
    const Eigen::MatrixXd a = q.transpose() * s0.asDiagonal() * q;
    const Eigen::MatrixXd b = q.transpose() * sr.asDiagonal() * q;
    const auto pw = [](double l, std::size_t e) { return e == 0 ? 1.0 : std::pow(l, static_cast<double>(e)); };
    double num = 0, den = 0;
    for (Eigen::Index n = 0; n < lam.size(); ++n) {
        const double ln = pw(lam[n], ly - dy);
        den += pw(lam[n], ly);
        for (Eigen::Index m = 0; m < lam.size(); ++m) num += a(n, m) * pw(lam[m], dy) * b(m, n) * ln;
    }
    return num / den;
}

IsingInstance IsingInstance::from_lattice(const Lattice& lat, double coupling) {
    IsingInstance inst;
    inst.n_sites = lat.n_vertices();
    inst.coupling = coupling;
    for (const Bond& b : lat.enumerate_bonds()) inst.bonds.emplace_back(b.a, b.b);
    return inst;
}

double ising_enumerate_corr(const IsingInstance& inst, std::size_t a, std::size_t b) {
    if (inst.n_sites > 24) {
        throw PreconditionError("ising_enumerate_corr: more than 24 sites");
    }
    if (!inst.signs.empty() && inst.signs.size() != inst.bonds.size()) {
        throw PreconditionError("bond-sign array does not match bond count");
    }
    if (a >= inst.n_sites || b >= inst.n_sites) {
        throw PreconditionError("site index out of range");
    }
    const auto nb = static_cast<double>(inst.bonds.size());
    double num = 0, den = 0;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << inst.n_sites); ++c) {
        double e = 0;
        for (std::size_t k = 0; k < inst.bonds.size(); ++k) {
            const auto [i, j] = inst.bonds[k];
            const double ss = (((c >> i) ^ (c >> j)) & 1) ? -1.0 : 1.0;
            e += (inst.signs.empty() ? 1 : inst.signs[k]) * ss;
        }
        const double w = std::exp(inst.coupling * (e - nb));
        const double sab = (((c >> a) ^ (c >> b)) & 1) ? -1.0 : 1.0;
        num += sab * w;
        den += w;
    }
    return num / den;
}

// ---------------------------------------------------------------------------
// RBIM on the Nishimori line

RbimResult rbim_nishimori_annealed_corr(Coupling beta_tilde, const Lattice& lat, std::size_t a, std::size_t b) {
    const std::vector<Bond> bonds = lat.enumerate_bonds();
    if (bonds.size() > kRbimBondBudget) {
        throw PreconditionError("rbim explicit sum: more than 12 bonds");
    }
    if (a >= lat.n_vertices() || b >= lat.n_vertices()) {
        throw PreconditionError("site index out of range");
    }
    if (beta_tilde.is_infinite()) return {1.0, 1.0};
    const double bt = beta_tilde.value();
    const std::size_t nv = lat.n_vertices();
    const auto nb = static_cast<double>(bonds.size());
    double num = 0, den = 0;
    for (std::uint64_t sc = 0; sc < (std::uint64_t{1} << bonds.size()); ++sc) {
        double sum_s = 0;
        for (std::size_t k = 0; k < bonds.size(); ++k) sum_s += ((sc >> k) & 1) ? -1.0 : 1.0;
        for (std::uint64_t tc = 0; tc < (std::uint64_t{1} << nv); ++tc) {
            double e = sum_s;
            for (std::size_t k = 0; k < bonds.size(); ++k) {
                const double s = ((sc >> k) & 1) ? -1.0 : 1.0;
                const double tt = (((tc >> bonds[k].a) ^ (tc >> bonds[k].b)) & 1) ? -1.0 : 1.0;
                e += s * tt;
            }
            const double w = std::exp(bt * (e - 2.0 * nb));
            const double tab = (((tc >> a) ^ (tc >> b)) & 1) ? -1.0 : 1.0;
            num += tab * w;
            den += w;
        }
    }
    RbimResult res;
    res.explicit_sum = num / den;
    const double tt = std::tanh(bt);
    IsingInstance inst = IsingInstance::from_lattice(lat, std::atanh(tt * tt));
    res.reduced = ising_enumerate_corr(inst, a, b);
    return res;
}

// ---------------------------------------------------------------------------
// Exact critical chain

double tfim_critical_corr(std::size_t r) {
    if (r > 64) {
        throw PreconditionError("tfim_critical_corr: r above 64");
    }
    if (r == 0) return 1.0;
    const auto n = static_cast<Eigen::Index>(r);
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = 2.0 / (M_PI * (2.0 * static_cast<double>(j - i) + 1.0));
    }
    return m.partialPivLu().determinant();
}

double fit_decay_exponent(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw PreconditionError("fit_decay_exponent: need two or more matching points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) {
            throw PreconditionError("fit_decay_exponent: log of a nonpositive value");
        }
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sssb
