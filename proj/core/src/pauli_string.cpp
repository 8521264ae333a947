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

#include "sssb/qcore.hpp"

namespace sssb {

namespace {

std::uint64_t low_mask(std::size_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

constexpr std::array<cplx, 4> kPowersOfI{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

}  // namespace

PauliString::PauliString(std::size_t n_qubits) : PauliString(n_qubits, 0, 0, 0) {}

PauliString::PauliString(std::size_t n_qubits, std::uint64_t x_mask, std::uint64_t z_mask, int phase)
    : n_(n_qubits), x_(x_mask), z_(z_mask), phase_(((phase % 4) + 4) % 4) {
    if (n_qubits > max_qubits) {
        throw PreconditionError("PauliString supports at most 64 qubits");
    }
    if ((x_mask | z_mask) & ~low_mask(n_qubits)) {
        throw PreconditionError("PauliString mask addresses a qubit outside the register");
    }
}

PauliString PauliString::from_string(std::string_view text) {
    int sign = 0;
    if (text.starts_with("+i") || text.starts_with("i")) {
        sign = 1;
        text.remove_prefix(text.front() == '+' ? 2 : 1);
    } else if (text.starts_with("-i")) {
        sign = 3;
        text.remove_prefix(2);
    } else if (text.starts_with("-")) {
        sign = 2;
        text.remove_prefix(1);
    } else if (text.starts_with("+")) {
        text.remove_prefix(1);
    }
    std::uint64_t x = 0, z = 0;
    int n_y = 0;
    for (std::size_t q = 0; q < text.size(); ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                ++n_y;
                break;
            default:
                throw PreconditionError("unrecognized Pauli character in '" + std::string(text) + "'");
        }
    }
    return PauliString(text.size(), x, z, sign + n_y);
}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit, char pauli) {
    const std::size_t q[1] = {qubit};
    return on(n_qubits, q, pauli);
}

PauliString PauliString::on(std::size_t n_qubits, std::span<const std::size_t> qubits, char pauli) {
    PauliString out(n_qubits);
    for (std::size_t q : qubits) {
        if (q >= n_qubits) {
            throw PreconditionError("Pauli target outside register");
        }
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (pauli) {
            case 'X':
                out *= PauliString(n_qubits, bit, 0, 0);
                break;
            case 'Z':
                out *= PauliString(n_qubits, 0, bit, 0);
                break;
            case 'Y':
                out *= PauliString(n_qubits, bit, bit, 1);
                break;
            case 'I':
                break;
            default:
                throw PreconditionError("unrecognized Pauli character");
        }
    }
    return out;
}

cplx PauliString::phase_factor() const { return kPowersOfI[static_cast<std::size_t>(phase_)]; }

bool PauliString::is_hermitian() const { return (phase_ & 1) == parity(x_ & z_); }

bool PauliString::commutes_with(const PauliString& other) const {
    return parity((x_ & other.z_) ^ (z_ & other.x_)) == 0;
}

std::size_t PauliString::weight() const { return static_cast<std::size_t>(std::popcount(x_ | z_)); }

char PauliString::pauli_at(std::size_t qubit) const {
    const bool x = (x_ >> qubit) & 1, z = (z_ >> qubit) & 1;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

PauliString PauliString::operator*(const PauliString& rhs) const {
    if (n_ != rhs.n_) {
        throw PreconditionError("PauliString product: register size mismatch");
    }
    // Z^{z1} X^{x2} = (-1)^{|z1 & x2|} X^{x2} Z^{z1}
    const int phase = phase_ + rhs.phase_ + 2 * parity(z_ & rhs.x_);
    return PauliString(n_, x_ ^ rhs.x_, z_ ^ rhs.z_, phase);
}

PauliString& PauliString::operator*=(const PauliString& rhs) { return *this = *this * rhs; }

PauliString PauliString::adjoint() const { return PauliString(n_, x_, z_, -phase_ + 2 * parity(x_ & z_)); }

PauliString PauliString::conjugate() const { return PauliString(n_, x_, z_, -phase_); }

PauliString PauliString::with_phase(int phase) const { return PauliString(n_, x_, z_, phase); }

std::pair<cplx, std::uint64_t> PauliString::act_on_basis(std::uint64_t b) const {
    const int k = phase_ + 2 * parity(b & z_);
    return {kPowersOfI[static_cast<std::size_t>(k & 3)], b ^ x_};
}

CMatrix PauliString::to_matrix() const {
    if (n_ > 14) {
        throw PreconditionError("PauliString::to_matrix limited to 14 qubits");
    }
    const std::size_t dim = std::size_t{1} << n_;
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        auto [c, out] = act_on_basis(b);
        m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)) = c;
    }
    return m;
}

std::string PauliString::str() const {
    int n_y = std::popcount(x_ & z_);
    const int sign = ((phase_ - n_y) % 4 + 4) % 4;
    static constexpr const char* kSign[4] = {"+", "+i", "-", "-i"};
    std::string out = kSign[sign];
    for (std::size_t q = 0; q < n_; ++q) {
        out.push_back(pauli_at(q) == 'I' ? '_' : pauli_at(q));
    }
    return out;
}

}  // namespace sssb
