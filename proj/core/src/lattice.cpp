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

#include <sstream>

#include "sssb/lattice.hpp"

namespace sssb {

namespace {

std::size_t wrap(std::ptrdiff_t v, std::size_t n) {
    const auto m = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(((v % m) + m) % m);
}

}  // namespace

Lattice Lattice::chain(std::size_t length, Boundary boundary, Layout layout) {
    if (length < 2) {
        throw PreconditionError("chain needs at least 2 vertices");
    }
    if (layout == Layout::LinkSystemVertexAncilla || layout == Layout::VertexSystemPlaquetteAncilla) {
        throw PreconditionError("layout requires a square lattice");
    }
    Lattice lat;
    lat.chain_ = true;
    lat.boundary_ = boundary;
    lat.layout_ = layout;
    lat.lx_ = length;
    lat.ly_ = 1;
    return lat;
}

Lattice Lattice::square(std::size_t lx, std::size_t ly, Boundary boundary, Layout layout) {
    if (lx < 2 || ly < 2) {
        throw PreconditionError("square lattice needs Lx, Ly >= 2");
    }
    Lattice lat;
    lat.chain_ = false;
    lat.boundary_ = boundary;
    lat.layout_ = layout;
    lat.lx_ = lx;
    lat.ly_ = ly;
    return lat;
}

Lattice Lattice::with_layout(Layout layout) const {
    return chain_ ? chain(lx_, boundary_, layout) : square(lx_, ly_, boundary_, layout);
}

std::size_t Lattice::n_x_links() const {
    const std::size_t per_row = boundary_ == Boundary::Periodic ? lx_ : lx_ - 1;
    return per_row * ly_;
}

std::size_t Lattice::n_links() const {
    if (chain_) return n_x_links();
    const std::size_t y_rows = boundary_ == Boundary::Periodic ? ly_ : ly_ - 1;
    return n_x_links() + lx_ * y_rows;
}

std::size_t Lattice::n_plaquettes() const {
    if (chain_) return 0;
    return boundary_ == Boundary::Periodic ? lx_ * ly_ : (lx_ - 1) * (ly_ - 1);
}

std::size_t Lattice::vertex(std::size_t x, std::size_t y) const {
    if (x >= lx_ || y >= ly_) {
        throw PreconditionError("vertex coordinates out of range");
    }
    return y * lx_ + x;
}

std::size_t Lattice::x_link(std::size_t x, std::size_t y) const {
    const std::size_t per_row = boundary_ == Boundary::Periodic ? lx_ : lx_ - 1;
    if (x >= per_row || y >= ly_) {
        throw PreconditionError("x-link coordinates out of range");
    }
    return y * per_row + x;
}

std::size_t Lattice::y_link(std::size_t x, std::size_t y) const {
    const std::size_t rows = boundary_ == Boundary::Periodic ? ly_ : ly_ - 1;
    if (chain_ || x >= lx_ || y >= rows) {
        throw PreconditionError("y-link coordinates out of range");
    }
    return n_x_links() + y * lx_ + x;
}

std::pair<std::size_t, std::size_t> Lattice::link_endpoints(std::size_t link) const {
    check_link(link);
    if (is_x_link(link)) {
        const std::size_t per_row = boundary_ == Boundary::Periodic ? lx_ : lx_ - 1;
        const std::size_t x = link % per_row, y = link / per_row;
        return {vertex(x, y), vertex((x + 1) % lx_, y)};
    }
    const std::size_t k = link - n_x_links();
    const std::size_t x = k % lx_, y = k / lx_;
    return {vertex(x, y), vertex(x, (y + 1) % ly_)};
}

std::size_t Lattice::plaquette(std::size_t x, std::size_t y) const {
    const std::size_t px = boundary_ == Boundary::Periodic ? lx_ : lx_ - 1;
    const std::size_t py = boundary_ == Boundary::Periodic ? ly_ : ly_ - 1;
    if (chain_ || x >= px || y >= py) {
        throw PreconditionError("plaquette coordinates out of range");
    }
    return y * px + x;
}

std::vector<Bond> Lattice::enumerate_bonds() const {
    std::vector<Bond> out;
    out.reserve(n_links());
    for (std::size_t l = 0; l < n_links(); ++l) {
        auto [a, b] = link_endpoints(l);
        out.push_back({a, b, l});
    }
    return out;
}

Star Lattice::star_of(std::size_t v) const {
    check_vertex(v);
    const std::size_t x = vertex_x(v), y = vertex_y(v);
    const bool periodic = boundary_ == Boundary::Periodic;
    Star s;
    // right, left, up, down
    if (periodic || x + 1 < lx_) s.links.push_back(x_link(x, y));
    else s.truncated = true;
    if (periodic || x > 0) s.links.push_back(x_link(wrap(static_cast<std::ptrdiff_t>(x) - 1, lx_), y));
    else s.truncated = true;
    if (chain_) return s;
    if (periodic || y + 1 < ly_) s.links.push_back(y_link(x, y));
    else s.truncated = true;
    if (periodic || y > 0) s.links.push_back(y_link(x, wrap(static_cast<std::ptrdiff_t>(y) - 1, ly_)));
    else s.truncated = true;
    return s;
}

std::vector<std::size_t> Lattice::plaquette_links(std::size_t p) const {
    check_plaquette(p);
    const std::size_t px = boundary_ == Boundary::Periodic ? lx_ : lx_ - 1;
    const std::size_t x = p % px, y = p / px;
    return {x_link(x, y), y_link((x + 1) % lx_, y), x_link(x, (y + 1) % ly_), y_link(x, y)};
}

std::vector<std::size_t> Lattice::plaquette_corners(std::size_t p) const {
    check_plaquette(p);
    const std::size_t px = boundary_ == Boundary::Periodic ? lx_ : lx_ - 1;
    const std::size_t x = p % px, y = p / px;
    const std::size_t x1 = (x + 1) % lx_, y1 = (y + 1) % ly_;
    return {vertex(x, y), vertex(x1, y), vertex(x, y1), vertex(x1, y1)};
}

Path Lattice::path_between(std::size_t v0, std::size_t v1) const {
    check_vertex(v0);
    check_vertex(v1);
    const bool periodic = boundary_ == Boundary::Periodic;
    Path path;
    path.vertices.push_back(v0);
    std::size_t x = vertex_x(v0), y = vertex_y(v0);
    const std::size_t tx = vertex_x(v1), ty = vertex_y(v1);

    auto steps = [&](std::size_t from, std::size_t to, std::size_t n) -> std::ptrdiff_t {
        auto d = static_cast<std::ptrdiff_t>(to) - static_cast<std::ptrdiff_t>(from);
        if (periodic) {
            const auto half = static_cast<std::ptrdiff_t>(n) / 2;
            if (d > half) d -= static_cast<std::ptrdiff_t>(n);
            if (d < -half) d += static_cast<std::ptrdiff_t>(n);
        }
        return d;
    };

    for (std::ptrdiff_t d = steps(x, tx, lx_); d != 0; d += d > 0 ? -1 : 1) {
        if (d > 0) {
            path.links.push_back(x_link(x, y));
            x = (x + 1) % lx_;
        } else {
            x = wrap(static_cast<std::ptrdiff_t>(x) - 1, lx_);
            path.links.push_back(x_link(x, y));
        }
        path.vertices.push_back(vertex(x, y));
    }
    for (std::ptrdiff_t d = steps(y, ty, ly_); d != 0; d += d > 0 ? -1 : 1) {
        if (d > 0) {
            path.links.push_back(y_link(x, y));
            y = (y + 1) % ly_;
        } else {
            y = wrap(static_cast<std::ptrdiff_t>(y) - 1, ly_);
            path.links.push_back(y_link(x, y));
        }
        path.vertices.push_back(vertex(x, y));
    }
    return path;
}

bool Lattice::is_valid_path(const Path& path) const {
    if (path.vertices.empty() || path.links.size() + 1 != path.vertices.size()) return false;
    for (std::size_t k = 0; k < path.links.size(); ++k) {
        if (path.links[k] >= n_links() || path.vertices[k] >= n_vertices() || path.vertices[k + 1] >= n_vertices()) {
            return false;
        }
        auto [a, b] = link_endpoints(path.links[k]);
        const std::size_t u = path.vertices[k], w = path.vertices[k + 1];
        if (!((a == u && b == w) || (a == w && b == u))) return false;
    }
    return true;
}

std::size_t Lattice::n_system() const {
    switch (layout_) {
        case Layout::LinkSystem:
        case Layout::LinkSystemVertexAncilla:
            return n_links();
        default:
            return n_vertices();
    }
}

std::size_t Lattice::n_ancilla() const {
    switch (layout_) {
        case Layout::VertexSystemLinkAncilla:
            return n_links();
        case Layout::LinkSystemVertexAncilla:
            return n_vertices();
        case Layout::VertexSystemPlaquetteAncilla:
            return n_plaquettes();
        default:
            return 0;
    }
}

std::size_t Lattice::system_qubit(std::size_t site) const {
    if (site >= n_system()) {
        throw PreconditionError("system site out of range");
    }
    return site;
}

std::size_t Lattice::ancilla_qubit(std::size_t site) const {
    if (site >= n_ancilla()) {
        throw PreconditionError("ancilla site out of range");
    }
    return n_system() + site;
}

std::vector<std::size_t> Lattice::system_qubits() const {
    std::vector<std::size_t> out(n_system());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

std::vector<std::size_t> Lattice::ancilla_qubits() const {
    std::vector<std::size_t> out(n_ancilla());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = n_system() + i;
    return out;
}

std::vector<Role> Lattice::roles() const {
    Role sys = Role::SystemVertex, anc = Role::AncillaLink;
    switch (layout_) {
        case Layout::LinkSystem:
            sys = Role::SystemLink;
            break;
        case Layout::LinkSystemVertexAncilla:
            sys = Role::SystemLink;
            anc = Role::AncillaVertex;
            break;
        case Layout::VertexSystemPlaquetteAncilla:
            anc = Role::AncillaPlaquette;
            break;
        default:
            break;
    }
    std::vector<Role> out(n_system(), sys);
    out.resize(n_qubits(), anc);
    return out;
}

PauliString Lattice::star_operator(std::size_t v) const {
    if (layout_ != Layout::LinkSystem && layout_ != Layout::LinkSystemVertexAncilla) {
        throw PreconditionError("star operator needs system qubits on links");
    }
    return pauli_on(n_qubits(), star_of(v).links, 'X');
}

PauliString Lattice::plaquette_operator(std::size_t p) const {
    if (layout_ != Layout::LinkSystem && layout_ != Layout::LinkSystemVertexAncilla) {
        throw PreconditionError("plaquette operator needs system qubits on links");
    }
    return pauli_on(n_qubits(), plaquette_links(p), 'Z');
}

PauliString Lattice::plaquette_corner_operator(std::size_t p) const {
    if (layout_ == Layout::LinkSystem || layout_ == Layout::LinkSystemVertexAncilla) {
        throw PreconditionError("corner operator needs system qubits on vertices");
    }
    return pauli_on(n_qubits(), plaquette_corners(p), 'Z');
}

std::string Lattice::describe() const {
    std::ostringstream os;
    if (chain_) os << "Chain{L=" << lx_ << "}";
    else os << "Square{" << lx_ << "x" << ly_ << "}";
    os << (boundary_ == Boundary::Periodic ? " periodic" : " open");
    return os.str();
}

void Lattice::check_vertex(std::size_t v) const {
    if (v >= n_vertices()) throw PreconditionError("vertex index out of range");
}

void Lattice::check_link(std::size_t l) const {
    if (l >= n_links()) throw PreconditionError("link index out of range");
}

void Lattice::check_plaquette(std::size_t p) const {
    if (p >= n_plaquettes()) throw PreconditionError("plaquette index out of range");
}

PauliString pauli_on(std::size_t n_qubits, const std::vector<std::size_t>& qubits, char pauli) {
    return PauliString::on(n_qubits, qubits, pauli);
}

}  // namespace sssb
