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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sssb/qcore.hpp"

namespace sssb {

enum class Boundary { Open, Periodic };

enum class Role { SystemVertex, SystemLink, AncillaLink, AncillaVertex, AncillaPlaquette };

/// Which sites carry system qubits and which carry ancillae. System qubits
/// always occupy the low register indices, ancillae follow.
enum class Layout {
    VertexSystem,               // system on vertices, no ancilla
    LinkSystem,                 // system on links, no ancilla (toric code)
    VertexSystemLinkAncilla,    // cluster / link-gate SPT
    LinkSystemVertexAncilla,    // 1-form SPT
    VertexSystemPlaquetteAncilla,  // subsystem SPT
};

struct Bond {
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t link = 0;
};

struct Star {
    std::vector<std::size_t> links;
    /// Set when an open boundary truncated the star.
    bool truncated = false;
};

/// Sequence of vertices joined by links; links[k] connects vertices[k] and vertices[k+1].
struct Path {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> links;

    std::size_t front() const { return vertices.front(); }
    std::size_t back() const { return vertices.back(); }
};

class Lattice {
  public:
    static Lattice chain(std::size_t length, Boundary boundary = Boundary::Open, Layout layout = Layout::VertexSystem);
    static Lattice square(std::size_t lx, std::size_t ly, Boundary boundary = Boundary::Periodic,
                          Layout layout = Layout::VertexSystem);

    Lattice with_layout(Layout layout) const;

    bool is_chain() const { return chain_; }
    Boundary boundary() const { return boundary_; }
    Layout layout() const { return layout_; }
    std::size_t lx() const { return lx_; }
    std::size_t ly() const { return ly_; }

    std::size_t n_vertices() const { return lx_ * ly_; }
    std::size_t n_x_links() const;
    std::size_t n_links() const;
    std::size_t n_plaquettes() const;

    std::size_t vertex(std::size_t x, std::size_t y = 0) const;
    std::size_t vertex_x(std::size_t v) const { return v % lx_; }
    std::size_t vertex_y(std::size_t v) const { return v / lx_; }
    /// Link from (x, y) to (x+1, y).
    std::size_t x_link(std::size_t x, std::size_t y = 0) const;
    /// Link from (x, y) to (x, y+1).
    std::size_t y_link(std::size_t x, std::size_t y) const;
    bool is_x_link(std::size_t link) const { return link < n_x_links(); }
    std::pair<std::size_t, std::size_t> link_endpoints(std::size_t link) const;
    std::size_t plaquette(std::size_t x, std::size_t y) const;

    /// Row-major, every x-link before every y-link.
    std::vector<Bond> enumerate_bonds() const;
    Star star_of(std::size_t v) const;
    /// Boundary links of the plaquette with lower-left corner (x, y): bottom, right, top, left.
    std::vector<std::size_t> plaquette_links(std::size_t p) const;
    /// Corner vertices: (x,y), (x+1,y), (x,y+1), (x+1,y+1).
    std::vector<std::size_t> plaquette_corners(std::size_t p) const;

    /// Straight path: first along x, then along y, taking the shorter way round on periodic axes.
    Path path_between(std::size_t v0, std::size_t v1) const;
    bool is_valid_path(const Path& path) const;

    // Register layout.
    std::size_t n_system() const;
    std::size_t n_ancilla() const;
    std::size_t n_qubits() const { return n_system() + n_ancilla(); }
    /// Register index of system site `site` (vertex or link, per layout).
    std::size_t system_qubit(std::size_t site) const;
    /// Register index of ancilla site `site` (link, vertex or plaquette, per layout).
    std::size_t ancilla_qubit(std::size_t site) const;
    std::vector<std::size_t> system_qubits() const;
    std::vector<std::size_t> ancilla_qubits() const;
    std::vector<Role> roles() const;

    /// Star operator prod_{l in star(v)} X_l on the system-link register.
    PauliString star_operator(std::size_t v) const;
    /// Plaquette operator prod_{l in boundary(p)} Z_l on the system-link register.
    PauliString plaquette_operator(std::size_t p) const;
    /// Corner operator prod_{v in corners(p)} Z_v on the system-vertex register.
    PauliString plaquette_corner_operator(std::size_t p) const;

    std::string describe() const;

  private:
    Lattice() = default;
    void check_vertex(std::size_t v) const;
    void check_link(std::size_t l) const;
    void check_plaquette(std::size_t p) const;

    bool chain_ = true;
    Boundary boundary_ = Boundary::Open;
    Layout layout_ = Layout::VertexSystem;
    std::size_t lx_ = 0;
    std::size_t ly_ = 1;
};

/// Pauli `pauli` on the given register qubits.
PauliString pauli_on(std::size_t n_qubits, const std::vector<std::size_t>& qubits, char pauli);

}  // namespace sssb
