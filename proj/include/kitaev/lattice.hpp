// Copyright 2026 The kitaev-gsp Authors
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

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "kitaev/pauli.hpp"

namespace kitaev {

struct Bond {
    int i = 0;
    int j = 0;
    Axis axis = Axis::Z;
};

/// Hexagon with its six sites in counterclockwise order. pauli_axes[k] is
/// the axis of the bond leaving the hexagon at sites[k].
struct Plaquette {
    std::array<int, 6> sites{};
    std::array<Axis, 6> pauli_axes{};
};

/// Non-contractible cycle; the loop operator is axis applied at every site.
struct LoopSpec {
    std::vector<int> sites;
    Axis axis = Axis::Z;
};

/// Periodic honeycomb lattice of Lx x Ly unit cells (one hexagon each).
///
/// Cell (cx, cy) holds sublattice sites A = 2(cy*Lx + cx) and B = A + 1.
/// z-bonds join A and B of one cell, x-bonds join B(cx, cy) to A(cx+1, cy),
/// and y-bonds join B(cx, cy) to A(cx, cy+1). Bonds are stored axis-major
/// (all x, then y, then z), each block in cell order.
struct HoneycombTorus {
    int Lx = 0;
    int Ly = 0;
    int N = 0;
    std::vector<Bond> bonds;
    std::vector<Plaquette> plaquettes;
    std::array<LoopSpec, 2> loops;  // [0] along Lx, [1] along Ly

    int num_plaquettes() const noexcept {
        return Lx * Ly;
    }
    int cell_index(int cx, int cy) const;
    int site_a(int cx, int cy) const {
        return 2 * cell_index(cx, cy);
    }
    int site_b(int cx, int cy) const {
        return 2 * cell_index(cx, cy) + 1;
    }
    /// Index into bonds of the z-bond of a cell.
    int z_bond_of_cell(int cx, int cy) const;
    /// Planar coordinates of a site in the unwrapped embedding (unit bond length).
    std::array<double, 2> site_position(int site) const;
};

struct KitaevParams {
    double Jx = -1.0;
    double Jy = -1.0;
    double Jz = -1.0;
    /// Per-site (h^x, h^y, h^z); empty means zero field.
    std::vector<std::array<double, 3>> field;

    static KitaevParams isotropic(double J);
    static KitaevParams uniform_field(int num_sites, double J, std::array<double, 3> h);

    double coupling(Axis a) const;
};

HoneycombTorus build_torus(int Lx, int Ly);

PauliString bond_string(const HoneycombTorus &lat, const Bond &b);
PauliString plaquette_string(const HoneycombTorus &lat, int p_index);
PauliString loop_string(const HoneycombTorus &lat, int which);
/// All n plaquette strings followed by the two loop strings.
std::vector<PauliString> stabilizer_strings(const HoneycombTorus &lat);

/// Bond terms in bond order, then nonzero field terms site by site (x, y, z).
PauliSum build_hamiltonian(const HoneycombTorus &lat, const KitaevParams &params);

/// For each site, the indices of the three plaquettes containing it.
std::vector<std::array<int, 3>> plaquettes_of_sites(const HoneycombTorus &lat);

/// The Pauli axis that site carries inside plaquette p.
Axis plaquette_axis_at(const HoneycombTorus &lat, int p_index, int site);

/// Two z-bonds whose ZZ operators enter the bond-bond correlators.
struct BondPair {
    std::string tag;
    int first = 0;   // bond index
    int second = 0;  // bond index
};

/// "horz": z-bonds of cells (0,0) and (1,Ly-1), which share a hexagon.
/// "diag": z-bonds of cells (0,0) and (1,0), which do not.
std::vector<BondPair> default_bond_pairs(const HoneycombTorus &lat);

nlohmann::json to_json(const HoneycombTorus &lat);

}  // namespace kitaev
