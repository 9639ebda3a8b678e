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

#include "kitaev/lattice.hpp"

#include <cmath>
#include <string>

#include "kitaev/error.hpp"

namespace kitaev {

namespace {

int wrap(int v, int L) {
    return ((v % L) + L) % L;
}

}  // namespace

int HoneycombTorus::cell_index(int cx, int cy) const {
    return wrap(cy, Ly) * Lx + wrap(cx, Lx);
}

int HoneycombTorus::z_bond_of_cell(int cx, int cy) const {
    return 2 * Lx * Ly + cell_index(cx, cy);
}

std::array<double, 2> HoneycombTorus::site_position(int site) const {
    const double r3 = std::sqrt(3.0);
    int cell = site / 2;
    int cx = cell % Lx;
    int cy = cell / Lx;
    double x = cx * r3 / 2 - cy * r3 / 2;
    double y = cx * 1.5 + cy * 1.5;
    if (site % 2 == 1) {
        y += 1.0;
    }
    return {x, y};
}

KitaevParams KitaevParams::isotropic(double J) {
    KitaevParams p;
    p.Jx = p.Jy = p.Jz = J;
    return p;
}

KitaevParams KitaevParams::uniform_field(int num_sites, double J, std::array<double, 3> h) {
    KitaevParams p = isotropic(J);
    p.field.assign(num_sites, h);
    return p;
}

double KitaevParams::coupling(Axis a) const {
    switch (a) {
        case Axis::X: return Jx;
        case Axis::Y: return Jy;
        case Axis::Z: return Jz;
    }
    return 0.0;
}

HoneycombTorus build_torus(int Lx, int Ly) {
    if (Lx < 2 || Ly < 2) {
        throw Error(ErrorCode::DimensionTooSmall,
                    "torus " + std::to_string(Lx) + "x" + std::to_string(Ly) + " needs Lx >= 2 and Ly >= 2");
    }
    HoneycombTorus lat;
    lat.Lx = Lx;
    lat.Ly = Ly;
    lat.N = 2 * Lx * Ly;

    auto push = [&](int a, int b, Axis axis) { lat.bonds.push_back({std::min(a, b), std::max(a, b), axis}); };
    for (int cy = 0; cy < Ly; ++cy) {
        for (int cx = 0; cx < Lx; ++cx) {
            push(lat.site_b(cx, cy), lat.site_a(cx + 1, cy), Axis::X);
        }
    }
    for (int cy = 0; cy < Ly; ++cy) {
        for (int cx = 0; cx < Lx; ++cx) {
            push(lat.site_b(cx, cy), lat.site_a(cx, cy + 1), Axis::Y);
        }
    }
    for (int cy = 0; cy < Ly; ++cy) {
        for (int cx = 0; cx < Lx; ++cx) {
            push(lat.site_a(cx, cy), lat.site_b(cx, cy), Axis::Z);
        }
    }

    // Counterclockwise walk around the hexagon whose lower-left corner is A(cx, cy).
    for (int cy = 0; cy < Ly; ++cy) {
        for (int cx = 0; cx < Lx; ++cx) {
            Plaquette p;
            p.sites = {lat.site_a(cx, cy),         lat.site_b(cx, cy - 1),     lat.site_a(cx + 1, cy - 1),
                       lat.site_b(cx + 1, cy - 1), lat.site_a(cx + 1, cy), lat.site_b(cx, cy)};
            p.pauli_axes = {Axis::X, Axis::Z, Axis::Y, Axis::X, Axis::Z, Axis::Y};
            lat.plaquettes.push_back(p);
        }
    }

    LoopSpec row;
    row.axis = Axis::Y;
    for (int cx = 0; cx < Lx; ++cx) {
        row.sites.push_back(lat.site_a(cx, 0));
        row.sites.push_back(lat.site_b(cx, 0));
    }
    LoopSpec column;
    column.axis = Axis::X;
    for (int cy = 0; cy < Ly; ++cy) {
        column.sites.push_back(lat.site_a(0, cy));
        column.sites.push_back(lat.site_b(0, cy));
    }
    lat.loops = {row, column};

    // The loop axes are the ones left free by the bonds each loop runs along;
    // refuse to hand out a lattice whose symmetry strings do not commute.
    auto stabilizers = stabilizer_strings(lat);
    for (const auto &b : lat.bonds) {
        auto k = bond_string(lat, b);
        for (const auto &s : stabilizers) {
            if (!commutes(k, s)) {
                throw Error(ErrorCode::IndexOutOfRange, "internal: stabilizer " + s.to_string() +
                                                            " does not commute with bond " + k.to_string());
            }
        }
    }
    for (std::size_t a = 0; a < stabilizers.size(); ++a) {
        for (std::size_t b = a + 1; b < stabilizers.size(); ++b) {
            if (!commutes(stabilizers[a], stabilizers[b])) {
                throw Error(ErrorCode::IndexOutOfRange, "internal: stabilizers " + std::to_string(a) + " and " +
                                                            std::to_string(b) + " anticommute");
            }
        }
    }
    return lat;
}

PauliString bond_string(const HoneycombTorus &lat, const Bond &b) {
    PauliString p(lat.N);
    p.set(b.i, b.axis);
    p.set(b.j, b.axis);
    return p;
}

PauliString plaquette_string(const HoneycombTorus &lat, int p_index) {
    if (p_index < 0 || p_index >= lat.num_plaquettes()) {
        throw Error(ErrorCode::IndexOutOfRange, "plaquette " + std::to_string(p_index));
    }
    const auto &p = lat.plaquettes[p_index];
    return PauliString::on_sites(lat.N, p.sites, p.pauli_axes);
}

PauliString loop_string(const HoneycombTorus &lat, int which) {
    if (which < 0 || which > 1) {
        throw Error(ErrorCode::IndexOutOfRange, "loop " + std::to_string(which));
    }
    const auto &l = lat.loops[which];
    return PauliString::on_sites(lat.N, l.sites, l.axis);
}

std::vector<PauliString> stabilizer_strings(const HoneycombTorus &lat) {
    std::vector<PauliString> out;
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        out.push_back(plaquette_string(lat, p));
    }
    out.push_back(loop_string(lat, 0));
    out.push_back(loop_string(lat, 1));
    return out;
}

PauliSum build_hamiltonian(const HoneycombTorus &lat, const KitaevParams &params) {
    PauliSum terms;
    for (const auto &b : lat.bonds) {
        terms.push_back({params.coupling(b.axis), bond_string(lat, b)});
    }
    if (!params.field.empty()) {
        if (static_cast<int>(params.field.size()) != lat.N) {
            throw Error(ErrorCode::SizeMismatch, "field has " + std::to_string(params.field.size()) +
                                                     " sites, lattice has " + std::to_string(lat.N));
        }
        for (int i = 0; i < lat.N; ++i) {
            for (int a = 0; a < 3; ++a) {
                double h = params.field[i][a];
                if (h != 0.0) {
                    terms.push_back({h, PauliString::single(lat.N, i, static_cast<Axis>(a))});
                }
            }
        }
    }
    return terms;
}

std::vector<std::array<int, 3>> plaquettes_of_sites(const HoneycombTorus &lat) {
    std::vector<std::array<int, 3>> out(lat.N, {-1, -1, -1});
    std::vector<int> fill(lat.N, 0);
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        for (int s : lat.plaquettes[p].sites) {
            out[s][fill[s]++] = p;
        }
    }
    return out;
}

Axis plaquette_axis_at(const HoneycombTorus &lat, int p_index, int site) {
    const auto &p = lat.plaquettes.at(p_index);
    for (int k = 0; k < 6; ++k) {
        if (p.sites[k] == site) {
            return p.pauli_axes[k];
        }
    }
    throw Error(ErrorCode::IndexOutOfRange,
                "site " + std::to_string(site) + " not on plaquette " + std::to_string(p_index));
}

std::vector<BondPair> default_bond_pairs(const HoneycombTorus &lat) {
    return {
        {"horz", lat.z_bond_of_cell(0, 0), lat.z_bond_of_cell(1, lat.Ly - 1)},
        {"diag", lat.z_bond_of_cell(0, 0), lat.z_bond_of_cell(1, 0)},
    };
}

nlohmann::json to_json(const HoneycombTorus &lat) {
    using nlohmann::json;
    json j;
    j["Lx"] = lat.Lx;
    j["Ly"] = lat.Ly;
    j["N"] = lat.N;
    json sites = json::array();
    for (int s = 0; s < lat.N; ++s) {
        auto pos = lat.site_position(s);
        sites.push_back({{"index", s}, {"sublattice", s % 2 == 0 ? "A" : "B"}, {"cell", s / 2}, {"x", pos[0]},
                         {"y", pos[1]}});
    }
    j["sites"] = sites;
    json bonds = json::array();
    for (std::size_t b = 0; b < lat.bonds.size(); ++b) {
        const auto &bd = lat.bonds[b];
        bonds.push_back({{"index", b}, {"i", bd.i}, {"j", bd.j}, {"axis", std::string(1, axis_char(bd.axis))}});
    }
    j["bonds"] = bonds;
    json plaquettes = json::array();
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        std::string axes;
        for (Axis a : lat.plaquettes[p].pauli_axes) {
            axes += axis_char(a);
        }
        plaquettes.push_back({{"index", p},
                              {"sites", lat.plaquettes[p].sites},
                              {"pauli_axes", axes},
                              {"string", plaquette_string(lat, p).to_string()}});
    }
    j["plaquettes"] = plaquettes;
    json loops = json::array();
    const char *names[2] = {"horizontal", "vertical"};
    for (int l = 0; l < 2; ++l) {
        loops.push_back({{"name", names[l]},
                         {"sites", lat.loops[l].sites},
                         {"axis", std::string(1, axis_char(lat.loops[l].axis))},
                         {"string", loop_string(lat, l).to_string()}});
    }
    j["loops"] = loops;
    json pairs = json::array();
    for (const auto &bp : default_bond_pairs(lat)) {
        pairs.push_back({{"tag", bp.tag},
                         {"bonds", {bp.first, bp.second}},
                         {"sites", {lat.bonds[bp.first].i, lat.bonds[bp.first].j, lat.bonds[bp.second].i,
                                    lat.bonds[bp.second].j}}});
    }
    j["default_bond_pairs"] = pairs;
    return j;
}

}  // namespace kitaev
