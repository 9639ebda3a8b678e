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

#include "kitaev/stabilizer_prep.hpp"

#include <algorithm>
#include <deque>

#include "kitaev/error.hpp"
#include "kitaev/random.hpp"

namespace kitaev {

namespace {

// A single-qubit Pauli flips two plaquettes (the ones in which its site
// carries a different axis) and possibly loop signs.
struct Move {
    PauliString pauli;
    int p1 = -1;
    int p2 = -1;
    int loop_bits = 0;
};

std::vector<Move> enumerate_moves(const HoneycombTorus &lat) {
    const int n = lat.num_plaquettes();
    auto stabilizers = stabilizer_strings(lat);
    std::vector<Move> moves;
    for (int site = 0; site < lat.N; ++site) {
        for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
            Move m;
            m.pauli = PauliString::single(lat.N, site, axis);
            std::vector<int> flipped;
            for (int p = 0; p < n; ++p) {
                if (!commutes(m.pauli, stabilizers[p])) {
                    flipped.push_back(p);
                }
            }
            if (flipped.size() != 2) {
                throw Error(ErrorCode::NoChainFound, "internal: " + m.pauli.to_string() + " flips " +
                                                         std::to_string(flipped.size()) + " plaquettes");
            }
            m.p1 = flipped[0];
            m.p2 = flipped[1];
            for (int l = 0; l < 2; ++l) {
                if (!commutes(m.pauli, stabilizers[n + l])) {
                    m.loop_bits |= 1 << l;
                }
            }
            moves.push_back(std::move(m));
        }
    }
    return moves;
}

// Breadth-first search over (plaquette, loop parity) states.
std::vector<PauliString> search_chain(const HoneycombTorus &lat, int start, int goal, int goal_loop_bits) {
    const int n = lat.num_plaquettes();
    const auto moves = enumerate_moves(lat);
    const int num_states = n * 4;
    auto id = [](int p, int bits) { return p * 4 + bits; };
    std::vector<int> parent_move(num_states, -1);
    std::vector<int> parent_state(num_states, -1);
    std::vector<bool> seen(num_states, false);
    std::deque<int> queue;
    seen[id(start, 0)] = true;
    queue.push_back(id(start, 0));
    const int target = id(goal, goal_loop_bits);
    while (!queue.empty() && !seen[target]) {
        int s = queue.front();
        queue.pop_front();
        int p = s / 4;
        int bits = s % 4;
        for (std::size_t mi = 0; mi < moves.size(); ++mi) {
            const auto &m = moves[mi];
            int next_p = m.p1 == p ? m.p2 : (m.p2 == p ? m.p1 : -1);
            if (next_p < 0) {
                continue;
            }
            int t = id(next_p, bits ^ m.loop_bits);
            if (!seen[t]) {
                seen[t] = true;
                parent_move[t] = static_cast<int>(mi);
                parent_state[t] = s;
                queue.push_back(t);
            }
        }
    }
    if (!seen[target] || target == id(start, 0)) {
        throw Error(ErrorCode::NoChainFound, "no chain from plaquette " + std::to_string(start) + " to " +
                                                 std::to_string(goal) + " with loop bits " +
                                                 std::to_string(goal_loop_bits));
    }
    std::vector<PauliString> chain;
    for (int s = target; s != id(start, 0); s = parent_state[s]) {
        chain.push_back(moves[parent_move[s]].pauli);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

PauliString multiply_all(const std::vector<PauliString> &chain) {
    PauliString out = chain.front();
    for (std::size_t k = 1; k < chain.size(); ++k) {
        out = multiply(out, chain[k]);
    }
    return out;
}

void apply_chain(StateVector &state, const std::vector<PauliString> &chain) {
    for (const auto &p : chain) {
        apply_pauli(state, p);
    }
}

}  // namespace

StabilizeResult stabilize(const HoneycombTorus &lat, std::uint64_t rng_seed) {
    StabilizeResult out{StateVector(lat.N), {}, {}};
    Rng rng(rng_seed);
    for (const auto &s : stabilizer_strings(lat)) {
        double p_plus = 0.5 * (1.0 + matrix_element(out.state, s, out.state).real());
        int sign = uniform01(rng) < p_plus ? 1 : -1;
        double prob = project(out.state, s, sign);
        out.measured_signs.push_back(sign);
        out.branch_probabilities.push_back(prob);
    }
    return out;
}

std::vector<PauliString> flip_chain(const HoneycombTorus &lat, int plaquette_a, int plaquette_b) {
    const int n = lat.num_plaquettes();
    if (plaquette_a < 0 || plaquette_a >= n || plaquette_b < 0 || plaquette_b >= n) {
        throw Error(ErrorCode::IndexOutOfRange, "plaquette pair out of range");
    }
    if (plaquette_a == plaquette_b) {
        throw Error(ErrorCode::IndexOutOfRange, "flip_chain needs two distinct plaquettes");
    }
    return search_chain(lat, plaquette_a, plaquette_b, 0);
}

std::vector<PauliString> loop_flip_chain(const HoneycombTorus &lat, int which) {
    if (which < 0 || which > 1) {
        throw Error(ErrorCode::IndexOutOfRange, "loop " + std::to_string(which));
    }
    return search_chain(lat, 0, 0, 1 << which);
}

PreparedState prepare_sector(const HoneycombTorus &lat, const SectorSpec &sector, std::uint64_t rng_seed) {
    const int n = lat.num_plaquettes();
    if (sector.vortex_count % 2 != 0 || sector.vortex_count < 0 || sector.vortex_count > n) {
        throw Error(ErrorCode::UnreachableSector, "vortex count " + std::to_string(sector.vortex_count) +
                                                      " must be even and within [0, " + std::to_string(n) + "]");
    }
    for (int s : sector.loop_signs) {
        if (s != 1 && s != -1) {
            throw Error(ErrorCode::UnreachableSector, "loop signs must be +1 or -1");
        }
    }

    if (!sector.plaquette_signs.empty()) {
        if (static_cast<int>(sector.plaquette_signs.size()) != n) {
            throw Error(ErrorCode::UnreachableSector, "plaquette pattern needs " + std::to_string(n) + " entries");
        }
        int minus = 0;
        for (int s : sector.plaquette_signs) {
            if (s != 1 && s != -1) {
                throw Error(ErrorCode::UnreachableSector, "plaquette signs must be +1 or -1");
            }
            minus += s == -1;
        }
        if (minus != sector.vortex_count) {
            throw Error(ErrorCode::UnreachableSector, "plaquette pattern holds " + std::to_string(minus) +
                                                          " vortices, sector asks for " +
                                                          std::to_string(sector.vortex_count));
        }
    }

    StabilizeResult stab = stabilize(lat, rng_seed);
    PreparedState out{std::move(stab.state), {}};
    out.report.measured_signs = stab.measured_signs;
    out.report.branch_probabilities = stab.branch_probabilities;

    std::vector<int> signs = stab.measured_signs;
    auto count_vortices = [&] { return static_cast<int>(std::count(signs.begin(), signs.begin() + n, -1)); };

    auto apply_flip = [&](int a, const std::vector<int> &partners, const char *purpose) {
        std::vector<PauliString> best;
        for (int b : partners) {
            auto chain = flip_chain(lat, a, b);
            if (best.empty() || chain.size() < best.size()) {
                best = std::move(chain);
            }
        }
        apply_chain(out.state, best);
        const PauliString product = multiply_all(best);
        for (int p = 0; p < n; ++p) {
            if (!commutes(product, plaquette_string(lat, p))) {
                signs[p] = -signs[p];
            }
        }
        out.report.chains.push_back({purpose, std::move(best)});
    };

    if (!sector.plaquette_signs.empty()) {
        // Pair the lowest-index mismatched plaquette with its nearest mismatched partner.
        for (;;) {
            std::vector<int> wrong;
            for (int p = 0; p < n; ++p) {
                if (signs[p] != sector.plaquette_signs[p]) {
                    wrong.push_back(p);
                }
            }
            if (wrong.empty()) {
                break;
            }
            apply_flip(wrong[0], std::vector<int>(wrong.begin() + 1, wrong.end()), "pattern");
        }
    }

    // Pair the lowest-index plaquette of the wrong kind with its nearest partner.
    while (count_vortices() != sector.vortex_count) {
        const int want = count_vortices() > sector.vortex_count ? -1 : 1;
        int a = static_cast<int>(std::find(signs.begin(), signs.begin() + n, want) - signs.begin());
        std::vector<int> partners;
        for (int b = a + 1; b < n; ++b) {
            if (signs[b] == want) {
                partners.push_back(b);
            }
        }
        apply_flip(a, partners, want == -1 ? "annihilate" : "create");
    }

    for (int l = 0; l < 2; ++l) {
        if (signs[n + l] != sector.loop_signs[l]) {
            auto chain = loop_flip_chain(lat, l);
            apply_chain(out.state, chain);
            signs[n + l] = -signs[n + l];
            out.report.chains.push_back({"loop", std::move(chain)});
        }
    }

    auto expectations = stabilizer_expectations(out.state, lat);
    out.report.final_plaquettes.assign(expectations.begin(), expectations.begin() + n);
    out.report.final_loops = {expectations[n], expectations[n + 1]};
    out.report.final_vortex_count = vortex_count(out.state, lat);
    return out;
}

double vortex_count(const StateVector &state, const HoneycombTorus &lat) {
    double sum = 0.0;
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        sum += expectation(state, plaquette_string(lat, p));
    }
    return 0.5 * (lat.num_plaquettes() - sum);
}

std::vector<double> stabilizer_expectations(const StateVector &state, const HoneycombTorus &lat) {
    std::vector<double> out;
    for (const auto &s : stabilizer_strings(lat)) {
        out.push_back(expectation(state, s));
    }
    return out;
}

nlohmann::json to_json(const PrepReport &report) {
    using nlohmann::json;
    json chains = json::array();
    for (const auto &c : report.chains) {
        json paulis = json::array();
        for (const auto &p : c.paulis) {
            paulis.push_back(p.to_string());
        }
        chains.push_back({{"purpose", c.purpose}, {"paulis", paulis}});
    }
    return {
        {"measured_signs", report.measured_signs},
        {"branch_probabilities", report.branch_probabilities},
        {"chains", chains},
        {"final_plaquettes", report.final_plaquettes},
        {"final_loops", report.final_loops},
        {"final_vortex_count", report.final_vortex_count},
    };
}

}  // namespace kitaev
