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

#include <cmath>

#include <doctest.h>

#include "kitaev/error.hpp"
#include "kitaev/lattice.hpp"
#include "kitaev/stabilizer_prep.hpp"

using namespace kitaev;
using doctest::Approx;

namespace {

PauliString product(const std::vector<PauliString> &chain, int n) {
    PauliString p(n);
    for (const auto &c : chain) {
        p = multiply(p, c);
    }
    return p;
}

}  // namespace

TEST_CASE("stabilize reaches a joint eigenstate") {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 3}}) {
        auto lat = build_torus(lx, ly);
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto r = stabilize(lat, seed);
            auto stabs = stabilizer_strings(lat);
            REQUIRE(r.measured_signs.size() == stabs.size());
            for (std::size_t k = 0; k < stabs.size(); ++k) {
                double e = expectation(r.state, stabs[k]);
                CHECK(std::abs(std::abs(e) - 1.0) < 1e-12);
                CHECK(e == Approx(static_cast<double>(r.measured_signs[k])).epsilon(1e-12));
            }
            // the last plaquette is fixed by the others
            CHECK(r.branch_probabilities[lat.num_plaquettes() - 1] == Approx(1.0));
            int prod = 1;
            for (int p = 0; p < lat.num_plaquettes(); ++p) {
                prod *= r.measured_signs[p];
            }
            CHECK(prod == 1);
            CHECK(r.state.norm_squared() == Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("stabilize is deterministic per seed") {
    auto lat = build_torus(2, 3);
    auto a = stabilize(lat, 17);
    auto b = stabilize(lat, 17);
    CHECK(a.measured_signs == b.measured_signs);
    for (std::size_t j = 0; j < a.state.dim(); ++j) {
        CHECK(a.state[j] == b.state[j]);
    }
    bool differs = false;
    for (std::uint64_t s = 0; s < 10 && !differs; ++s) {
        differs = stabilize(lat, s).measured_signs != a.measured_signs;
    }
    CHECK(differs);
}

TEST_CASE("flip chains") {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}}) {
        auto lat = build_torus(lx, ly);
        auto stabs = stabilizer_strings(lat);
        int single_pairs = 0;
        for (int a = 0; a < lat.num_plaquettes(); ++a) {
            for (int b = 0; b < lat.num_plaquettes(); ++b) {
                if (a == b) {
                    continue;
                }
                auto chain = flip_chain(lat, a, b);
                REQUIRE_FALSE(chain.empty());
                for (const auto &c : chain) {
                    CHECK(c.weight() == 1);
                }
                auto p = product(chain, lat.N);
                for (std::size_t k = 0; k < stabs.size(); ++k) {
                    bool flips = static_cast<int>(k) == a || static_cast<int>(k) == b;
                    CHECK(commutes(p, stabs[k]) == !flips);
                }
                // one Pauli suffices whenever some single-qubit Pauli has exactly this signature
                bool single = false;
                for (int q = 0; q < lat.N && !single; ++q) {
                    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
                        auto one = PauliString::single(lat.N, q, ax);
                        bool ok = true;
                        for (std::size_t k = 0; k < stabs.size(); ++k) {
                            bool flips = static_cast<int>(k) == a || static_cast<int>(k) == b;
                            ok = ok && commutes(one, stabs[k]) == !flips;
                        }
                        single = single || ok;
                    }
                }
                if (single) {
                    ++single_pairs;
                    CHECK(chain.size() == 1);
                }
            }
        }
        CHECK(single_pairs > 0);
        for (int which = 0; which < 2; ++which) {
            auto p = product(loop_flip_chain(lat, which), lat.N);
            for (std::size_t k = 0; k < stabs.size(); ++k) {
                bool flips = static_cast<int>(k) == lat.num_plaquettes() + which;
                CHECK(commutes(p, stabs[k]) == !flips);
            }
        }
    }
}

TEST_CASE("applying a chain twice restores the plaquettes") {
    auto lat = build_torus(2, 3);
    auto r = stabilize(lat, 4);
    auto chain = flip_chain(lat, 0, 4);
    auto s = r.state;
    for (const auto &c : chain) {
        apply_pauli(s, c);
    }
    auto mid = stabilizer_expectations(s, lat);
    CHECK(mid[0] == Approx(-r.measured_signs[0]));
    CHECK(mid[4] == Approx(-r.measured_signs[4]));
    for (const auto &c : chain) {
        apply_pauli(s, c);
    }
    auto after = stabilizer_expectations(s, lat);
    for (std::size_t k = 0; k < after.size(); ++k) {
        CHECK(after[k] == Approx(static_cast<double>(r.measured_signs[k])).epsilon(1e-12));
    }
}

TEST_CASE("prepare_sector hits every sector") {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 3}}) {
        auto lat = build_torus(lx, ly);
        int n = lat.num_plaquettes();
        for (int w = 0; w <= n; w += 2) {
            for (int l0 : {1, -1}) {
                for (int l1 : {1, -1}) {
                    for (std::uint64_t seed = 0; seed < 5; ++seed) {
                        SectorSpec sec{w, {l0, l1}, {}};
                        auto prep = prepare_sector(lat, sec, seed);
                        CHECK(vortex_count(prep.state, lat) == Approx(w).epsilon(1e-10));
                        auto e = stabilizer_expectations(prep.state, lat);
                        CHECK(std::abs(e[n] - l0) < 1e-10);
                        CHECK(std::abs(e[n + 1] - l1) < 1e-10);
                        for (int p = 0; p < n; ++p) {
                            CHECK(std::abs(std::abs(e[p]) - 1.0) < 1e-10);
                        }
                        CHECK(prep.report.final_vortex_count == Approx(w).epsilon(1e-10));
                    }
                }
            }
        }
    }
}

TEST_CASE("sector examples") {
    auto small = build_torus(2, 2);
    auto four = prepare_sector(small, SectorSpec{4, {1, 1}, {}}, 0);
    CHECK(vortex_count(four.state, small) == Approx(4.0).epsilon(1e-12));

    auto lat = build_torus(2, 3);
    auto none = prepare_sector(lat, SectorSpec{0, {1, 1}, {}}, 3);
    for (int p = 0; p < lat.num_plaquettes(); ++p) {
        CHECK(expectation(none.state, plaquette_string(lat, p)) == Approx(1.0).epsilon(1e-12));
    }

    std::vector<int> pattern = {1, -1, 1, 1, -1, 1};
    auto pinned = prepare_sector(lat, SectorSpec{2, {1, -1}, pattern}, 9);
    auto e = stabilizer_expectations(pinned.state, lat);
    for (int p = 0; p < 6; ++p) {
        CHECK(e[p] == Approx(pattern[p]).epsilon(1e-10));
    }
    CHECK(e[7] == Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("unreachable sectors") {
    auto lat = build_torus(2, 2);
    auto code = [&](const SectorSpec &s) {
        try {
            (void)prepare_sector(lat, s, 0);
        } catch (const Error &e) {
            return e.code();
        }
        return ErrorCode::IoError;
    };
    CHECK(code(SectorSpec{3, {1, 1}, {}}) == ErrorCode::UnreachableSector);
    CHECK(code(SectorSpec{6, {1, 1}, {}}) == ErrorCode::UnreachableSector);
    CHECK(code(SectorSpec{-2, {1, 1}, {}}) == ErrorCode::UnreachableSector);
    CHECK(code(SectorSpec{0, {1, 0}, {}}) == ErrorCode::UnreachableSector);
    CHECK(code(SectorSpec{2, {1, 1}, {1, 1, 1, 1}}) == ErrorCode::UnreachableSector);
    CHECK(code(SectorSpec{2, {1, 1}, {1, -1}}) == ErrorCode::UnreachableSector);
    CHECK_THROWS_AS((void)flip_chain(lat, 1, 1), Error);
}

TEST_CASE("report json") {
    auto lat = build_torus(2, 2);
    auto prep = prepare_sector(lat, SectorSpec{2, {-1, 1}, {}}, 1);
    auto j = to_json(prep.report);
    CHECK(j.contains("measured_signs"));
    CHECK(j["chains"].is_array());
    for (const auto &c : prep.report.chains) {
        CHECK((c.purpose == "annihilate" || c.purpose == "create" || c.purpose == "loop" || c.purpose == "pattern"));
    }
}
