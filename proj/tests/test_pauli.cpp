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

#include <doctest.h>

#include "kitaev/ansatz.hpp"
#include "kitaev/error.hpp"
#include "kitaev/lattice.hpp"
#include "kitaev/pauli.hpp"
#include "kitaev/random.hpp"
#include "support/dense.hpp"

using namespace kitaev;

namespace {

PauliString random_string(int n, Rng &rng) {
    PauliString p(n);
    for (int q = 0; q < n; ++q) {
        int c = static_cast<int>(rng() % 4);
        if (c > 0) {
            p.set(q, static_cast<Axis>(c - 1));
        }
    }
    p.set_phase_exponent(static_cast<int>(rng() % 4));
    return p;
}

}  // namespace

TEST_CASE("single-qubit products") {
    auto x = PauliString::single(1, 0, Axis::X);
    auto z = PauliString::single(1, 0, Axis::Z);
    auto y = PauliString::single(1, 0, Axis::Y);
    auto xz = multiply(x, z);
    CHECK(xz.at(0) == 'Y');
    CHECK(xz.phase_exponent() == 3);  // -i
    CHECK(multiply(z, x).phase_exponent() == 1);
    CHECK(multiply(x, y).at(0) == 'Z');
    CHECK(multiply(x, y).phase_exponent() == 1);
}

TEST_CASE("hermitian strings square to the identity") {
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        auto a = random_string(70, rng);
        a.set_phase_exponent(2 * (k % 2));
        auto sq = multiply(a, a);
        CHECK(sq.is_identity_up_to_phase());
        CHECK(sq.phase_exponent() == 0);
    }
}

TEST_CASE("multiplication matches dense matrices") {
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        auto a = random_string(4, rng);
        auto b = random_string(4, rng);
        dense::Mat expect = dense::of(a) * dense::of(b);
        CHECK((dense::of(multiply(a, b)) - expect).norm() < 1e-12);
    }
}

TEST_CASE("associativity and inverses on random strings") {
    Rng rng(2024);
    for (int k = 0; k < 1000; ++k) {
        int n = 1 + static_cast<int>(rng() % 130);
        auto a = random_string(n, rng);
        auto b = random_string(n, rng);
        auto c = random_string(n, rng);
        CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        auto id = multiply(adjoint(a), a);
        CHECK(id.is_identity_up_to_phase());
        CHECK(id.phase_exponent() == 0);
        CHECK(multiply(multiply(a, b), adjoint(b)) == a);
    }
}

TEST_CASE("commutation examples") {
    auto x0 = PauliString::single(2, 0, Axis::X);
    auto z0 = PauliString::single(2, 0, Axis::Z);
    CHECK_FALSE(commutes(x0, z0));
    CHECK(commutes(PauliString::parse(2, "X0 X1"), PauliString::parse(2, "Z0 Z1")));
}

TEST_CASE("commutation agrees with dense commutators on the 2x2 torus") {
    auto lat = build_torus(2, 2);
    std::vector<PauliString> ops = stabilizer_strings(lat);
    for (const auto &g : centralizer_generators(lat)) {
        ops.push_back(g);
    }
    ops.push_back(PauliString::single(8, 0, Axis::Z));
    ops.push_back(PauliString::single(8, 5, Axis::X));
    std::vector<dense::Mat> mats;
    for (const auto &p : ops) {
        mats.push_back(dense::of(p));
    }
    for (std::size_t a = 0; a < ops.size(); ++a) {
        for (std::size_t b = a; b < ops.size(); ++b) {
            bool dense_commute = (mats[a] * mats[b] - mats[b] * mats[a]).norm() < 1e-12;
            CHECK(commutes(ops[a], ops[b]) == dense_commute);
        }
    }
}

TEST_CASE("bond strings commute with plaquettes") {
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{2, 3}}) {
        auto lat = build_torus(lx, ly);
        auto stabs = stabilizer_strings(lat);
        for (const auto &b : lat.bonds) {
            for (int p = 0; p < lat.num_plaquettes(); ++p) {
                CHECK(commutes(bond_string(lat, b), stabs[p]));
            }
        }
    }
}

TEST_CASE("centralizer generators") {
    auto small = build_torus(2, 2);
    CHECK(centralizer_generators(small).size() == 12);
    auto lat = build_torus(3, 3);
    auto gens = centralizer_generators(lat);
    REQUIRE(gens.size() == 27);
    auto stabs = stabilizer_strings(lat);
    REQUIRE(stabs.size() == 11);
    for (const auto &g : gens) {
        CHECK(g.weight() == 2);
        for (const auto &s : stabs) {
            CHECK(commutes(g, s));
        }
    }
    int counts[3] = {0, 0, 0};
    for (const auto &b : lat.bonds) {
        counts[static_cast<int>(b.axis)]++;
    }
    CHECK(counts[0] == 9);
    CHECK(counts[1] == 9);
    CHECK(counts[2] == 9);
    // grouped x, then y, then z
    for (std::size_t k = 0; k < gens.size(); ++k) {
        char expect = "XYZ"[k / 9];
        for (int q : gens[k].support()) {
            CHECK(gens[k].at(q) == expect);
        }
    }
}

TEST_CASE("parse and print round trip") {
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        auto a = random_string(9, rng);
        CHECK(PauliString::parse(9, a.to_string()) == a);
    }
    CHECK(PauliString::parse(3, "-i Z2").phase_exponent() == 3);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(multiply(PauliString(2), PauliString(3)), Error);
    try {
        (void)commutes(PauliString(2), PauliString(3));
        FAIL("expected SizeMismatch");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::SizeMismatch);
    }
    try {
        (void)PauliString::single(4, 4, Axis::X);
        FAIL("expected QubitOutOfRange");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::QubitOutOfRange);
    }
}
