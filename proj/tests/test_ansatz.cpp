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
#include <numbers>
#include <set>

#include <doctest.h>

#include "kitaev/ansatz.hpp"
#include "kitaev/error.hpp"
#include "kitaev/random.hpp"
#include "kitaev/stabilizer_prep.hpp"
#include "support/dense.hpp"

using namespace kitaev;
using doctest::Approx;

namespace {

std::vector<double> random_theta(int count, Rng &rng, double scale = std::numbers::pi) {
    std::vector<double> t(count);
    for (auto &x : t) {
        x = uniform(rng, -scale, scale);
    }
    return t;
}

}  // namespace

TEST_CASE("parameter counts") {
    auto n8 = build_torus(2, 2);
    auto n12 = build_torus(2, 3);
    AnsatzSpec d1{1, false, VortexLayerKind::SingleSiteRotations};
    auto c = assemble(n8, d1, std::vector<double>(12, 0.1));
    CHECK(c.gates.size() == 12);
    CHECK(c.num_params == 12);
    CHECK(parameter_count(n12, AnsatzSpec{2, false, VortexLayerKind::SingleSiteRotations}) == 36);
    CHECK(parameter_count(n12, AnsatzSpec{3, true, VortexLayerKind::SingleSiteRotations}) == 162);
    // 3N/2 + 3N + 3N/2 per layer with controlled rotations
    CHECK(parameter_count(n12, AnsatzSpec{2, true, VortexLayerKind::SingleSitePlusControlled}) == 2 * (18 + 36 + 18));
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{4, 3}}) {
        auto lat = build_torus(lx, ly);
        for (int d = 1; d <= 4; ++d) {
            for (int vk = 0; vk < 3; ++vk) {
                AnsatzSpec spec{d, vk > 0, vk == 2 ? VortexLayerKind::SingleSitePlusControlled
                                                   : VortexLayerKind::SingleSiteRotations};
                int per = 3 * lat.N / 2 + (vk > 0 ? 3 * lat.N : 0) + (vk == 2 ? 3 * lat.N / 2 : 0);
                CHECK(parameter_count(lat, spec) == d * per);
                auto circ = assemble(lat, spec, std::vector<double>(d * per, 0.0));
                CHECK(circ.num_params == d * per);
                CHECK(circ.gates.size() == static_cast<std::size_t>(d * per));
            }
        }
    }
}

TEST_CASE("layout is a bijection") {
    auto lat = build_torus(2, 3);
    AnsatzSpec spec{3, true, VortexLayerKind::SingleSitePlusControlled};
    int count = parameter_count(lat, spec);
    std::set<std::tuple<int, int, int>> slots;
    for (int k = 0; k < count; ++k) {
        auto slot = parameter_slot(lat, spec, k);
        CHECK(parameter_index(lat, spec, slot) == k);
        CHECK(slots.insert({slot.layer, static_cast<int>(slot.block), slot.generator}).second);
    }
    CHECK_THROWS_AS((void)parameter_slot(lat, spec, count), Error);
    CHECK_THROWS_AS((void)parameter_index(lat, spec, ParamSlot{3, ParamBlock::Centralizer, 0}), Error);

    // the circuit's param_index follows the same layout
    auto circ = assemble(lat, spec, std::vector<double>(count, 0.0));
    std::vector<int> seen(count, 0);
    for (int idx : circ.param_index) {
        REQUIRE(idx >= 0);
        seen[idx]++;
    }
    for (int v : seen) {
        CHECK(v == 1);
    }
}

TEST_CASE("zero angles act as the identity") {
    auto lat = build_torus(2, 2);
    AnsatzSpec spec{2, true, VortexLayerKind::SingleSitePlusControlled};
    auto circ = assemble(lat, spec, std::vector<double>(parameter_count(lat, spec), 0.0));
    auto s = StateVector::random(8, 3);
    auto t = s;
    run_circuit(t, circ);
    CHECK((dense::vec(t) - dense::vec(s)).norm() < 1e-14);
}

TEST_CASE("centralizer circuits preserve every stabilizer") {
    Rng rng(321);
    for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 3}}) {
        auto lat = build_torus(lx, ly);
        AnsatzSpec spec{2, false, VortexLayerKind::SingleSiteRotations};
        int count = parameter_count(lat, spec);
        auto prep = prepare_sector(lat, SectorSpec{2, {1, -1}, {}}, 5);
        auto before = stabilizer_expectations(prep.state, lat);
        for (int k = 0; k < 100; ++k) {
            auto circ = assemble(lat, spec, random_theta(count, rng));
            auto s = prep.state;
            run_circuit(s, circ);
            auto after = stabilizer_expectations(s, lat);
            for (std::size_t j = 0; j < after.size(); ++j) {
                REQUIRE(std::abs(after[j] - before[j]) < 1e-10);
            }
        }
    }
}

TEST_CASE("generic angles change the energy") {
    auto lat = build_torus(2, 2);
    auto h = build_hamiltonian(lat, KitaevParams::isotropic(-1.0));
    auto prep = prepare_sector(lat, SectorSpec{4, {1, 1}, {}}, 0);
    Rng rng(6);
    AnsatzSpec spec{1, false, VortexLayerKind::SingleSiteRotations};
    auto circ = assemble(lat, spec, random_theta(12, rng, 1.0));
    auto s = prep.state;
    run_circuit(s, circ);
    CHECK(std::abs(expectation(s, h) - expectation(prep.state, h)) > 1e-3);
}

TEST_CASE("centralizer layer matches dense bond exponentials") {
    auto lat = build_torus(2, 2);
    Rng rng(10);
    auto theta = random_theta(12, rng);
    auto gates = build_centralizer_layer(lat, theta);
    REQUIRE(gates.size() == 12);
    dense::Mat u = dense::Mat::Identity(256, 256);
    auto gens = centralizer_generators(lat);
    for (int k = 0; k < 12; ++k) {
        u = dense::expm(dense::of(gens[k]), 0.5 * theta[k]) * u;
    }
    auto s = StateVector::random(8, 2);
    dense::Vec expect = u * dense::vec(s);
    for (const auto &g : gates) {
        apply_gate(s, g);
    }
    CHECK((dense::vec(s) - expect).norm() < 1e-12);
}

TEST_CASE("vortex layer") {
    auto lat = build_torus(2, 3);
    auto prep = prepare_sector(lat, SectorSpec{0, {1, 1}, {}}, 2);
    auto of_sites = plaquettes_of_sites(lat);

    // a pi rotation about Z_i flips the two plaquettes whose Pauli at i is not Z
    for (int site = 0; site < lat.N; ++site) {
        auto s = prep.state;
        apply_pauli_rotation(s, PauliString::single(lat.N, site, Axis::Z), std::numbers::pi);
        auto e = stabilizer_expectations(s, lat);
        int flipped = 0;
        for (int p = 0; p < lat.num_plaquettes(); ++p) {
            if (e[p] < -0.5) {
                ++flipped;
            }
            CHECK(std::abs(std::abs(e[p]) - 1.0) < 1e-12);
        }
        CHECK(flipped == 2);
    }

    Rng rng(8);
    int per = vortex_param_count(lat, VortexLayerKind::SingleSitePlusControlled);
    CHECK(per == 3 * lat.N + 3 * lat.N / 2);
    auto gates = build_vortex_layer(lat, random_theta(per, rng, 0.2), VortexLayerKind::SingleSitePlusControlled);
    CHECK(gates.size() == static_cast<std::size_t>(per));
    for (std::size_t b = 0; b < lat.bonds.size(); ++b) {
        const auto &g = std::get<ControlledRotation>(gates[3 * lat.N + b]);
        CHECK(g.control == lat.bonds[b].i);
        CHECK(g.target == lat.bonds[b].j);
        CHECK(g.axis == controlled_target_axis(lat.bonds[b].axis));
    }
    auto s = prep.state;
    for (const auto &g : gates) {
        apply_gate(s, g);
    }
    double w = vortex_count(s, lat);
    CHECK(w > 1e-4);
    CHECK(std::abs(w - std::round(w)) > 1e-4);
}

TEST_CASE("set_parameters and mismatches") {
    auto lat = build_torus(2, 2);
    AnsatzSpec spec{2, true, VortexLayerKind::SingleSiteRotations};
    int count = parameter_count(lat, spec);
    Rng rng(1);
    auto theta = random_theta(count, rng);
    auto a = assemble(lat, spec, theta);
    auto b = assemble(lat, spec, std::vector<double>(count, 0.0));
    b.set_parameters(theta);
    auto sa = StateVector::random(8, 1);
    auto sb = sa;
    run_circuit(sa, a);
    run_circuit(sb, b);
    CHECK((dense::vec(sa) - dense::vec(sb)).norm() < 1e-14);

    try {
        (void)assemble(lat, spec, std::vector<double>(count - 1, 0.0));
        FAIL("expected ParamCountMismatch");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ParamCountMismatch);
    }
    std::vector<double> short_theta(3, 0.0);
    CHECK_THROWS_AS(b.set_parameters(short_theta), Error);
    CHECK(to_json(a)["num_params"] == count);
}
