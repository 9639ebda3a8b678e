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
#include "kitaev/noise.hpp"
#include "kitaev/random.hpp"
#include "support/dense.hpp"

using namespace kitaev;
using doctest::Approx;

namespace {

GateBudget single_rotation_budget(const PauliString &p) {
    ParamCircuit c;
    c.num_qubits = p.num_qubits();
    c.num_params = 1;
    c.gates.push_back(PauliRotation{p, 0.37});
    c.param_index.push_back(0);
    return compile(c).budget;
}

/// ||a - e^{i phi} b|| with the best global phase.
double phase_distance(const StateVector &a, const StateVector &b) {
    cplx ov = inner(b, a);
    cplx phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
    return (dense::vec(a) - phase * dense::vec(b)).norm();
}

}  // namespace

TEST_CASE("two-qubit rotation counts") {
    auto zz = single_rotation_budget(PauliString::parse(4, "Z0 Z2"));
    CHECK(zz.n_CNOT == 2);
    CHECK(zz.n_R == 1);
    CHECK(zz.n_H == 0);
    auto xx = single_rotation_budget(PauliString::parse(4, "X1 X3"));
    CHECK(xx.n_CNOT == 2);
    CHECK(xx.n_R + xx.n_H == 5);
    auto yy = single_rotation_budget(PauliString::parse(4, "Y0 Y1"));
    CHECK(yy.n_CNOT == 2);
    CHECK(yy.n_R + yy.n_H == 5);
    auto w6 = single_rotation_budget(PauliString::parse(8, "X0 Y1 Z2 X3 Y4 Z5"));
    CHECK(w6.n_CNOT == 10);
}

TEST_CASE("centralizer ansatz CNOT count on 24 sites") {
    auto lat = build_torus(4, 3);
    REQUIRE(lat.N == 24);
    AnsatzSpec spec{4, false, VortexLayerKind::SingleSiteRotations};
    auto circ = assemble(lat, spec, std::vector<double>(parameter_count(lat, spec), 0.1));
    auto b = compile(circ).budget;
    CHECK(circ.gates.size() == 144);
    CHECK(b.n_CNOT == 288);
    CHECK(b.phases.at("ansatz").cnots == 288);
    // recompilation gives identical counts
    auto again = compile(circ).budget;
    CHECK(again.n_R == b.n_R);
    CHECK(again.n_H == b.n_H);
    CHECK(again.n_CNOT == b.n_CNOT);
}

TEST_CASE("fidelity formula") {
    GateBudget one;
    one.add("ansatz", GateCounts{0, 0, 1});
    CHECK(estimate_fidelity(one, 1e-4, 1e-3) == Approx(0.999).epsilon(1e-15));
    Rng rng(2);
    for (int k = 0; k < 10; ++k) {
        GateBudget b;
        b.add("stabilization", GateCounts{long(rng() % 500), long(rng() % 200), long(rng() % 400)});
        b.add("ansatz", GateCounts{long(rng() % 500), long(rng() % 200), long(rng() % 400)});
        double e1 = uniform(rng, 0.0, 1e-2), e2 = uniform(rng, 0.0, 1e-2);
        double hand = 1.0;
        for (long i = 0; i < b.n_R + b.n_H; ++i) {
            hand *= 1.0 - e1;
        }
        for (long i = 0; i < b.n_CNOT; ++i) {
            hand *= 1.0 - e2;
        }
        CHECK(std::abs(estimate_fidelity(b, e1, e2) - hand) <= 1e-12);
        CHECK(estimate_fidelity(b, 0.0, 0.0) == 1.0);
        // more gates never help
        GateBudget more = b;
        more.add("dynamics", GateCounts{1, 0, 1});
        CHECK(estimate_fidelity(more, e1, e2) <= estimate_fidelity(b, e1, e2));
        CHECK(estimate_fidelity(b, e1 * 2, e2) <= estimate_fidelity(b, e1, e2));
    }
    CHECK_THROWS_AS((void)estimate_fidelity(one, -0.1, 0.0), Error);
    CHECK_THROWS_AS((void)estimate_fidelity(one, 0.0, 1.5), Error);
}

TEST_CASE("compiled circuits act like the originals") {
    auto lat = build_torus(2, 2);
    Rng rng(19);
    for (auto spec : {AnsatzSpec{2, false, VortexLayerKind::SingleSiteRotations},
                      AnsatzSpec{1, true, VortexLayerKind::SingleSitePlusControlled}}) {
        int count = parameter_count(lat, spec);
        for (int draw = 0; draw < 5; ++draw) {
            std::vector<double> theta(count);
            for (auto &t : theta) {
                t = uniform(rng, -3.0, 3.0);
            }
            auto circ = assemble(lat, spec, theta);
            circ.gates.push_back(PauliGate{PauliString::parse(8, "X0 Y3 Z5")});
            circ.param_index.push_back(-1);
            circ.gates.push_back(Hadamard{2});
            circ.param_index.push_back(-1);
            circ.gates.push_back(Cnot{2, 6});
            circ.param_index.push_back(-1);
            auto compiled = compile(circ);
            for (const auto &g : compiled.gates) {
                bool native = std::holds_alternative<Hadamard>(g) || std::holds_alternative<Cnot>(g) ||
                              (std::holds_alternative<PauliRotation>(g) &&
                               std::get<PauliRotation>(g).generator.weight() == 1);
                CHECK(native);
            }
            auto a = StateVector::random(8, rng());
            auto b = a;
            run_circuit(a, circ);
            for (const auto &g : compiled.gates) {
                apply_gate(b, g);
            }
            CHECK(phase_distance(a, b) < 1e-10);
            CHECK(compiled.budget.n_R + compiled.budget.n_H + compiled.budget.n_CNOT ==
                  static_cast<long>(compiled.gates.size()));
        }
    }
}

TEST_CASE("stabilization and Trotter budgets") {
    auto lat = build_torus(2, 2);
    auto prep = prepare_sector(lat, SectorSpec{2, {1, -1}, {}}, 3);
    auto b = compile(prep.report, lat);
    // one CNOT per support qubit of each of the n + 2 strings
    long support = 0;
    for (const auto &s : stabilizer_strings(lat)) {
        support += s.weight();
    }
    CHECK(b.n_CNOT == support);
    long corrections = 0;
    for (const auto &c : prep.report.chains) {
        corrections += static_cast<long>(c.paulis.size());
    }
    CHECK(b.n_R >= corrections);

    auto h = build_hamiltonian(lat, KitaevParams::uniform_field(8, -1.0, {0.0, 0.0, 0.5}));
    auto t1 = compile_trotter(h, 10, 1);
    auto t2 = compile_trotter(h, 10, 2);
    CHECK(t1.n_CNOT == 10 * 12 * 2);
    CHECK(t2.n_CNOT == 2 * t1.n_CNOT);
    CHECK(t1.n_R == 10 * (12 + 8 + 4 * 2 * 2));  // one RZ per term, an RX pair per y-bond qubit

    GateBudget total = b;
    total += t1;
    CHECK(total.n_CNOT == b.n_CNOT + t1.n_CNOT);
    CHECK(total.phases.size() == 2);
    auto j = to_json(total);
    CHECK(j["n_CNOT"] == total.n_CNOT);
    CHECK(j["phases"]["dynamics"]["cnots"] == t1.n_CNOT);
}
