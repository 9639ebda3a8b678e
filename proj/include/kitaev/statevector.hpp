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

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "kitaev/pauli.hpp"

namespace kitaev {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 26;

struct Hadamard {
    int qubit = 0;
};

struct Cnot {
    int control = 0;
    int target = 0;
};

/// Applies a Pauli string as an operator (phase included).
struct PauliGate {
    PauliString op;
};

/// exp(-i angle P / 2) for a Hermitian Pauli string P.
struct PauliRotation {
    PauliString generator;
    double angle = 0.0;
};

/// |0><0|_c (x) 1 + |1><1|_c (x) exp(-i angle P_t / 2), i.e. a rotation of
/// the target about axis, conditioned on the control being |1>. Its
/// generator is |1><1|_c (x) P_t.
struct ControlledRotation {
    int control = 0;
    int target = 0;
    Axis axis = Axis::X;
    double angle = 0.0;
};

using Gate = std::variant<Hadamard, Cnot, PauliGate, PauliRotation, ControlledRotation>;

/// Dense 2^N amplitude vector, double precision, basis index bit q = qubit q.
class StateVector {
  public:
    /// |0...0>.
    explicit StateVector(int num_qubits);

    static StateVector basis_state(int num_qubits, std::uint64_t index);
    static StateVector from_amplitudes(int num_qubits, std::vector<cplx> amplitudes);
    /// Haar-like random normalized state (Gaussian components).
    static StateVector random(int num_qubits, std::uint64_t seed);

    int num_qubits() const noexcept {
        return num_qubits_;
    }
    std::size_t dim() const noexcept {
        return amps_.size();
    }
    std::span<cplx> amplitudes() noexcept {
        return amps_;
    }
    std::span<const cplx> amplitudes() const noexcept {
        return amps_;
    }
    cplx &operator[](std::size_t i) noexcept {
        return amps_[i];
    }
    const cplx &operator[](std::size_t i) const noexcept {
        return amps_[i];
    }

    double norm_squared() const;
    /// Scales to unit norm and returns the norm before scaling.
    double normalize();
    void scale(cplx factor);
    /// this += factor * other
    void axpy(cplx factor, const StateVector &other);
    void set_zero();

  private:
    int num_qubits_ = 0;
    std::vector<cplx> amps_;
};

void apply_gate(StateVector &state, const Gate &gate);
void apply_inverse(StateVector &state, const Gate &gate);

void apply_hadamard(StateVector &state, int qubit);
void apply_cnot(StateVector &state, int control, int target);
void apply_pauli(StateVector &state, const PauliString &op);
/// exp(-i angle P / 2) restricted to basis states where every bit in
/// control_mask is set (P must not act on those bits).
void apply_pauli_rotation(StateVector &state, const PauliString &op, double angle, std::uint64_t control_mask = 0);

/// out = sum_t coeff_t P_t |in>.
void apply_sum(const PauliSum &terms, const StateVector &in, StateVector &out);

/// <bra| G |ket> where G = P on the subspace selected by control_mask, 0 elsewhere.
cplx matrix_element(const StateVector &bra, const PauliString &op, const StateVector &ket,
                    std::uint64_t control_mask = 0);

/// sum_t coeff_t <psi|P_t|psi>; the state must be normalized to 1e-8.
double expectation(const StateVector &state, const PauliSum &terms);
double expectation(const StateVector &state, const PauliString &op);

/// Applies (1 + eigenvalue * S)/2, renormalizes, and returns the branch
/// probability measured before the projection.
double project(StateVector &state, const PauliString &stabilizer, int eigenvalue);

cplx inner(const StateVector &a, const StateVector &b);
double fidelity(const StateVector &a, const StateVector &b);

/// Qubits a gate touches (for range checks and compilation).
std::vector<int> gate_qubits(const Gate &gate);

/// Little-endian snapshot: "KQSV1", uint32 qubit count, interleaved re/im f64.
void save_snapshot(const StateVector &state, const std::filesystem::path &path);
StateVector load_snapshot(const std::filesystem::path &path);

}  // namespace kitaev
