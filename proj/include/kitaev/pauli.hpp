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

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kitaev {

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

char axis_char(Axis a);
Axis axis_from_char(char c);

/// An N-qubit Pauli operator i^phase * (x) sigma(x_q, z_q).
///
/// The per-qubit factor is in Hermitian form: (1,0) = X, (0,1) = Z and
/// (1,1) = Y. With that convention Y = i X Z, and the phase exponent counts
/// only the explicit prefactor, so a Hermitian string has an even exponent.
class PauliString {
  public:
    PauliString() = default;
    explicit PauliString(int num_qubits);

    static PauliString single(int num_qubits, int qubit, Axis axis);
    static PauliString on_sites(int num_qubits, std::span<const int> sites, std::span<const Axis> axes);
    static PauliString on_sites(int num_qubits, std::span<const int> sites, Axis axis);
    /// Parses "X0 Y3 Z12" with an optional leading sign "+", "-", "+i", "-i".
    static PauliString parse(int num_qubits, const std::string &text);

    int num_qubits() const noexcept {
        return num_qubits_;
    }
    /// Prefactor exponent k in i^k, in [0, 4).
    int phase_exponent() const noexcept {
        return phase_;
    }
    void set_phase_exponent(int k) noexcept {
        phase_ = ((k % 4) + 4) % 4;
    }

    bool x_bit(int q) const;
    bool z_bit(int q) const;
    /// 'I', 'X', 'Y' or 'Z'.
    char at(int q) const;
    void set(int q, Axis axis);
    void clear(int q);

    int weight() const;
    bool is_identity_up_to_phase() const;
    bool is_hermitian() const noexcept {
        return phase_ % 2 == 0;
    }
    std::vector<int> support() const;

    /// Low-64-qubit masks used by the statevector kernels.
    std::uint64_t x_mask() const;
    std::uint64_t z_mask() const;

    std::span<const std::uint64_t> x_words() const noexcept {
        return xs_;
    }
    std::span<const std::uint64_t> z_words() const noexcept {
        return zs_;
    }

    /// Human-readable form "+X3 Y7 Z12", "-i Z0", "+I".
    std::string to_string() const;

    friend bool operator==(const PauliString &a, const PauliString &b) = default;

  private:
    friend PauliString multiply(const PauliString &a, const PauliString &b);

    int num_qubits_ = 0;
    int phase_ = 0;
    std::vector<std::uint64_t> xs_;
    std::vector<std::uint64_t> zs_;
};

/// Exact group product a * b.
PauliString multiply(const PauliString &a, const PauliString &b);

/// True iff the symplectic form of a and b is even.
bool commutes(const PauliString &a, const PauliString &b);

/// Hermitian adjoint (inverse for Pauli strings).
PauliString adjoint(const PauliString &p);

struct PauliTerm {
    double coeff = 0.0;
    PauliString op;
};

using PauliSum = std::vector<PauliTerm>;

/// Sum of |coeff|, an upper bound on the spectral norm.
double terms_norm(const PauliSum &terms);

}  // namespace kitaev
