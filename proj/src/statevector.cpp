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

#include "kitaev/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "kitaev/error.hpp"
#include "kitaev/random.hpp"

namespace kitaev {

namespace {

constexpr cplx kI{0.0, 1.0};

// P|j> = coef * (-1)^{popcount(j & z)} |j ^ x>, with coef = i^{phase + #Y}.
struct PauliKernel {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    cplx coef{1.0, 0.0};
};

cplx i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

inline double parity_sign(std::uint64_t v) {
    return (std::popcount(v) & 1) ? -1.0 : 1.0;
}

PauliKernel kernel_for(const StateVector &state, const PauliString &op) {
    if (op.num_qubits() != state.num_qubits()) {
        throw Error(ErrorCode::SizeMismatch, "operator on " + std::to_string(op.num_qubits()) +
                                                 " qubits applied to a " + std::to_string(state.num_qubits()) +
                                                 "-qubit state");
    }
    PauliKernel k;
    k.x = op.x_mask();
    k.z = op.z_mask();
    k.coef = i_power(op.phase_exponent() + std::popcount(k.x & k.z));
    return k;
}

void check_qubit(const StateVector &state, int q) {
    if (q < 0 || q >= state.num_qubits()) {
        throw Error(ErrorCode::QubitOutOfRange,
                    "qubit " + std::to_string(q) + " on a " + std::to_string(state.num_qubits()) + "-qubit state");
    }
}

std::uint64_t high_bit(std::uint64_t x) {
    return std::uint64_t{1} << (63 - std::countl_zero(x));
}

void check_normalized(const StateVector &state) {
    double n = state.norm_squared();
    if (std::abs(n - 1.0) > 1e-8) {
        throw Error(ErrorCode::NotNormalized, "squared norm " + std::to_string(n));
    }
}

PauliString controlled_target(const StateVector &state, const ControlledRotation &g) {
    check_qubit(state, g.control);
    check_qubit(state, g.target);
    if (g.control == g.target) {
        throw Error(ErrorCode::QubitOutOfRange, "control equals target");
    }
    return PauliString::single(state.num_qubits(), g.target, g.axis);
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw Error(ErrorCode::SizeTooLarge, std::to_string(num_qubits) + " qubits exceeds the " +
                                                 std::to_string(kMaxQubits) + "-qubit cap");
    }
    amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
    StateVector s(num_qubits);
    if (index >= s.dim()) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index));
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<cplx> amplitudes) {
    StateVector s(num_qubits);
    if (amplitudes.size() != s.dim()) {
        throw Error(ErrorCode::SizeMismatch, "expected " + std::to_string(s.dim()) + " amplitudes, got " +
                                                 std::to_string(amplitudes.size()));
    }
    s.amps_ = std::move(amplitudes);
    return s;
}

StateVector StateVector::random(int num_qubits, std::uint64_t seed) {
    StateVector s(num_qubits);
    Rng rng(seed);
    for (auto &a : s.amps_) {
        // Box-Muller keeps the stream platform independent.
        double u1 = 1.0 - uniform01(rng);
        double u2 = uniform01(rng);
        double r = std::sqrt(-2.0 * std::log(u1));
        a = {r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2)};
    }
    s.normalize();
    return s;
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

double StateVector::normalize() {
    double n = std::sqrt(norm_squared());
    if (n > 0.0) {
        double inv = 1.0 / n;
        for (auto &a : amps_) {
            a *= inv;
        }
    }
    return n;
}

void StateVector::scale(cplx factor) {
    for (auto &a : amps_) {
        a *= factor;
    }
}

void StateVector::axpy(cplx factor, const StateVector &other) {
    if (other.dim() != dim()) {
        throw Error(ErrorCode::SizeMismatch, "axpy between states of different size");
    }
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] += factor * other.amps_[i];
    }
}

void StateVector::set_zero() {
    std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
}

void apply_hadamard(StateVector &state, int qubit) {
    check_qubit(state, qubit);
    const std::size_t stride = std::size_t{1} << qubit;
    const double r = M_SQRT1_2;
    auto a = state.amplitudes();
    for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            cplx u = a[k];
            cplx v = a[k + stride];
            a[k] = r * (u + v);
            a[k + stride] = r * (u - v);
        }
    }
}

void apply_cnot(StateVector &state, int control, int target) {
    check_qubit(state, control);
    check_qubit(state, target);
    if (control == target) {
        throw Error(ErrorCode::QubitOutOfRange, "CNOT control equals target");
    }
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    auto a = state.amplitudes();
    for (std::size_t j = 0; j < a.size(); ++j) {
        if ((j & cbit) && !(j & tbit)) {
            std::swap(a[j], a[j | tbit]);
        }
    }
}

void apply_pauli(StateVector &state, const PauliString &op) {
    const PauliKernel k = kernel_for(state, op);
    auto a = state.amplitudes();
    if (k.x == 0) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            a[j] *= k.coef * parity_sign(j & k.z);
        }
        return;
    }
    const std::uint64_t hb = high_bit(k.x);
    for (std::size_t base = 0; base < a.size(); base += 2 * hb) {
        for (std::size_t j = base; j < base + hb; ++j) {
            const std::size_t m = j ^ k.x;
            cplx u = a[j];
            cplx v = a[m];
            a[j] = k.coef * parity_sign(m & k.z) * v;
            a[m] = k.coef * parity_sign(j & k.z) * u;
        }
    }
}

void apply_pauli_rotation(StateVector &state, const PauliString &op, double angle, std::uint64_t control_mask) {
    const PauliKernel k = kernel_for(state, op);
    if (!op.is_hermitian()) {
        throw Error(ErrorCode::UnsupportedGate, "rotation generator " + op.to_string() + " is not Hermitian");
    }
    if ((k.x | k.z) & control_mask) {
        throw Error(ErrorCode::QubitOutOfRange, "rotation generator overlaps its control");
    }
    const double c = std::cos(angle / 2);
    const cplx ms = -kI * std::sin(angle / 2) * k.coef;
    auto a = state.amplitudes();
    if (k.x == 0) {
        // Diagonal: each amplitude picks up c - i s (+-1).
        const cplx plus = c + ms;
        const cplx minus = c - ms;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if ((j & control_mask) != control_mask) {
                continue;
            }
            a[j] *= (std::popcount(j & k.z) & 1) ? minus : plus;
        }
        return;
    }
    const std::uint64_t hb = high_bit(k.x);
    for (std::size_t base = 0; base < a.size(); base += 2 * hb) {
        for (std::size_t j = base; j < base + hb; ++j) {
            if ((j & control_mask) != control_mask) {
                continue;
            }
            const std::size_t m = j ^ k.x;
            cplx u = a[j];
            cplx v = a[m];
            a[j] = c * u + ms * parity_sign(m & k.z) * v;
            a[m] = c * v + ms * parity_sign(j & k.z) * u;
        }
    }
}

void apply_gate(StateVector &state, const Gate &gate) {
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Hadamard>) {
                apply_hadamard(state, g.qubit);
            } else if constexpr (std::is_same_v<T, Cnot>) {
                apply_cnot(state, g.control, g.target);
            } else if constexpr (std::is_same_v<T, PauliGate>) {
                apply_pauli(state, g.op);
            } else if constexpr (std::is_same_v<T, PauliRotation>) {
                apply_pauli_rotation(state, g.generator, g.angle);
            } else {
                auto target = controlled_target(state, g);
                apply_pauli_rotation(state, target, g.angle, std::uint64_t{1} << g.control);
            }
        },
        gate);
}

void apply_inverse(StateVector &state, const Gate &gate) {
    std::visit(
        [&](const auto &g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Hadamard>) {
                apply_hadamard(state, g.qubit);
            } else if constexpr (std::is_same_v<T, Cnot>) {
                apply_cnot(state, g.control, g.target);
            } else if constexpr (std::is_same_v<T, PauliGate>) {
                apply_pauli(state, adjoint(g.op));
            } else if constexpr (std::is_same_v<T, PauliRotation>) {
                apply_pauli_rotation(state, g.generator, -g.angle);
            } else {
                auto target = controlled_target(state, g);
                apply_pauli_rotation(state, target, -g.angle, std::uint64_t{1} << g.control);
            }
        },
        gate);
}

void apply_sum(const PauliSum &terms, const StateVector &in, StateVector &out) {
    if (out.dim() != in.dim()) {
        throw Error(ErrorCode::SizeMismatch, "apply_sum output buffer has the wrong size");
    }
    out.set_zero();
    auto src = in.amplitudes();
    auto dst = out.amplitudes();
    for (const auto &t : terms) {
        const PauliKernel k = kernel_for(in, t.op);
        const cplx f = t.coeff * k.coef;
        if (k.x == 0) {
            for (std::size_t j = 0; j < src.size(); ++j) {
                dst[j] += f * parity_sign(j & k.z) * src[j];
            }
        } else {
            for (std::size_t j = 0; j < src.size(); ++j) {
                const std::size_t m = j ^ k.x;
                dst[j] += f * parity_sign(m & k.z) * src[m];
            }
        }
    }
}

cplx matrix_element(const StateVector &bra, const PauliString &op, const StateVector &ket,
                    std::uint64_t control_mask) {
    if (bra.dim() != ket.dim()) {
        throw Error(ErrorCode::SizeMismatch, "matrix element between states of different size");
    }
    const PauliKernel k = kernel_for(ket, op);
    auto b = bra.amplitudes();
    auto a = ket.amplitudes();
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < a.size(); ++j) {
        if ((j & control_mask) != control_mask) {
            continue;
        }
        const std::size_t m = j ^ k.x;
        acc += std::conj(b[j]) * (parity_sign(m & k.z) * a[m]);
    }
    return k.coef * acc;
}

double expectation(const StateVector &state, const PauliSum &terms) {
    check_normalized(state);
    double e = 0.0;
    for (const auto &t : terms) {
        e += t.coeff * matrix_element(state, t.op, state).real();
    }
    return e;
}

double expectation(const StateVector &state, const PauliString &op) {
    check_normalized(state);
    return matrix_element(state, op, state).real();
}

double project(StateVector &state, const PauliString &stabilizer, int eigenvalue) {
    if (eigenvalue != 1 && eigenvalue != -1) {
        throw Error(ErrorCode::IndexOutOfRange, "eigenvalue must be +1 or -1");
    }
    if (!stabilizer.is_hermitian()) {
        throw Error(ErrorCode::UnsupportedGate, "projector from a non-Hermitian string");
    }
    const double norm0 = state.norm_squared();
    const double s = matrix_element(state, stabilizer, state).real() / norm0;
    const double probability = std::clamp(0.5 * (1.0 + eigenvalue * s), 0.0, 1.0);
    if (probability < 1e-12) {
        throw Error(ErrorCode::ZeroProbabilityBranch,
                    "branch " + std::to_string(eigenvalue) + " of " + stabilizer.to_string());
    }
    const PauliKernel k = kernel_for(state, stabilizer);
    const cplx e = static_cast<double>(eigenvalue) * k.coef;
    auto a = state.amplitudes();
    if (k.x == 0) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            a[j] *= 0.5 * (1.0 + e * parity_sign(j & k.z));
        }
    } else {
        const std::uint64_t hb = high_bit(k.x);
        for (std::size_t base = 0; base < a.size(); base += 2 * hb) {
            for (std::size_t j = base; j < base + hb; ++j) {
                const std::size_t m = j ^ k.x;
                cplx u = a[j];
                cplx v = a[m];
                a[j] = 0.5 * (u + e * parity_sign(m & k.z) * v);
                a[m] = 0.5 * (v + e * parity_sign(j & k.z) * u);
            }
        }
    }
    state.normalize();
    return probability;
}

cplx inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::SizeMismatch, "inner product between states of different size");
    }
    cplx acc{0.0, 0.0};
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t j = 0; j < x.size(); ++j) {
        acc += std::conj(x[j]) * y[j];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(inner(a, b));
}

std::vector<int> gate_qubits(const Gate &gate) {
    return std::visit(
        [](const auto &g) -> std::vector<int> {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Hadamard>) {
                return {g.qubit};
            } else if constexpr (std::is_same_v<T, Cnot>) {
                return {g.control, g.target};
            } else if constexpr (std::is_same_v<T, PauliGate>) {
                return g.op.support();
            } else if constexpr (std::is_same_v<T, PauliRotation>) {
                return g.generator.support();
            } else {
                return {g.control, g.target};
            }
        },
        gate);
}

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

void save_snapshot(const StateVector &state, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    }
    out.write("KQSV1", 5);
    std::uint32_t n = static_cast<std::uint32_t>(state.num_qubits());
    out.write(reinterpret_cast<const char *>(&n), sizeof n);
    auto a = state.amplitudes();
    out.write(reinterpret_cast<const char *>(a.data()), static_cast<std::streamsize>(a.size() * sizeof(cplx)));
    if (!out) {
        throw Error(ErrorCode::IoError, "short write to " + path.string());
    }
}

StateVector load_snapshot(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot read " + path.string());
    }
    char magic[5];
    in.read(magic, 5);
    if (!in || std::memcmp(magic, "KQSV1", 5) != 0) {
        throw Error(ErrorCode::IoError, path.string() + " is not a KQSV1 snapshot");
    }
    std::uint32_t n = 0;
    in.read(reinterpret_cast<char *>(&n), sizeof n);
    if (!in || n > kMaxQubits) {
        throw Error(ErrorCode::IoError, "bad qubit count in " + path.string());
    }
    std::vector<cplx> amps(std::size_t{1} << n);
    in.read(reinterpret_cast<char *>(amps.data()), static_cast<std::streamsize>(amps.size() * sizeof(cplx)));
    if (!in) {
        throw Error(ErrorCode::IoError, "truncated snapshot " + path.string());
    }
    return StateVector::from_amplitudes(static_cast<int>(n), std::move(amps));
}

}  // namespace kitaev
