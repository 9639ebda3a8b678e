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

#include "kitaev/pauli.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <sstream>

#include "kitaev/error.hpp"

namespace kitaev {

namespace {

int words_for(int n) {
    return (n + 63) / 64;
}

// Exponent g such that sigma(x1,z1) * sigma(x2,z2) = i^g sigma(x1^x2, z1^z2),
// with sigma in Hermitian form (Y for x=z=1).
int product_exponent(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) {
        return 0;
    }
    if (x1 && z1) {
        return int(z2) - int(x2);
    }
    if (x1) {
        return int(z2) * (2 * int(x2) - 1);
    }
    return int(x2) * (1 - 2 * int(z2));
}

void check_same_size(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw Error(ErrorCode::SizeMismatch, "Pauli strings on " + std::to_string(a.num_qubits()) + " and " +
                                                 std::to_string(b.num_qubits()) + " qubits");
    }
}

}  // namespace

char axis_char(Axis a) {
    switch (a) {
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    return '?';
}

Axis axis_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'X': return Axis::X;
        case 'Y': return Axis::Y;
        case 'Z': return Axis::Z;
        default: throw Error(ErrorCode::IndexOutOfRange, std::string("not a Pauli axis: ") + c);
    }
}

PauliString::PauliString(int num_qubits)
    : num_qubits_(num_qubits), xs_(words_for(num_qubits), 0), zs_(words_for(num_qubits), 0) {
    if (num_qubits < 0) {
        throw Error(ErrorCode::IndexOutOfRange, "negative qubit count");
    }
}

PauliString PauliString::single(int num_qubits, int qubit, Axis axis) {
    PauliString p(num_qubits);
    p.set(qubit, axis);
    return p;
}

PauliString PauliString::on_sites(int num_qubits, std::span<const int> sites, std::span<const Axis> axes) {
    if (sites.size() != axes.size()) {
        throw Error(ErrorCode::SizeMismatch, "site and axis lists differ in length");
    }
    PauliString p(num_qubits);
    for (std::size_t k = 0; k < sites.size(); ++k) {
        p = multiply(p, single(num_qubits, sites[k], axes[k]));
    }
    return p;
}

PauliString PauliString::on_sites(int num_qubits, std::span<const int> sites, Axis axis) {
    std::vector<Axis> axes(sites.size(), axis);
    return on_sites(num_qubits, sites, axes);
}

PauliString PauliString::parse(int num_qubits, const std::string &text) {
    std::istringstream in(text);
    std::string tok;
    PauliString p(num_qubits);
    int phase = 0;
    bool first = true;
    while (in >> tok) {
        if (first && (tok[0] == '+' || tok[0] == '-')) {
            if (tok[0] == '-') {
                phase += 2;
            }
            tok.erase(0, 1);
            if (!tok.empty() && tok[0] == 'i') {
                phase += 1;
                tok.erase(0, 1);
            }
            first = false;
            if (tok.empty()) {
                continue;
            }
        }
        first = false;
        if (tok == "I") {
            continue;
        }
        if (tok.size() < 2) {
            throw Error(ErrorCode::IndexOutOfRange, "malformed Pauli token '" + tok + "'");
        }
        Axis a = axis_from_char(tok[0]);
        int q = std::stoi(tok.substr(1));
        p = multiply(p, single(num_qubits, q, a));
    }
    p.set_phase_exponent(p.phase_ + phase);
    return p;
}

bool PauliString::x_bit(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw Error(ErrorCode::QubitOutOfRange, "qubit " + std::to_string(q));
    }
    return (xs_[q / 64] >> (q % 64)) & 1u;
}

bool PauliString::z_bit(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw Error(ErrorCode::QubitOutOfRange, "qubit " + std::to_string(q));
    }
    return (zs_[q / 64] >> (q % 64)) & 1u;
}

char PauliString::at(int q) const {
    bool x = x_bit(q);
    bool z = z_bit(q);
    if (x && z) {
        return 'Y';
    }
    if (x) {
        return 'X';
    }
    return z ? 'Z' : 'I';
}

void PauliString::set(int q, Axis axis) {
    if (q < 0 || q >= num_qubits_) {
        throw Error(ErrorCode::QubitOutOfRange, "qubit " + std::to_string(q) + " on " + std::to_string(num_qubits_));
    }
    std::uint64_t bit = std::uint64_t{1} << (q % 64);
    xs_[q / 64] &= ~bit;
    zs_[q / 64] &= ~bit;
    if (axis != Axis::Z) {
        xs_[q / 64] |= bit;
    }
    if (axis != Axis::X) {
        zs_[q / 64] |= bit;
    }
}

void PauliString::clear(int q) {
    if (q < 0 || q >= num_qubits_) {
        throw Error(ErrorCode::QubitOutOfRange, "qubit " + std::to_string(q));
    }
    std::uint64_t bit = std::uint64_t{1} << (q % 64);
    xs_[q / 64] &= ~bit;
    zs_[q / 64] &= ~bit;
}

int PauliString::weight() const {
    int w = 0;
    for (std::size_t k = 0; k < xs_.size(); ++k) {
        w += std::popcount(xs_[k] | zs_[k]);
    }
    return w;
}

bool PauliString::is_identity_up_to_phase() const {
    return weight() == 0;
}

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (int q = 0; q < num_qubits_; ++q) {
        if (at(q) != 'I') {
            out.push_back(q);
        }
    }
    return out;
}

std::uint64_t PauliString::x_mask() const {
    return xs_.empty() ? 0 : xs_[0];
}

std::uint64_t PauliString::z_mask() const {
    return zs_.empty() ? 0 : zs_[0];
}

std::string PauliString::to_string() const {
    static const char *prefixes[4] = {"+", "+i", "-", "-i"};
    std::string out = prefixes[phase_];
    bool any = false;
    for (int q = 0; q < num_qubits_; ++q) {
        char c = at(q);
        if (c == 'I') {
            continue;
        }
        if (any || phase_ % 2 == 1) {
            out += ' ';
        }
        out += c;
        out += std::to_string(q);
        any = true;
    }
    if (!any) {
        out += (phase_ % 2 == 1) ? " I" : "I";
    }
    return out;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    check_same_size(a, b);
    PauliString out(a.num_qubits_);
    int exponent = a.phase_ + b.phase_;
    for (std::size_t w = 0; w < a.xs_.size(); ++w) {
        std::uint64_t touched = (a.xs_[w] | a.zs_[w]) & (b.xs_[w] | b.zs_[w]);
        while (touched) {
            int bit = std::countr_zero(touched);
            touched &= touched - 1;
            exponent += product_exponent((a.xs_[w] >> bit) & 1u, (a.zs_[w] >> bit) & 1u, (b.xs_[w] >> bit) & 1u,
                                         (b.zs_[w] >> bit) & 1u);
        }
        out.xs_[w] = a.xs_[w] ^ b.xs_[w];
        out.zs_[w] = a.zs_[w] ^ b.zs_[w];
    }
    out.set_phase_exponent(exponent);
    return out;
}

bool commutes(const PauliString &a, const PauliString &b) {
    check_same_size(a, b);
    int parity = 0;
    auto ax = a.x_words();
    auto az = a.z_words();
    auto bx = b.x_words();
    auto bz = b.z_words();
    for (std::size_t w = 0; w < ax.size(); ++w) {
        parity ^= std::popcount((ax[w] & bz[w]) ^ (az[w] & bx[w])) & 1;
    }
    return parity == 0;
}

PauliString adjoint(const PauliString &p) {
    PauliString out = p;
    out.set_phase_exponent(-p.phase_exponent());
    return out;
}

double terms_norm(const PauliSum &terms) {
    double s = 0.0;
    for (const auto &t : terms) {
        s += std::abs(t.coeff);
    }
    return s;
}

}  // namespace kitaev
