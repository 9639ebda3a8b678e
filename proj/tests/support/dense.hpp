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

// Dense reference implementations for the tests. Everything here is built
// from explicit Kronecker products and Eigen's eigensolvers so it shares no
// code with the bit-twiddling kernels under test.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/pauli.hpp"
#include "kitaev/statevector.hpp"

namespace dense {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cplx = std::complex<double>;

inline Mat single(char c) {
    Mat m(2, 2);
    const cplx i(0.0, 1.0);
    switch (c) {
    case 'X':
        m << 0, 1, 1, 0;
        break;
    case 'Y':
        m << 0, -i, i, 0;
        break;
    case 'Z':
        m << 1, 0, 0, -1;
        break;
    default:
        m << 1, 0, 0, 1;
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

// factors[q] acts on qubit q; qubit 0 is the least significant bit.
inline Mat product(const std::vector<Mat> &factors) {
    Mat out = Mat::Identity(1, 1);
    for (int q = static_cast<int>(factors.size()) - 1; q >= 0; --q) {
        out = kron(out, factors[q]);
    }
    return out;
}

inline Mat on_qubit(int n, int q, const Mat &m) {
    std::vector<Mat> f(n, single('I'));
    f[q] = m;
    return product(f);
}

inline Mat of(const kitaev::PauliString &p) {
    std::vector<Mat> f;
    for (int q = 0; q < p.num_qubits(); ++q) {
        f.push_back(single(p.at(q)));
    }
    const cplx phases[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    return phases[p.phase_exponent()] * product(f);
}

inline Mat of(const kitaev::PauliSum &h, int n) {
    const Eigen::Index d = Eigen::Index(1) << n;
    Mat out = Mat::Zero(d, d);
    for (const auto &t : h) {
        out += t.coeff * of(t.op);
    }
    return out;
}

/// exp(-i t H) for Hermitian H by eigendecomposition.
inline Mat expm(const Mat &h, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(h);
    Vec phases(eig.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::exp(cplx(0.0, -t * eig.eigenvalues()(k)));
    }
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

inline Mat projector1(int n, int q) {
    Mat p1(2, 2);
    p1 << 0, 0, 0, 1;
    return on_qubit(n, q, p1);
}

inline Mat of(const kitaev::Gate &gate, int n) {
    const Eigen::Index d = Eigen::Index(1) << n;
    if (auto *h = std::get_if<kitaev::Hadamard>(&gate)) {
        Mat m(2, 2);
        m << 1, 1, 1, -1;
        return on_qubit(n, h->qubit, m / std::sqrt(2.0));
    }
    if (auto *c = std::get_if<kitaev::Cnot>(&gate)) {
        const Mat p1 = projector1(n, c->control);
        return (Mat::Identity(d, d) - p1) + p1 * on_qubit(n, c->target, single('X'));
    }
    if (auto *p = std::get_if<kitaev::PauliGate>(&gate)) {
        return of(p->op);
    }
    if (auto *r = std::get_if<kitaev::PauliRotation>(&gate)) {
        return expm(of(r->generator), 0.5 * r->angle);
    }
    const auto &cr = std::get<kitaev::ControlledRotation>(gate);
    const Mat p1 = projector1(n, cr.control);
    const Mat rot = expm(on_qubit(n, cr.target, single(kitaev::axis_char(cr.axis))), 0.5 * cr.angle);
    return (Mat::Identity(d, d) - p1) + p1 * rot;
}

inline Vec vec(const kitaev::StateVector &s) {
    Vec v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t k = 0; k < s.dim(); ++k) {
        v(static_cast<Eigen::Index>(k)) = s[k];
    }
    return v;
}

inline kitaev::StateVector state(int n, const Vec &v) {
    std::vector<cplx> amps(v.data(), v.data() + v.size());
    return kitaev::StateVector::from_amplitudes(n, std::move(amps));
}

inline double ground_energy(const Mat &h) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(h, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

}  // namespace dense
