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

#include "kitaev/dynamics.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "kitaev/error.hpp"
#include "kitaev/stabilizer_prep.hpp"

namespace kitaev {

namespace {

constexpr int kKrylovMax = 40;
constexpr double kKrylovStepTol = 1e-13;

// Lanczos basis of span{psi, H psi, ...} with full reorthogonalization.
struct KrylovBasis {
    std::vector<StateVector> vectors;
    Eigen::MatrixXd tridiagonal;
    double tail = 0.0;  // beta_m, 0 on breakdown
};

KrylovBasis krylov(const PauliSum &h, const StateVector &start) {
    KrylovBasis kb;
    std::vector<double> alpha;
    std::vector<double> beta;
    StateVector w(start.num_qubits());
    kb.vectors.push_back(start);
    const double scale = std::max(terms_norm(h), 1e-300);
    for (int j = 0; j < kKrylovMax; ++j) {
        apply_sum(h, kb.vectors[j], w);
        double a = inner(kb.vectors[j], w).real();
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &v : kb.vectors) {
                w.axpy(-inner(v, w), v);
            }
        }
        double b = std::sqrt(w.norm_squared());
        if (b < 1e-13 * scale) {
            kb.tail = 0.0;
            break;
        }
        kb.tail = b;
        if (j + 1 == kKrylovMax) {
            break;
        }
        beta.push_back(b);
        w.scale(1.0 / b);
        kb.vectors.push_back(w);
    }
    const int m = static_cast<int>(alpha.size());
    kb.tridiagonal = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        kb.tridiagonal(i, i) = alpha[i];
        if (i + 1 < m) {
            kb.tridiagonal(i, i + 1) = kb.tridiagonal(i + 1, i) = beta[i];
        }
    }
    return kb;
}

PauliString zz_on_bond(const HoneycombTorus &lat, int bond) {
    if (bond < 0 || bond >= static_cast<int>(lat.bonds.size()) || lat.bonds[bond].axis != Axis::Z) {
        throw Error(ErrorCode::BondNotInLattice, "bond " + std::to_string(bond) + " is not a z-bond of the lattice");
    }
    PauliString p(lat.N);
    p.set(lat.bonds[bond].i, Axis::Z);
    p.set(lat.bonds[bond].j, Axis::Z);
    return p;
}

void propagate(StateVector &state, const QuenchSpec &q, Propagator propagator) {
    if (propagator == Propagator::Trotter) {
        trotter_step(state, q.hamiltonian, q.dt, q.trotter_order);
    } else {
        exact_propagate(state, q.hamiltonian, q.dt);
    }
}

}  // namespace

void trotter_step(StateVector &state, const PauliSum &hamiltonian, double dt, int order) {
    if (order == 1) {
        for (const auto &t : hamiltonian) {
            apply_pauli_rotation(state, t.op, 2.0 * t.coeff * dt);
        }
    } else if (order == 2) {
        for (const auto &t : hamiltonian) {
            apply_pauli_rotation(state, t.op, t.coeff * dt);
        }
        for (auto it = hamiltonian.rbegin(); it != hamiltonian.rend(); ++it) {
            apply_pauli_rotation(state, it->op, it->coeff * dt);
        }
    } else {
        throw Error(ErrorCode::UnsupportedGate, "Trotter order must be 1 or 2");
    }
}

void exact_propagate(StateVector &state, const PauliSum &hamiltonian, double t) {
    if (state.num_qubits() > kMaxExactPropagationQubits) {
        throw Error(ErrorCode::SizeTooLarge, "exact propagation is limited to " +
                                                 std::to_string(kMaxExactPropagationQubits) + " qubits");
    }
    double remaining = t;
    while (std::abs(remaining) > 0.0) {
        const double norm = std::sqrt(state.norm_squared());
        if (norm == 0.0) {
            return;
        }
        StateVector start = state;
        start.scale(1.0 / norm);
        KrylovBasis kb = krylov(hamiltonian, start);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(kb.tridiagonal);
        const int m = static_cast<int>(kb.vectors.size());

        // Largest tau <= remaining whose Krylov tail is negligible.
        double tau = remaining;
        Eigen::VectorXcd coeffs;
        for (;;) {
            Eigen::VectorXcd phases(m);
            for (int i = 0; i < m; ++i) {
                phases(i) = std::exp(cplx(0.0, -tau * eig.eigenvalues()(i))) * eig.eigenvectors()(0, i);
            }
            coeffs = eig.eigenvectors().cast<cplx>() * phases;
            if (kb.tail == 0.0 || kb.tail * std::abs(coeffs(m - 1)) < kKrylovStepTol) {
                break;
            }
            tau *= 0.5;
        }
        state.set_zero();
        for (int i = 0; i < m; ++i) {
            state.axpy(norm * coeffs(i), kb.vectors[i]);
        }
        remaining -= tau;
        if (std::abs(remaining) < 1e-15 * std::max(1.0, std::abs(t))) {
            break;
        }
    }
}

std::vector<CorrelatorSeries> correlators(const StateVector &gs_state, const HoneycombTorus &lat,
                                          const QuenchSpec &quench, Propagator propagator) {
    if (!(quench.dt > 0.0) || quench.steps < 0) {
        throw Error(ErrorCode::ConfigInvalid, "quench needs dt > 0 and steps >= 0");
    }
    std::vector<CorrelatorSeries> out;
    for (const auto &pair : quench.pairs) {
        const PauliString a = zz_on_bond(lat, pair.first);
        const PauliString b = zz_on_bond(lat, pair.second);
        CorrelatorSeries series;
        series.tag = pair.tag;
        series.m_second_initial = expectation(gs_state, b);

        StateVector phi = gs_state;
        StateVector chi = gs_state;
        apply_pauli(chi, b);
        for (int s = 0; s <= quench.steps; ++s) {
            const double m = matrix_element(phi, a, phi).real();
            const cplx c = matrix_element(phi, a, chi);
            series.times.push_back(s * quench.dt);
            series.m.push_back(m);
            series.c.push_back(c);
            series.S.push_back(c - m * series.m_second_initial);
            if (s == 0) {
                series.static_C = series.S.front();
            }
            if (s < quench.steps) {
                propagate(phi, quench, propagator);
                propagate(chi, quench, propagator);
            }
        }
        out.push_back(std::move(series));
    }
    return out;
}

StaticObservables static_observables(const StateVector &state, const HoneycombTorus &lat) {
    StaticObservables obs;
    double mz = 0.0;
    for (int j = 0; j < lat.N; ++j) {
        mz += expectation(state, PauliString::single(lat.N, j, Axis::Z));
    }
    obs.magnetization_z = mz / lat.N;
    const int n = lat.num_plaquettes();
    double sum = 0.0;
    for (int p = 0; p < n; ++p) {
        obs.plaquettes.push_back(expectation(state, plaquette_string(lat, p)));
        sum += obs.plaquettes.back();
    }
    obs.vortex_number = 0.5 * (n - sum);
    obs.eta = std::abs(2.0 * obs.vortex_number / n - 1.0);
    return obs;
}

std::string to_csv(const CorrelatorSeries &series) {
    std::ostringstream out;
    out.precision(17);
    out << "t,re_S,im_S,re_C,im_C,m,re_c,im_c\n";
    for (std::size_t s = 0; s < series.times.size(); ++s) {
        out << series.times[s] << ',' << series.S[s].real() << ',' << series.S[s].imag() << ','
            << series.static_C.real() << ',' << series.static_C.imag() << ',' << series.m[s] << ','
            << series.c[s].real() << ',' << series.c[s].imag() << '\n';
    }
    return out.str();
}

}  // namespace kitaev
