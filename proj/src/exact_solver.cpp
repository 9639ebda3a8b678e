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

#include "kitaev/exact_solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "kitaev/error.hpp"

namespace kitaev {

namespace {

// Classical Gram-Schmidt against orthonormal vectors, repeated once when
// the first pass removed most of the norm.
void orthogonalize(StateVector &w, const std::vector<StateVector> &basis) {
    if (basis.empty()) {
        return;
    }
    const double before = w.norm_squared();
    for (const auto &b : basis) {
        w.axpy(-inner(b, w), b);
    }
    if (w.norm_squared() < 0.5 * before) {
        for (const auto &b : basis) {
            w.axpy(-inner(b, w), b);
        }
    }
}

class CountingOperator {
  public:
    explicit CountingOperator(const PauliSum &h) : h_(h) {
    }

    void apply(const StateVector &in, StateVector &out) {
        apply_sum(h_, in, out);
        ++matvecs;
    }

    long matvecs = 0;

  private:
    const PauliSum &h_;
};

// Sector filtering relies on H leaving the sector invariant, so the Krylov
// space only needs re-projecting at restarts to scrub roundoff.
void check_sector(const PauliSum &h, const std::vector<SectorConstraint> &sector) {
    for (const auto &c : sector) {
        if (c.sign != 1 && c.sign != -1) {
            throw Error(ErrorCode::ConfigInvalid, "sector sign must be +1 or -1");
        }
        for (const auto &t : h) {
            if (!commutes(t.op, c.op)) {
                throw Error(ErrorCode::ConfigInvalid,
                            "sector operator " + c.op.to_string() + " does not commute with " + t.op.to_string());
            }
        }
    }
}

}  // namespace

void apply_sector_projector(StateVector &state, const std::vector<SectorConstraint> &sector) {
    if (sector.empty()) {
        return;
    }
    StateVector flipped = state;
    for (const auto &c : sector) {
        flipped = state;
        apply_pauli(flipped, c.op);
        state.axpy(static_cast<double>(c.sign), flipped);
        state.scale(0.5);
    }
}

SpectrumResult ground_subspace(const PauliSum &hamiltonian, int num_qubits, int k, double degeneracy_tol,
                               const LanczosOptions &options) {
    if (k < 1) {
        throw Error(ErrorCode::IndexOutOfRange, "k must be positive");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    const double scale = std::max(terms_norm(hamiltonian), 1e-300);
    const double tol = options.residual_tol * scale;
    // Keep the Krylov basis under ~512 MiB.
    const std::size_t vec_bytes = dim * sizeof(cplx);
    int m = std::min<int>(options.krylov_dim, static_cast<int>(std::min<std::size_t>(dim, 1u << 20)));
    m = std::max(2, std::min<int>(m, static_cast<int>((std::size_t{512} << 20) / vec_bytes)));

    check_sector(hamiltonian, options.sector);
    CountingOperator op(hamiltonian);
    SpectrumResult result;
    result.degeneracy_tol = degeneracy_tol;
    StateVector w(num_qubits);

    for (int index = 0;; ++index) {
        bool want_more = index < k;
        if (!want_more && options.extend_degenerate && !result.eigenvalues.empty() &&
            result.eigenvalues.back() - result.eigenvalues.front() < degeneracy_tol) {
            want_more = true;
        }
        if (!want_more || result.eigenstates.size() >= dim) {
            break;
        }

        StateVector v = StateVector::random(num_qubits, options.seed + 7919u * static_cast<std::uint64_t>(index));
        apply_sector_projector(v, options.sector);
        orthogonalize(v, result.eigenstates);
        if (v.normalize() < 1e-8) {
            break;  // the (sector) space is exhausted
        }

        bool converged = false;
        double eigenvalue = 0.0;
        for (int restart = 0; restart < options.max_restarts && !converged; ++restart) {
            std::vector<StateVector> basis{v};
            std::vector<double> alpha;
            std::vector<double> beta;
            bool breakdown = false;
            for (int j = 0; j < m; ++j) {
                op.apply(basis[j], w);
                double a = inner(basis[j], w).real();
                alpha.push_back(a);
                w.axpy(-a, basis[j]);
                if (j > 0) {
                    w.axpy(-beta[j - 1], basis[j - 1]);
                }
                orthogonalize(w, basis);
                orthogonalize(w, result.eigenstates);
                double b = std::sqrt(w.norm_squared());
                if (b < 1e-12 * scale) {
                    breakdown = true;
                    break;
                }
                if (j + 1 == m) {
                    break;
                }
                beta.push_back(b);
                w.scale(1.0 / b);
                basis.push_back(w);
            }
            const int size = static_cast<int>(alpha.size());
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
            for (int i = 0; i < size; ++i) {
                t(i, i) = alpha[i];
                if (i + 1 < size) {
                    t(i, i + 1) = t(i + 1, i) = beta[i];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
            eigenvalue = eig.eigenvalues()(0);
            StateVector ritz(num_qubits);
            ritz.set_zero();
            for (int i = 0; i < size; ++i) {
                ritz.axpy(eig.eigenvectors()(i, 0), basis[i]);
            }
            apply_sector_projector(ritz, options.sector);
            orthogonalize(ritz, result.eigenstates);
            ritz.normalize();

            op.apply(ritz, w);
            eigenvalue = inner(ritz, w).real();
            w.axpy(-eigenvalue, ritz);
            double residual = std::sqrt(w.norm_squared());
            v = std::move(ritz);
            converged = residual <= tol || (breakdown && residual <= 10 * tol);
        }
        if (!converged) {
            throw Error(ErrorCode::NoConvergence,
                        "eigenpair " + std::to_string(index) + " did not converge in " +
                            std::to_string(options.max_restarts) + " restarts");
        }
        result.eigenvalues.push_back(eigenvalue);
        result.eigenstates.push_back(std::move(v));
    }

    // Deflation can return a cluster slightly out of order; sort pairs.
    std::vector<std::size_t> order(result.eigenvalues.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return result.eigenvalues[a] < result.eigenvalues[b]; });
    SpectrumResult sorted;
    sorted.degeneracy_tol = degeneracy_tol;
    for (std::size_t i : order) {
        sorted.eigenvalues.push_back(result.eigenvalues[i]);
        sorted.eigenstates.push_back(std::move(result.eigenstates[i]));
    }
    sorted.degeneracy = static_cast<int>(
        std::count_if(sorted.eigenvalues.begin(), sorted.eigenvalues.end(),
                      [&](double e) { return e - sorted.eigenvalues.front() < degeneracy_tol; }));
    sorted.matvecs = op.matvecs;
    return sorted;
}

StateVector imaginary_time_gs(const PauliSum &hamiltonian, const StateVector &initial_state, double dtau,
                              long max_steps, double tol) {
    if (dtau <= 0.0) {
        dtau = 1.0 / std::max(terms_norm(hamiltonian), 1e-300);
    }
    StateVector psi = initial_state;
    if (psi.normalize() < 1e-300) {
        throw Error(ErrorCode::StalledConvergence, "zero initial state");
    }
    StateVector h_psi(psi.num_qubits());
    double previous = 0.0;
    for (long step = 0; step < max_steps; ++step) {
        apply_sum(hamiltonian, psi, h_psi);
        double energy = inner(psi, h_psi).real();
        if (step > 0 && std::abs(energy - previous) < tol) {
            return psi;
        }
        previous = energy;
        psi.axpy(-dtau, h_psi);
        if (psi.normalize() < 1e-300) {
            throw Error(ErrorCode::StalledConvergence, "state vanished during propagation");
        }
    }
    throw Error(ErrorCode::StalledConvergence,
                "energy still moving after " + std::to_string(max_steps) + " imaginary-time steps");
}

double subspace_fidelity(const SpectrumResult &spectrum, const StateVector &state) {
    double f = 0.0;
    for (int i = 0; i < spectrum.degeneracy; ++i) {
        f += std::norm(inner(spectrum.eigenstates[i], state));
    }
    return f;
}

StateVector project_to_ground_space(const SpectrumResult &spectrum, const StateVector &state) {
    StateVector out(state.num_qubits());
    out.set_zero();
    for (int i = 0; i < spectrum.degeneracy; ++i) {
        out.axpy(inner(spectrum.eigenstates[i], state), spectrum.eigenstates[i]);
    }
    if (out.normalize() < 1e-12) {
        throw Error(ErrorCode::ZeroProbabilityBranch, "state has no weight in the ground space");
    }
    return out;
}

nlohmann::json to_json(const SpectrumResult &spectrum) {
    return {
        {"eigenvalues", spectrum.eigenvalues},
        {"degeneracy", spectrum.degeneracy},
        {"degeneracy_tol", spectrum.degeneracy_tol},
        {"matvecs", spectrum.matvecs},
    };
}

}  // namespace kitaev
