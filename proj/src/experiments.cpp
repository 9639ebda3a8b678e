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

#include "kitaev/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "kitaev/error.hpp"
#include "kitaev/manifest.hpp"
#include "kitaev/random.hpp"

namespace kitaev {

namespace {

using nlohmann::json;

std::string num(double x) {
    if (std::isnan(x)) {
        return "";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string brief(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

void say(const LogFn &log, const std::string &msg) {
    if (log) {
        log(msg);
    }
}

int resolve_workers(int requested, int jobs) {
    int w = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(w, 1, std::max(1, jobs));
}

bool is_zero(const std::array<double, 3> &h) {
    return h[0] == 0.0 && h[1] == 0.0 && h[2] == 0.0;
}

std::array<double, 3> scaled(const std::array<double, 3> &dir, double h) {
    return {dir[0] * h, dir[1] * h, dir[2] * h};
}

json sector_json(const SectorSpec &s) {
    json j{{"vortex_count", s.vortex_count}, {"loop_signs", s.loop_signs}};
    if (!s.plaquette_signs.empty()) {
        j["plaquette_signs"] = s.plaquette_signs;
    }
    return j;
}

json coupling_json(const CouplingSpec &c) {
    return {{"label", c.label}, {"Jx", c.Jx}, {"Jy", c.Jy}, {"Jz", c.Jz}};
}

json spectrum_json(const SpectrumResult &s) {
    return {{"eigenvalues", s.eigenvalues},
            {"degeneracy", s.degeneracy},
            {"degeneracy_tol", s.degeneracy_tol},
            {"ground_energy", s.ground_energy()}};
}

std::string trace_csv(const TrainingTrace &trace) {
    std::string out = "epoch,energy,infidelity,grad_norm,symmetry_drift\n";
    for (const auto &r : trace.records) {
        out += std::to_string(r.epoch) + "," + num(r.energy) + "," + num(r.infidelity) + "," + num(r.grad_norm) +
               "," + num(r.symmetry_drift) + "\n";
    }
    return out;
}

bool meets(const TrainingTrace &t, double e_gs, const Thresholds &th) {
    const double inf = t.final_infidelity();
    return !std::isnan(inf) && inf <= th.infidelity && t.final_energy() - e_gs <= th.relative_energy * std::abs(e_gs);
}

double min_energy(const TrainingTrace &t) {
    double m = t.records.front().energy;
    for (const auto &r : t.records) {
        m = std::min(m, r.energy);
    }
    return m;
}

double max_drift(const TrainingTrace &t) {
    double m = 0.0;
    for (const auto &r : t.records) {
        if (!std::isnan(r.symmetry_drift)) {
            m = std::max(m, r.symmetry_drift);
        }
    }
    return m;
}

}  // namespace

void parallel_for(int count, int workers, const std::function<void(int)> &fn) {
    workers = resolve_workers(workers, count);
    if (workers <= 1) {
        for (int k = 0; k < count; ++k) {
            fn(k);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int k = next++; k < count; k = next++) {
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

PauliSum hamiltonian_for(const HoneycombTorus &lat, const CouplingSpec &coupling, const std::array<double, 3> &field) {
    KitaevParams p;
    p.Jx = coupling.Jx;
    p.Jy = coupling.Jy;
    p.Jz = coupling.Jz;
    if (!is_zero(field)) {
        p.field.assign(lat.N, field);
    }
    return build_hamiltonian(lat, p);
}

LanczosOptions lanczos_options(const OracleSpec &spec) {
    LanczosOptions o;
    o.krylov_dim = spec.krylov_dim;
    o.residual_tol = spec.residual_tol;
    return o;
}

SpectrumResult solve_oracle(const PauliSum &hamiltonian, int num_qubits, const OracleSpec &spec) {
    return ground_subspace(hamiltonian, num_qubits, 1, spec.degeneracy_tol, lanczos_options(spec));
}

std::vector<SectorPiece> ground_sectors(const SpectrumResult &spectrum, const HoneycombTorus &lat) {
    const int g = spectrum.degeneracy;
    const auto stabilizers = stabilizer_strings(lat);
    const int ns = static_cast<int>(stabilizers.size());
    std::vector<Eigen::MatrixXcd> mats(ns, Eigen::MatrixXcd::Zero(g, g));
    StateVector tmp(lat.N);
    for (int s = 0; s < ns; ++s) {
        for (int b = 0; b < g; ++b) {
            tmp = spectrum.eigenstates[b];
            apply_pauli(tmp, stabilizers[s]);
            for (int a = 0; a < g; ++a) {
                mats[s](a, b) = inner(spectrum.eigenstates[a], tmp);
            }
        }
    }
    // A generic combination of commuting matrices has the joint eigenbasis.
    Rng rng(0xc0ffee);
    Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(g, g);
    for (int s = 0; s < ns; ++s) {
        mix += uniform(rng, 0.5, 1.5) * mats[s];
    }
    mix = 0.5 * (mix + mix.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(mix);

    const int n = lat.num_plaquettes();
    std::map<std::vector<int>, int> counts;
    for (int k = 0; k < g; ++k) {
        Eigen::VectorXcd u = eig.eigenvectors().col(k);
        std::vector<int> signs(ns);
        for (int s = 0; s < ns; ++s) {
            const double v = (u.adjoint() * mats[s] * u)(0, 0).real();
            signs[s] = v >= 0.0 ? 1 : -1;
        }
        ++counts[signs];
    }
    std::vector<SectorPiece> out;
    for (const auto &[signs, count] : counts) {
        SectorPiece piece;
        piece.sector.plaquette_signs.assign(signs.begin(), signs.begin() + n);
        piece.sector.vortex_count = static_cast<int>(std::count(signs.begin(), signs.begin() + n, -1));
        piece.sector.loop_signs = {signs[n], signs[n + 1]};
        piece.multiplicity = count;
        out.push_back(std::move(piece));
    }
    std::sort(out.begin(), out.end(), [](const SectorPiece &a, const SectorPiece &b) {
        if (a.sector.vortex_count != b.sector.vortex_count) {
            return a.sector.vortex_count < b.sector.vortex_count;
        }
        if (a.sector.loop_signs != b.sector.loop_signs) {
            return a.sector.loop_signs > b.sector.loop_signs;
        }
        return a.sector.plaquette_signs > b.sector.plaquette_signs;
    });
    return out;
}

std::vector<SectorEnergy> scan_sectors(const HoneycombTorus &lat, const PauliSum &hamiltonian,
                                       const OracleSpec &spec) {
    const int n = lat.num_plaquettes();
    const auto stabilizers = stabilizer_strings(lat);
    std::vector<SectorEnergy> out;
    // The plaquette product is the identity, so only even vortex patterns exist.
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) % 2 != 0) {
            continue;
        }
        for (int loops = 0; loops < 4; ++loops) {
            SectorSpec sector;
            sector.loop_signs = {(loops & 2) ? -1 : 1, (loops & 1) ? -1 : 1};
            LanczosOptions opts = lanczos_options(spec);
            opts.extend_degenerate = false;
            for (int p = 0; p < n; ++p) {
                const int s = (mask >> p) & 1 ? -1 : 1;
                sector.plaquette_signs.push_back(s);
                opts.sector.push_back({stabilizers[p], s});
            }
            sector.vortex_count = std::popcount(mask);
            opts.sector.push_back({stabilizers[n], sector.loop_signs[0]});
            opts.sector.push_back({stabilizers[n + 1], sector.loop_signs[1]});
            SpectrumResult r = ground_subspace(hamiltonian, lat.N, 1, spec.degeneracy_tol, opts);
            out.push_back({sector, r.ground_energy()});
        }
    }
    return out;
}

double estimated_memory_bytes(const RunConfig &config) {
    const double state = 16.0 * std::ldexp(1.0, config.num_qubits());
    const int workers = resolve_workers(config.workers, static_cast<int>(config.seeds.size()));
    switch (config.experiment) {
    case Experiment::NoiseReport:
        return 2.0 * state;
    case Experiment::ExactSpectrum:
        return (config.oracle.krylov_dim + 8.0) * state;
    case Experiment::GsZeroField:
    case Experiment::Dynamics:
        return (config.oracle.krylov_dim + 8.0) * state + 6.0 * workers * state;
    case Experiment::GsFieldSweep:
        // One kept final state per seed and grid point, plus the per-point oracles.
        return (config.oracle.krylov_dim + 8.0) * state +
               (6.0 * workers + 2.0 * static_cast<double>(config.seeds.size() * config.field.values.size())) * state;
    }
    return state;
}

void check_memory(const RunConfig &config) {
    double cap_mb = 4096.0;
    if (const char *env = std::getenv("KITAEV_MEMORY_CAP_MB")) {
        char *end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || !(v > 0.0)) {
            throw Error(ErrorCode::ConfigInvalid, std::string("KITAEV_MEMORY_CAP_MB=\"") + env +
                                                      "\" is not a positive number");
        }
        cap_mb = v;
    }
    const double need_mb = estimated_memory_bytes(config) / (1024.0 * 1024.0);
    if (need_mb > cap_mb) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "run needs about %.0f MiB for N=%d, cap is %.0f MiB (KITAEV_MEMORY_CAP_MB)",
                      need_mb, config.num_qubits(), cap_mb);
        throw Error(ErrorCode::ResourceLimit, buf);
    }
}

ZeroFieldResult run_zero_field(const RunConfig &config, const CouplingSpec &coupling, const LogFn &log) {
    const HoneycombTorus lat = build_torus(config.Lx, config.Ly);
    const PauliSum h = hamiltonian_for(lat, coupling, {0.0, 0.0, 0.0});
    ZeroFieldResult res;
    res.coupling = coupling;

    auto t0 = std::chrono::steady_clock::now();
    res.oracle = solve_oracle(h, lat.N, config.oracle);
    res.ground_pieces = ground_sectors(res.oracle, lat);
    say(log, "[" + coupling.label + "] oracle E_GS = " + brief(res.ground_energy()) + ", degeneracy " +
                 std::to_string(res.oracle.degeneracy) + " (" +
                 brief(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) + " s)");
    res.sector = config.sector ? *config.sector : res.ground_pieces.front().sector;

    const auto monitored = stabilizer_strings(lat);
    const int count = static_cast<int>(config.seeds.size());
    res.runs.resize(count);
    std::atomic<int> first_pass{count};
    parallel_for(count, config.workers, [&](int k) {
        SeedRun &run = res.runs[k];
        run.seed = config.seeds[k];
        if (config.stop_at_threshold && k > first_pass.load()) {
            run.skipped = true;
            return;
        }
        OptimizerConfig opt = config.optimizer;
        opt.seed = run.seed;
        TrainingOptions to;
        to.oracle = &res.oracle;
        to.monitored = monitored;
        auto t = std::chrono::steady_clock::now();
        run.trace = train(lat, res.sector, config.ansatz, h, opt, to);
        say(log, "[" + coupling.label + "] seed " + std::to_string(run.seed) + ": dE = " +
                     brief(run.trace.final_energy() - res.ground_energy()) +
                     ", 1-F = " + brief(run.trace.final_infidelity()) + " (" +
                     brief(std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count()) + " s)");
        if (meets(run.trace, res.ground_energy(), config.thresholds)) {
            int cur = first_pass.load();
            while (k < cur && !first_pass.compare_exchange_weak(cur, k)) {
            }
        }
    });
    // Drop anything past the first passing seed so the outcome is independent of scheduling.
    if (config.stop_at_threshold) {
        for (int k = first_pass.load() + 1; k < count; ++k) {
            res.runs[k].skipped = true;
            res.runs[k].trace = {};
        }
    }
    for (int k = 0; k < count; ++k) {
        const auto &r = res.runs[k];
        if (r.skipped) {
            continue;
        }
        if (res.best < 0) {
            res.best = k;
            continue;
        }
        const auto &b = res.runs[res.best].trace;
        if (r.trace.final_infidelity() < b.final_infidelity() ||
            (r.trace.final_infidelity() == b.final_infidelity() && r.trace.final_energy() < b.final_energy())) {
            res.best = k;
        }
    }
    return res;
}

FieldSweepResult run_field_sweep(const RunConfig &config, const CouplingSpec &coupling, const LogFn &log) {
    const HoneycombTorus lat = build_torus(config.Lx, config.Ly);
    FieldSweepResult res;
    res.coupling = coupling;
    const auto &grid = config.field.values;
    const int np = static_cast<int>(grid.size());

    std::vector<PauliSum> hams;
    std::vector<SpectrumResult> oracles(np);
    for (double hv : grid) {
        hams.push_back(hamiltonian_for(lat, coupling, scaled(config.field.direction, hv)));
    }
    for (int p = 0; p < np; ++p) {
        oracles[p] = solve_oracle(hams[p], lat.N, config.oracle);
    }
    say(log, "[" + coupling.label + "] oracle solved at " + std::to_string(np) + " field values");

    if (config.sector) {
        res.sector = *config.sector;
    } else {
        const PauliSum h0 = hamiltonian_for(lat, coupling, {0.0, 0.0, 0.0});
        res.sector = ground_sectors(solve_oracle(h0, lat.N, config.oracle), lat).front().sector;
    }

    const int ns = static_cast<int>(config.seeds.size());
    res.traces.assign(ns, std::vector<TrainingTrace>(np));
    parallel_for(ns, config.workers, [&](int k) {
        OptimizerConfig opt = config.optimizer;
        opt.seed = config.seeds[k];
        PreparedState prep = prepare_sector(lat, res.sector, opt.seed);
        std::vector<int> order(np);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return config.warm_start == WarmStart::Descending ? grid[a] > grid[b] : grid[a] < grid[b];
        });
        std::vector<double> theta;
        for (int p : order) {
            TrainingOptions to;
            to.oracle = &oracles[p];
            if (config.warm_start != WarmStart::None) {
                to.initial_theta = theta;
            }
            TrainingTrace t = train_from_state(prep.state, lat, config.ansatz, hams[p], opt, to);
            t.prep = prep.report;
            theta = t.theta_opt;
            res.traces[k][p] = std::move(t);
        }
        say(log, "[" + coupling.label + "] seed " + std::to_string(opt.seed) + " swept");
    });

    for (int p = 0; p < np; ++p) {
        FieldPoint pt;
        pt.h = grid[p];
        pt.energy_exact = oracles[p].ground_energy();
        pt.degeneracy = oracles[p].degeneracy;
        pt.min_logged_energy = std::numeric_limits<double>::infinity();
        for (int k = 0; k < ns; ++k) {
            const auto &t = res.traces[k][p];
            pt.min_logged_energy = std::min(pt.min_logged_energy, min_energy(t));
            if (t.final_energy() < res.traces[pt.best_seed][p].final_energy()) {
                pt.best_seed = k;
            }
        }
        const auto &best = res.traces[pt.best_seed][p];
        pt.energy_var = best.final_energy();
        pt.infidelity = best.final_infidelity();
        const StaticObservables var = static_observables(*best.final_state, lat);
        // A degenerate ground space has no unique observables; use the member nearest the variational state.
        const StaticObservables ex =
            pt.degeneracy == 1 ? static_observables(oracles[p].eigenstates.front(), lat)
                               : static_observables(project_to_ground_space(oracles[p], *best.final_state), lat);
        pt.mz_var = var.magnetization_z;
        pt.eta_var = var.eta;
        pt.mz_exact = ex.magnetization_z;
        pt.eta_exact = ex.eta;
        res.points.push_back(pt);
    }
    return res;
}

DynamicsResult run_dynamics(const RunConfig &config, const LogFn &log) {
    const HoneycombTorus lat = build_torus(config.Lx, config.Ly);
    if (lat.N > kMaxExactPropagationQubits) {
        throw Error(ErrorCode::SizeTooLarge, "the dynamics reference propagates exactly, which is limited to N <= " +
                                                 std::to_string(kMaxExactPropagationQubits));
    }
    DynamicsResult res;
    res.ground = run_zero_field(config, config.couplings.front(), log);
    const StateVector &psi_var = *res.ground.runs[res.ground.best].trace.final_state;
    res.overlap_with_oracle = subspace_fidelity(res.ground.oracle, psi_var);
    const StateVector psi_ref = project_to_ground_space(res.ground.oracle, psi_var);

    QuenchSpec q;
    q.hamiltonian = hamiltonian_for(lat, config.couplings.front(), config.dynamics.quench_field);
    q.dt = config.dynamics.dt;
    q.steps = config.dynamics.steps;
    q.trotter_order = config.dynamics.trotter_order;
    q.pairs = config.dynamics.pairs.empty() ? default_bond_pairs(lat) : config.dynamics.pairs;

    auto var = correlators(psi_var, lat, q, Propagator::Trotter);
    auto ex = correlators(psi_ref, lat, q, Propagator::Exact);
    for (std::size_t k = 0; k < var.size(); ++k) {
        res.series.push_back({var[k].tag, std::move(var[k]), std::move(ex[k])});
    }
    say(log, "quench propagated for " + std::to_string(res.series.size()) + " bond pairs");
    return res;
}

NoiseReport run_noise_report(const RunConfig &config, const PrepReport *prep) {
    const HoneycombTorus lat = build_torus(config.Lx, config.Ly);
    NoiseReport rep;
    if (prep != nullptr) {
        rep.budget += compile(*prep, lat);
    } else {
        const SectorSpec sector = config.sector ? *config.sector : SectorSpec{};
        rep.budget += compile(prepare_sector(lat, sector, config.seeds.front()).report, lat);
    }
    rep.num_params = parameter_count(lat, config.ansatz);
    const std::vector<double> theta(rep.num_params, 0.0);
    rep.budget += compile(assemble(lat, config.ansatz, theta), "ansatz").budget;
    if (config.experiment == Experiment::Dynamics) {
        const PauliSum hq = hamiltonian_for(lat, config.couplings.front(), config.dynamics.quench_field);
        rep.budget += compile_trotter(hq, config.dynamics.steps, config.dynamics.trotter_order);
    }
    rep.fidelity = estimate_fidelity(rep.budget, config.noise.eps1, config.noise.eps2);
    return rep;
}

std::string noise_table(const NoiseReport &report, const NoiseSpec &noise) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %10s %10s %10s\n", "phase", "rotations", "hadamards", "cnots");
    out << line;
    for (const auto &[phase, c] : report.budget.phases) {
        std::snprintf(line, sizeof line, "%-16s %10ld %10ld %10ld\n", phase.c_str(), c.rotations, c.hadamards,
                      c.cnots);
        out << line;
    }
    std::snprintf(line, sizeof line, "%-16s %10ld %10ld %10ld\n", "total", report.budget.n_R, report.budget.n_H,
                  report.budget.n_CNOT);
    out << line;
    std::snprintf(line, sizeof line, "parameters: %d\nF = (1-%g)^%ld (1-%g)^%ld = %.6f\n", report.num_params,
                  noise.eps1, report.budget.n_R + report.budget.n_H, noise.eps2, report.budget.n_CNOT,
                  report.fidelity);
    out << line;
    return out.str();
}

namespace {

json thresholds_json(const Thresholds &t) {
    return {{"infidelity", t.infidelity},
            {"relative_energy", t.relative_energy},
            {"symmetry", t.symmetry},
            {"variational_slack", t.variational_slack},
            {"magnetization", t.magnetization},
            {"eta", t.eta},
            {"correlator", t.correlator},
            {"static_identity", t.static_identity}};
}

json write_zero_field(ArtifactWriter &out, const ZeroFieldResult &res) {
    const std::string &label = res.coupling.label;
    json runs = json::array();
    for (const auto &run : res.runs) {
        json r{{"seed", run.seed}, {"skipped", run.skipped}};
        if (!run.skipped) {
            const std::string trace_name = "trace_" + label + "_seed" + std::to_string(run.seed) + ".csv";
            const std::string prep_name = "prep_report_" + label + "_seed" + std::to_string(run.seed) + ".json";
            out.write(trace_name, trace_csv(run.trace));
            out.write_json(prep_name, to_json(run.trace.prep));
            r["trace"] = trace_name;
            r["prep_report"] = prep_name;
            r["epochs"] = static_cast<int>(run.trace.records.size()) - 1;
            r["final_energy"] = run.trace.final_energy();
            r["delta_energy"] = run.trace.final_energy() - res.ground_energy();
            r["final_infidelity"] = run.trace.final_infidelity();
            r["min_energy"] = min_energy(run.trace);
            r["max_symmetry_drift"] = max_drift(run.trace);
            r["theta_opt"] = run.trace.theta_opt;
        }
        runs.push_back(r);
    }
    json pieces = json::array();
    for (const auto &p : res.ground_pieces) {
        pieces.push_back({{"sector", sector_json(p.sector)}, {"multiplicity", p.multiplicity}});
    }
    return {{"coupling", coupling_json(res.coupling)},
            {"oracle", spectrum_json(res.oracle)},
            {"ground_sectors", pieces},
            {"sector", sector_json(res.sector)},
            {"runs", runs},
            {"best_seed", res.runs[res.best].seed}};
}

}  // namespace

void run_experiment(const RunConfig &config, const LogFn &log) {
    check_memory(config);
    const auto start = std::chrono::steady_clock::now();
    const json canonical = to_json(config);
    ArtifactWriter out(config.output_dir);
    json summary{{"experiment", experiment_name(config.experiment)},
                 {"lattice", {{"Lx", config.Lx}, {"Ly", config.Ly}, {"N", config.num_qubits()}}},
                 {"thresholds", thresholds_json(config.thresholds)}};
    const PrepReport *budget_prep = nullptr;
    ZeroFieldResult first_ground;

    switch (config.experiment) {
    case Experiment::GsZeroField: {
        json results = json::array();
        for (std::size_t c = 0; c < config.couplings.size(); ++c) {
            ZeroFieldResult res = run_zero_field(config, config.couplings[c], log);
            results.push_back(write_zero_field(out, res));
            if (c == 0) {
                first_ground = std::move(res);
            }
        }
        summary["results"] = results;
        budget_prep = &first_ground.runs[first_ground.best].trace.prep;
        break;
    }
    case Experiment::GsFieldSweep: {
        json results = json::array();
        for (const auto &coupling : config.couplings) {
            FieldSweepResult res = run_field_sweep(config, coupling, log);
            std::string csv =
                "h,mz_var,mz_exact,eta_var,eta_exact,energy_var,energy_exact,infidelity,degeneracy,best_seed,"
                "min_logged_energy\n";
            for (const auto &p : res.points) {
                csv += num(p.h) + "," + num(p.mz_var) + "," + num(p.mz_exact) + "," + num(p.eta_var) + "," +
                       num(p.eta_exact) + "," + num(p.energy_var) + "," + num(p.energy_exact) + "," +
                       num(p.infidelity) + "," + std::to_string(p.degeneracy) + "," +
                       std::to_string(config.seeds[p.best_seed]) + "," + num(p.min_logged_energy) + "\n";
            }
            const std::string sweep_name = "field_sweep_" + coupling.label + ".csv";
            out.write(sweep_name, csv);
            json traces = json::array();
            for (std::size_t k = 0; k < config.seeds.size(); ++k) {
                std::string t = "h,epoch,energy,infidelity,grad_norm\n";
                for (std::size_t p = 0; p < res.points.size(); ++p) {
                    for (const auto &r : res.traces[k][p].records) {
                        t += num(res.points[p].h) + "," + std::to_string(r.epoch) + "," + num(r.energy) + "," +
                             num(r.infidelity) + "," + num(r.grad_norm) + "\n";
                    }
                }
                const std::string name = "trace_" + coupling.label + "_seed" + std::to_string(config.seeds[k]) + ".csv";
                out.write(name, t);
                out.write_json("prep_report_" + coupling.label + "_seed" + std::to_string(config.seeds[k]) + ".json",
                               to_json(res.traces[k].front().prep));
                traces.push_back(name);
            }
            results.push_back({{"coupling", coupling_json(coupling)},
                               {"sector", sector_json(res.sector)},
                               {"sweep", sweep_name},
                               {"traces", traces}});
        }
        summary["results"] = results;
        break;
    }
    case Experiment::Dynamics: {
        DynamicsResult res = run_dynamics(config, log);
        json ground = write_zero_field(out, res.ground);
        json series = json::array();
        for (const auto &s : res.series) {
            std::string csv = "t,re_S_var,im_S_var,re_S_exact,im_S_exact,re_C_var,im_C_var,re_C_exact,im_C_exact,"
                              "m_var,m_exact\n";
            for (std::size_t k = 0; k < s.variational.times.size(); ++k) {
                csv += num(s.variational.times[k]) + "," + num(s.variational.S[k].real()) + "," +
                       num(s.variational.S[k].imag()) + "," + num(s.exact.S[k].real()) + "," +
                       num(s.exact.S[k].imag()) + "," + num(s.variational.static_C.real()) + "," +
                       num(s.variational.static_C.imag()) + "," + num(s.exact.static_C.real()) + "," +
                       num(s.exact.static_C.imag()) + "," + num(s.variational.m[k]) + "," + num(s.exact.m[k]) + "\n";
            }
            const std::string name = "dynamics_" + s.tag + ".csv";
            out.write(name, csv);
            series.push_back({{"tag", s.tag}, {"csv", name}});
        }
        summary["results"] = json::array({ground});
        summary["dynamics"] = {{"series", series},
                               {"overlap_with_oracle", res.overlap_with_oracle},
                               {"quench_field", config.dynamics.quench_field},
                               {"dt", config.dynamics.dt},
                               {"steps", config.dynamics.steps},
                               {"trotter_order", config.dynamics.trotter_order},
                               {"plotted_part", "real"}};
        first_ground = std::move(res.ground);
        budget_prep = &first_ground.runs[first_ground.best].trace.prep;
        break;
    }
    case Experiment::ExactSpectrum: {
        const HoneycombTorus lat = build_torus(config.Lx, config.Ly);
        json results = json::array();
        for (const auto &coupling : config.couplings) {
            json entry{{"coupling", coupling_json(coupling)}};
            json points = json::array();
            for (double hv : config.field.values) {
                const auto field = scaled(config.field.direction, hv);
                const PauliSum h = hamiltonian_for(lat, coupling, field);
                SpectrumResult spec = solve_oracle(h, lat.N, config.oracle);
                const StaticObservables obs = static_observables(spec.eigenstates.front(), lat);
                json pt{{"h", hv},
                        {"spectrum", spectrum_json(spec)},
                        {"magnetization_z", obs.magnetization_z},
                        {"eta", obs.eta}};
                if (is_zero(field)) {
                    json pieces = json::array();
                    for (const auto &p : ground_sectors(spec, lat)) {
                        pieces.push_back({{"sector", sector_json(p.sector)}, {"multiplicity", p.multiplicity}});
                    }
                    pt["ground_sectors"] = pieces;
                    if (lat.N <= 12) {
                        const std::string name = "sectors_" + coupling.label + ".csv";
                        std::string csv = "vortex_count,loop_x,loop_y,plaquette_signs,energy\n";
                        for (const auto &s : scan_sectors(lat, h, config.oracle)) {
                            std::string pattern;
                            for (int v : s.sector.plaquette_signs) {
                                pattern += v > 0 ? '+' : '-';
                            }
                            csv += std::to_string(s.sector.vortex_count) + "," +
                                   std::to_string(s.sector.loop_signs[0]) + "," +
                                   std::to_string(s.sector.loop_signs[1]) + "," + pattern + "," + num(s.energy) + "\n";
                        }
                        out.write(name, csv);
                        pt["sector_scan"] = name;
                    }
                }
                say(log, "[" + coupling.label + "] h = " + brief(hv) + ": E_GS = " + brief(spec.ground_energy()));
                points.push_back(pt);
            }
            entry["points"] = points;
            results.push_back(entry);
        }
        summary["results"] = results;
        break;
    }
    case Experiment::NoiseReport:
        break;
    }

    const NoiseReport noise = run_noise_report(config, budget_prep);
    json budget = to_json(noise.budget);
    budget["num_params"] = noise.num_params;
    budget["eps1"] = config.noise.eps1;
    budget["eps2"] = config.noise.eps2;
    budget["fidelity"] = noise.fidelity;
    out.write_json("budget.json", budget);
    summary["budget"] = "budget.json";
    out.write_json("summary.json", summary);
    out.write_manifest(canonical, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

}  // namespace kitaev
