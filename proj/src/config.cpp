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

#include "kitaev/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kitaev/error.hpp"

namespace kitaev {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &path, const std::string &what) {
    throw Error(ErrorCode::ConfigInvalid, (path.empty() ? std::string("/") : path) + ": " + what);
}

// Typed access to one JSON object with its pointer path for diagnostics.
class Node {
  public:
    Node(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            fail(path_, "expected an object");
        }
    }

    void only(std::initializer_list<const char *> keys) const {
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto &[k, v] : j_.items()) {
            if (!allowed.contains(k)) {
                fail(path_ + "/" + k, "unknown key");
            }
        }
    }

    bool has(const char *key) const {
        return j_.contains(key);
    }

    std::string at_path(const char *key) const {
        return path_ + "/" + key;
    }

    const json &raw(const char *key) const {
        return j_.at(key);
    }

    Node child(const char *key) const {
        return Node(j_.at(key), at_path(key));
    }

    double number(const char *key, double fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json &v = j_.at(key);
        if (!v.is_number()) {
            fail(at_path(key), "expected a number");
        }
        double x = v.get<double>();
        if (!std::isfinite(x)) {
            fail(at_path(key), "must be finite");
        }
        return x;
    }

    long integer(const char *key, long fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json &v = j_.at(key);
        if (!v.is_number_integer()) {
            fail(at_path(key), "expected an integer");
        }
        return v.get<long>();
    }

    bool boolean(const char *key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json &v = j_.at(key);
        if (!v.is_boolean()) {
            fail(at_path(key), "expected true or false");
        }
        return v.get<bool>();
    }

    std::string string(const char *key, const std::string &fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json &v = j_.at(key);
        if (!v.is_string()) {
            fail(at_path(key), "expected a string");
        }
        return v.get<std::string>();
    }

    std::array<double, 3> vec3(const char *key, std::array<double, 3> fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json &v = j_.at(key);
        if (!v.is_array() || v.size() != 3) {
            fail(at_path(key), "expected an array of 3 numbers");
        }
        std::array<double, 3> out{};
        for (int a = 0; a < 3; ++a) {
            if (!v[a].is_number()) {
                fail(at_path(key) + "/" + std::to_string(a), "expected a number");
            }
            out[a] = v[a].get<double>();
        }
        return out;
    }

  private:
    const json &j_;
    std::string path_;
};

Experiment parse_experiment(const std::string &name, const std::string &path) {
    static const std::pair<const char *, Experiment> table[] = {
        {"gs-zero-field", Experiment::GsZeroField}, {"gs-field-sweep", Experiment::GsFieldSweep},
        {"dynamics", Experiment::Dynamics},         {"exact-spectrum", Experiment::ExactSpectrum},
        {"noise-report", Experiment::NoiseReport},
    };
    for (const auto &[n, e] : table) {
        if (name == n) {
            return e;
        }
    }
    fail(path, "unknown experiment \"" + name +
                   "\" (expected gs-zero-field, gs-field-sweep, dynamics, exact-spectrum or noise-report)");
}

CouplingSpec parse_coupling(const Node &n, const std::string &default_label) {
    n.only({"label", "J", "Jx", "Jy", "Jz"});
    CouplingSpec c;
    const double J = n.number("J", -1.0);
    c.Jx = n.number("Jx", J);
    c.Jy = n.number("Jy", J);
    c.Jz = n.number("Jz", J);
    c.label = n.string("label", default_label);
    return c;
}

void check(bool ok, const std::string &path, const std::string &what) {
    if (!ok) {
        fail(path, what);
    }
}

}  // namespace

std::string experiment_name(Experiment e) {
    switch (e) {
    case Experiment::GsZeroField:
        return "gs-zero-field";
    case Experiment::GsFieldSweep:
        return "gs-field-sweep";
    case Experiment::Dynamics:
        return "dynamics";
    case Experiment::ExactSpectrum:
        return "exact-spectrum";
    case Experiment::NoiseReport:
        return "noise-report";
    }
    return "?";
}

RunConfig config_from_json(const json &doc) {
    Node root(doc, "");
    root.only({"experiment", "lattice", "couplings", "field", "sector", "ansatz", "optimizer", "seeds",
               "stop_at_threshold", "warm_start", "workers", "oracle", "dynamics", "noise", "thresholds",
               "output_dir", "description"});
    RunConfig cfg;

    if (!root.has("experiment")) {
        fail("/experiment", "required key missing");
    }
    cfg.experiment = parse_experiment(root.string("experiment", ""), "/experiment");

    if (!root.has("lattice")) {
        fail("/lattice", "required key missing");
    }
    {
        Node lat = root.child("lattice");
        lat.only({"Lx", "Ly"});
        cfg.Lx = static_cast<int>(lat.integer("Lx", 0));
        cfg.Ly = static_cast<int>(lat.integer("Ly", 0));
        check(cfg.Lx >= 2, "/lattice/Lx", "must be at least 2");
        check(cfg.Ly >= 2, "/lattice/Ly", "must be at least 2");
        check(cfg.num_qubits() <= kMaxQubits, "/lattice",
              "2*Lx*Ly = " + std::to_string(cfg.num_qubits()) + " exceeds the " + std::to_string(kMaxQubits) +
                  "-qubit limit");
    }

    if (root.has("couplings")) {
        const json &c = root.raw("couplings");
        cfg.couplings.clear();
        if (c.is_array()) {
            check(!c.empty(), "/couplings", "must not be empty");
            std::set<std::string> labels;
            for (std::size_t k = 0; k < c.size(); ++k) {
                const std::string path = "/couplings/" + std::to_string(k);
                cfg.couplings.push_back(parse_coupling(Node(c[k], path), "J" + std::to_string(k)));
                check(labels.insert(cfg.couplings.back().label).second, path + "/label", "duplicate label");
            }
        } else {
            cfg.couplings.push_back(parse_coupling(Node(c, "/couplings"), "FM"));
        }
    }

    if (root.has("field")) {
        Node f = root.child("field");
        f.only({"direction", "values", "start", "stop", "step"});
        cfg.field.direction = f.vec3("direction", cfg.field.direction);
        if (f.has("values")) {
            check(!f.has("start") && !f.has("stop") && !f.has("step"), "/field",
                  "give either values or start/stop/step, not both");
            const json &v = f.raw("values");
            check(v.is_array() && !v.empty(), "/field/values", "expected a non-empty array of numbers");
            cfg.field.values.clear();
            for (std::size_t k = 0; k < v.size(); ++k) {
                check(v[k].is_number(), "/field/values/" + std::to_string(k), "expected a number");
                cfg.field.values.push_back(v[k].get<double>());
            }
        } else if (f.has("start") || f.has("stop") || f.has("step")) {
            const double start = f.number("start", 0.0);
            const double stop = f.number("stop", start);
            const double step = f.number("step", 0.1);
            check(step > 0.0, "/field/step", "must be positive");
            check(stop >= start, "/field/stop", "must not be below start");
            const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
            check(count <= 10000, "/field", "grid has more than 10000 points");
            cfg.field.values.clear();
            for (long k = 0; k < count; ++k) {
                // Rounded so that 0.1 steps print as 0.3 rather than 0.30000000000000004.
                cfg.field.values.push_back(std::round((start + k * step) * 1e12) / 1e12);
            }
        }
    }

    if (root.has("sector")) {
        const json &s = root.raw("sector");
        if (s.is_string()) {
            check(s.get<std::string>() == "auto", "/sector", "expected \"auto\" or an object");
        } else {
            Node sn(s, "/sector");
            sn.only({"vortex_count", "loop_signs"});
            SectorSpec spec;
            spec.vortex_count = static_cast<int>(sn.integer("vortex_count", 0));
            check(spec.vortex_count >= 0 && spec.vortex_count <= cfg.Lx * cfg.Ly && spec.vortex_count % 2 == 0,
                  "/sector/vortex_count", "must be even and between 0 and Lx*Ly");
            if (sn.has("loop_signs")) {
                const json &l = sn.raw("loop_signs");
                check(l.is_array() && l.size() == 2, "/sector/loop_signs", "expected two signs");
                for (int a = 0; a < 2; ++a) {
                    check(l[a].is_number_integer() && (l[a].get<int>() == 1 || l[a].get<int>() == -1),
                          "/sector/loop_signs/" + std::to_string(a), "must be +1 or -1");
                    spec.loop_signs[a] = l[a].get<int>();
                }
            }
            cfg.sector = spec;
        }
    }

    if (root.has("ansatz")) {
        Node a = root.child("ansatz");
        a.only({"depth", "vortex_layers", "vortex_kind"});
        cfg.ansatz.depth = static_cast<int>(a.integer("depth", 1));
        check(cfg.ansatz.depth >= 0, "/ansatz/depth", "must be non-negative");
        cfg.ansatz.include_vortex_layers = a.boolean("vortex_layers", false);
        const std::string kind = a.string("vortex_kind", "single_site_plus_controlled");
        if (kind == "single_site_rotations") {
            cfg.ansatz.vortex_kind = VortexLayerKind::SingleSiteRotations;
        } else if (kind == "single_site_plus_controlled") {
            cfg.ansatz.vortex_kind = VortexLayerKind::SingleSitePlusControlled;
        } else {
            fail("/ansatz/vortex_kind", "expected single_site_rotations or single_site_plus_controlled");
        }
    }

    if (root.has("optimizer")) {
        Node o = root.child("optimizer");
        o.only({"epochs", "learning_rate", "beta1", "beta2", "eps", "init_scale"});
        auto &opt = cfg.optimizer;
        opt.epochs = static_cast<int>(o.integer("epochs", opt.epochs));
        opt.learning_rate = o.number("learning_rate", opt.learning_rate);
        opt.adam_beta1 = o.number("beta1", opt.adam_beta1);
        opt.adam_beta2 = o.number("beta2", opt.adam_beta2);
        opt.adam_eps = o.number("eps", opt.adam_eps);
        opt.init_scale = o.number("init_scale", opt.init_scale);
        check(opt.epochs >= 0, "/optimizer/epochs", "must be non-negative");
        check(opt.learning_rate > 0.0, "/optimizer/learning_rate", "must be positive");
        check(opt.adam_beta1 >= 0.0 && opt.adam_beta1 < 1.0, "/optimizer/beta1", "must lie in [0, 1)");
        check(opt.adam_beta2 >= 0.0 && opt.adam_beta2 < 1.0, "/optimizer/beta2", "must lie in [0, 1)");
        check(opt.adam_eps > 0.0, "/optimizer/eps", "must be positive");
        check(opt.init_scale >= 0.0, "/optimizer/init_scale", "must be non-negative");
    }

    if (root.has("seeds")) {
        const json &s = root.raw("seeds");
        check(s.is_array() && !s.empty(), "/seeds", "expected a non-empty array of integers");
        cfg.seeds.clear();
        for (std::size_t k = 0; k < s.size(); ++k) {
            check(s[k].is_number_integer() && s[k].get<std::int64_t>() >= 0, "/seeds/" + std::to_string(k),
                  "expected a non-negative integer");
            cfg.seeds.push_back(s[k].get<std::uint64_t>());
        }
    }

    cfg.stop_at_threshold = root.boolean("stop_at_threshold", cfg.stop_at_threshold);
    {
        const std::string ws = root.string("warm_start", "descending");
        if (ws == "none") {
            cfg.warm_start = WarmStart::None;
        } else if (ws == "ascending") {
            cfg.warm_start = WarmStart::Ascending;
        } else if (ws == "descending") {
            cfg.warm_start = WarmStart::Descending;
        } else {
            fail("/warm_start", "expected none, ascending or descending");
        }
    }
    cfg.workers = static_cast<int>(root.integer("workers", 0));
    check(cfg.workers >= 0 && cfg.workers <= 256, "/workers", "must lie in [0, 256]");

    if (root.has("oracle")) {
        Node o = root.child("oracle");
        o.only({"krylov_dim", "degeneracy_tol", "residual_tol"});
        cfg.oracle.krylov_dim = static_cast<int>(o.integer("krylov_dim", cfg.oracle.krylov_dim));
        cfg.oracle.degeneracy_tol = o.number("degeneracy_tol", cfg.oracle.degeneracy_tol);
        cfg.oracle.residual_tol = o.number("residual_tol", cfg.oracle.residual_tol);
        check(cfg.oracle.krylov_dim >= 8, "/oracle/krylov_dim", "must be at least 8");
        check(cfg.oracle.degeneracy_tol > 0.0, "/oracle/degeneracy_tol", "must be positive");
        check(cfg.oracle.residual_tol > 0.0, "/oracle/residual_tol", "must be positive");
    }

    if (root.has("dynamics")) {
        Node d = root.child("dynamics");
        d.only({"dt", "steps", "trotter_order", "quench_field", "bond_pairs"});
        auto &dyn = cfg.dynamics;
        dyn.dt = d.number("dt", dyn.dt);
        dyn.steps = static_cast<int>(d.integer("steps", dyn.steps));
        dyn.trotter_order = static_cast<int>(d.integer("trotter_order", dyn.trotter_order));
        dyn.quench_field = d.vec3("quench_field", dyn.quench_field);
        check(dyn.dt > 0.0, "/dynamics/dt", "must be positive");
        check(dyn.steps >= 0, "/dynamics/steps", "must be non-negative");
        check(dyn.trotter_order == 1 || dyn.trotter_order == 2, "/dynamics/trotter_order", "must be 1 or 2");
        if (d.has("bond_pairs")) {
            const json &bp = d.raw("bond_pairs");
            check(bp.is_array() && !bp.empty(), "/dynamics/bond_pairs", "expected a non-empty array");
            const int num_bonds = 3 * cfg.num_qubits() / 2;
            for (std::size_t k = 0; k < bp.size(); ++k) {
                const std::string path = "/dynamics/bond_pairs/" + std::to_string(k);
                Node p(bp[k], path);
                p.only({"tag", "first", "second"});
                BondPair pair;
                pair.tag = p.string("tag", "pair" + std::to_string(k));
                pair.first = static_cast<int>(p.integer("first", -1));
                pair.second = static_cast<int>(p.integer("second", -1));
                check(pair.first >= 0 && pair.first < num_bonds, path + "/first", "bond index out of range");
                check(pair.second >= 0 && pair.second < num_bonds, path + "/second", "bond index out of range");
                dyn.pairs.push_back(pair);
            }
        }
    }

    if (root.has("noise")) {
        Node n = root.child("noise");
        n.only({"eps1", "eps2"});
        cfg.noise.eps1 = n.number("eps1", cfg.noise.eps1);
        cfg.noise.eps2 = n.number("eps2", cfg.noise.eps2);
        check(cfg.noise.eps1 >= 0.0 && cfg.noise.eps1 <= 1.0, "/noise/eps1", "must lie in [0, 1]");
        check(cfg.noise.eps2 >= 0.0 && cfg.noise.eps2 <= 1.0, "/noise/eps2", "must lie in [0, 1]");
    }

    if (root.has("thresholds")) {
        Node t = root.child("thresholds");
        t.only({"infidelity", "relative_energy", "symmetry", "variational_slack", "magnetization", "eta",
                "correlator", "static_identity"});
        auto &th = cfg.thresholds;
        th.infidelity = t.number("infidelity", th.infidelity);
        th.relative_energy = t.number("relative_energy", th.relative_energy);
        th.symmetry = t.number("symmetry", th.symmetry);
        th.variational_slack = t.number("variational_slack", th.variational_slack);
        th.magnetization = t.number("magnetization", th.magnetization);
        th.eta = t.number("eta", th.eta);
        th.correlator = t.number("correlator", th.correlator);
        th.static_identity = t.number("static_identity", th.static_identity);
    }

    if (root.has("output_dir")) {
        const std::string dir = root.string("output_dir", "");
        check(!dir.empty(), "/output_dir", "must not be empty");
        cfg.output_dir = dir;
    }

    if (cfg.experiment == Experiment::GsFieldSweep && !cfg.ansatz.include_vortex_layers) {
        bool any_field = std::any_of(cfg.field.values.begin(), cfg.field.values.end(),
                                     [](double h) { return h != 0.0; });
        check(!any_field, "/ansatz/vortex_layers", "a field sweep needs vortex layers to break the symmetry");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ConfigInvalid, path.string() + ": cannot open");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error &e) {
        // Translate the byte offset into a line and column.
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::ConfigInvalid, path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                                  ": syntax error");
    }
    try {
        return config_from_json(doc);
    } catch (const Error &e) {
        throw Error(ErrorCode::ConfigInvalid, path.string() + ": " + e.detail());
    }
}

json to_json(const RunConfig &c) {
    json couplings = json::array();
    for (const auto &cp : c.couplings) {
        couplings.push_back({{"label", cp.label}, {"Jx", cp.Jx}, {"Jy", cp.Jy}, {"Jz", cp.Jz}});
    }
    json pairs = json::array();
    for (const auto &p : c.dynamics.pairs) {
        pairs.push_back({{"tag", p.tag}, {"first", p.first}, {"second", p.second}});
    }
    json j{
        {"experiment", experiment_name(c.experiment)},
        {"lattice", {{"Lx", c.Lx}, {"Ly", c.Ly}}},
        {"couplings", couplings},
        {"field", {{"direction", c.field.direction}, {"values", c.field.values}}},
        {"ansatz",
         {{"depth", c.ansatz.depth},
          {"vortex_layers", c.ansatz.include_vortex_layers},
          {"vortex_kind", c.ansatz.vortex_kind == VortexLayerKind::SingleSiteRotations ? "single_site_rotations"
                                                                                       : "single_site_plus_controlled"}}},
        {"optimizer",
         {{"epochs", c.optimizer.epochs},
          {"learning_rate", c.optimizer.learning_rate},
          {"beta1", c.optimizer.adam_beta1},
          {"beta2", c.optimizer.adam_beta2},
          {"eps", c.optimizer.adam_eps},
          {"init_scale", c.optimizer.init_scale}}},
        {"seeds", c.seeds},
        {"stop_at_threshold", c.stop_at_threshold},
        {"warm_start", c.warm_start == WarmStart::None        ? "none"
                       : c.warm_start == WarmStart::Ascending ? "ascending"
                                                              : "descending"},
        {"oracle",
         {{"krylov_dim", c.oracle.krylov_dim},
          {"degeneracy_tol", c.oracle.degeneracy_tol},
          {"residual_tol", c.oracle.residual_tol}}},
        {"dynamics",
         {{"dt", c.dynamics.dt},
          {"steps", c.dynamics.steps},
          {"trotter_order", c.dynamics.trotter_order},
          {"quench_field", c.dynamics.quench_field},
          {"bond_pairs", pairs}}},
        {"noise", {{"eps1", c.noise.eps1}, {"eps2", c.noise.eps2}}},
        {"thresholds",
         {{"infidelity", c.thresholds.infidelity},
          {"relative_energy", c.thresholds.relative_energy},
          {"symmetry", c.thresholds.symmetry},
          {"variational_slack", c.thresholds.variational_slack},
          {"magnetization", c.thresholds.magnetization},
          {"eta", c.thresholds.eta},
          {"correlator", c.thresholds.correlator},
          {"static_identity", c.thresholds.static_identity}}},
    };
    if (c.dynamics.pairs.empty()) {
        j["dynamics"].erase("bond_pairs");  // lattice defaults
    }
    if (c.sector) {
        j["sector"] = {{"vortex_count", c.sector->vortex_count}, {"loop_signs", c.sector->loop_signs}};
    } else {
        j["sector"] = "auto";
    }
    // workers and output_dir do not change results, so they stay out of the hash.
    return j;
}

}  // namespace kitaev
