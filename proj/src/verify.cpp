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

#include "kitaev/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "kitaev/error.hpp"
#include "kitaev/manifest.hpp"
#include "kitaev/noise.hpp"

namespace kitaev {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

class Table {
  public:
    Table(const fs::path &path) {
        std::ifstream in(path);
        if (!in) {
            throw Error(ErrorCode::MissingArtifacts, "missing " + path.string());
        }
        std::string line;
        if (!std::getline(in, line)) {
            throw Error(ErrorCode::MissingArtifacts, path.string() + " is empty");
        }
        auto head = split(line);
        for (std::size_t k = 0; k < head.size(); ++k) {
            columns_[head[k]] = k;
        }
        while (std::getline(in, line)) {
            if (!line.empty()) {
                rows_.push_back(split(line));
            }
        }
        path_ = path.string();
    }

    std::size_t size() const {
        return rows_.size();
    }

    // Empty cells read as NaN.
    double get(std::size_t row, const std::string &col) const {
        auto it = columns_.find(col);
        if (it == columns_.end()) {
            throw Error(ErrorCode::MissingArtifacts, path_ + " has no column " + col);
        }
        const auto &cells = rows_.at(row);
        if (it->second >= cells.size() || cells[it->second].empty()) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return std::strtod(cells[it->second].c_str(), nullptr);
    }

  private:
    static std::vector<std::string> split(const std::string &line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            out.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            out.emplace_back();
        }
        return out;
    }

    std::map<std::string, std::size_t> columns_;
    std::vector<std::vector<std::string>> rows_;
    std::string path_;
};

json read_json(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::MissingArtifacts, "missing " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::MissingArtifacts, path.string() + " is not valid JSON");
    }
}

void at_most(VerifyReport &r, const std::string &name, double value, double threshold, bool gating = true) {
    r.rows.push_back({name, value <= threshold, value, threshold, true, gating});
}

void at_least(VerifyReport &r, const std::string &name, double value, double threshold) {
    r.rows.push_back({name, value >= threshold, value, threshold, false, true});
}

void check_ground(VerifyReport &r, const fs::path &dir, const json &entry, const json &th) {
    const std::string label = entry.at("coupling").at("label");
    const double e_gs = entry.at("oracle").at("ground_energy");
    double min_gap = kInf, drift = 0.0;
    double best_inf = kInf, best_gap = kInf;
    for (const auto &run : entry.at("runs")) {
        if (run.at("skipped").get<bool>()) {
            continue;
        }
        Table t(dir / run.at("trace").get<std::string>());
        if (t.size() == 0) {
            throw Error(ErrorCode::MissingArtifacts, "empty trace " + run.at("trace").get<std::string>());
        }
        for (std::size_t k = 0; k < t.size(); ++k) {
            min_gap = std::min(min_gap, t.get(k, "energy") - e_gs);
            const double d = t.get(k, "symmetry_drift");
            if (!std::isnan(d)) {
                drift = std::max(drift, d);
            }
        }
        const std::size_t last = t.size() - 1;
        const double inf = t.get(last, "infidelity");
        const double gap = t.get(last, "energy") - e_gs;
        if (inf < best_inf || (inf == best_inf && gap < best_gap)) {
            best_inf = inf;
            best_gap = gap;
        }
    }
    at_least(r, "variational bound [" + label + "] min(E - E_GS)", min_gap, -th.at("variational_slack").get<double>());
    at_most(r, "symmetry drift [" + label + "]", drift, th.at("symmetry"));
    at_most(r, "best infidelity [" + label + "]", best_inf, th.at("infidelity"));
    at_most(r, "energy gap of best seed [" + label + "]", best_gap,
            th.at("relative_energy").get<double>() * std::abs(e_gs));
}

void check_sweep(VerifyReport &r, const fs::path &dir, const json &entry, const json &th) {
    const std::string label = entry.at("coupling").at("label");
    Table sweep(dir / entry.at("sweep").get<std::string>());
    std::map<double, double> exact;
    double dmz = 0.0, deta = 0.0, worst_inf = 0.0;
    for (std::size_t k = 0; k < sweep.size(); ++k) {
        exact[sweep.get(k, "h")] = sweep.get(k, "energy_exact");
        dmz = std::max(dmz, std::abs(sweep.get(k, "mz_var") - sweep.get(k, "mz_exact")));
        deta = std::max(deta, std::abs(sweep.get(k, "eta_var") - sweep.get(k, "eta_exact")));
        worst_inf = std::max(worst_inf, sweep.get(k, "infidelity"));
    }
    double min_gap = kInf;
    for (const auto &name : entry.at("traces")) {
        Table t(dir / name.get<std::string>());
        for (std::size_t k = 0; k < t.size(); ++k) {
            auto it = exact.find(t.get(k, "h"));
            if (it == exact.end()) {
                throw Error(ErrorCode::MissingArtifacts, name.get<std::string>() + " has a field value not in the sweep");
            }
            min_gap = std::min(min_gap, t.get(k, "energy") - it->second);
        }
    }
    at_least(r, "variational bound [" + label + "] min(E - E_GS)", min_gap, -th.at("variational_slack").get<double>());
    at_most(r, "max |dM^z/N| [" + label + "]", dmz, th.at("magnetization"));
    at_most(r, "max |d eta| [" + label + "]", deta, th.at("eta"));
    at_most(r, "max infidelity [" + label + "] (stretch)", worst_inf, 1e-2, false);
}

void check_dynamics(VerifyReport &r, const fs::path &dir, const json &dyn, const json &th) {
    for (const auto &s : dyn.at("series")) {
        const std::string tag = s.at("tag");
        Table t(dir / s.at("csv").get<std::string>());
        if (t.size() == 0) {
            throw Error(ErrorCode::MissingArtifacts, "empty correlator series " + tag);
        }
        double dev = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            dev = std::max(dev, std::abs(t.get(k, "re_S_var") - t.get(k, "re_S_exact")));
        }
        const std::complex<double> s0v(t.get(0, "re_S_var"), t.get(0, "im_S_var"));
        const std::complex<double> cv(t.get(0, "re_C_var"), t.get(0, "im_C_var"));
        const std::complex<double> s0e(t.get(0, "re_S_exact"), t.get(0, "im_S_exact"));
        const std::complex<double> ce(t.get(0, "re_C_exact"), t.get(0, "im_C_exact"));
        at_most(r, "max |d Re S| [" + tag + "]", dev, th.at("correlator"));
        at_most(r, "|S(0) - C| [" + tag + "]", std::max(std::abs(s0v - cv), std::abs(s0e - ce)),
                th.at("static_identity"));
    }
}

void check_spectrum(VerifyReport &r, const fs::path &dir, const json &entry) {
    const std::string label = entry.at("coupling").at("label");
    for (const auto &pt : entry.at("points")) {
        if (!pt.contains("sector_scan")) {
            continue;
        }
        Table t(dir / pt.at("sector_scan").get<std::string>());
        double lowest = kInf;
        for (std::size_t k = 0; k < t.size(); ++k) {
            lowest = std::min(lowest, t.get(k, "energy"));
        }
        const double e_gs = pt.at("spectrum").at("ground_energy");
        at_most(r, "sector additivity [" + label + "] |min_sector E - E_GS|", std::abs(lowest - e_gs), 1e-8);
    }
}

void check_budget(VerifyReport &r, const fs::path &dir) {
    const json b = read_json(dir / "budget.json");
    GateBudget budget;
    budget.n_R = b.at("n_R");
    budget.n_H = b.at("n_H");
    budget.n_CNOT = b.at("n_CNOT");
    const double f = estimate_fidelity(budget, b.at("eps1"), b.at("eps2"));
    at_most(r, "fidelity formula |F - F_reported|", std::abs(f - b.at("fidelity").get<double>()), 1e-12);
    long sum_r = 0, sum_h = 0, sum_c = 0;
    for (const auto &[phase, c] : b.at("phases").items()) {
        sum_r += c.at("rotations").get<long>();
        sum_h += c.at("hadamards").get<long>();
        sum_c += c.at("cnots").get<long>();
    }
    const double mismatch = std::abs(sum_r - budget.n_R) + std::abs(sum_h - budget.n_H) +
                            std::abs(sum_c - budget.n_CNOT);
    at_most(r, "budget phases add up (count mismatch)", mismatch, 0.0);
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow &c) { return c.pass || !c.gating; });
}

VerifyReport verify_results(const fs::path &dir) {
    if (!fs::is_directory(dir)) {
        throw Error(ErrorCode::MissingArtifacts, dir.string() + " is not a directory");
    }
    const json manifest = read_json(dir / "manifest.json");
    const json summary = read_json(dir / "summary.json");
    VerifyReport r;
    r.experiment = summary.at("experiment");

    double tampered = 0;
    for (const auto &f : manifest.at("files")) {
        const fs::path p = dir / f.at("name").get<std::string>();
        if (!fs::exists(p)) {
            throw Error(ErrorCode::MissingArtifacts, "missing " + p.string());
        }
        if (sha256_file(p) != f.at("sha256").get<std::string>()) {
            tampered += 1;
        }
    }
    at_most(r, "artifact hashes (files changed since the run)", tampered, 0.0);

    const json &th = summary.at("thresholds");
    try {
        if (r.experiment == "gs-zero-field" || r.experiment == "dynamics") {
            for (const auto &entry : summary.at("results")) {
                check_ground(r, dir, entry, th);
            }
            if (r.experiment == "dynamics") {
                check_dynamics(r, dir, summary.at("dynamics"), th);
            }
        } else if (r.experiment == "gs-field-sweep") {
            for (const auto &entry : summary.at("results")) {
                check_sweep(r, dir, entry, th);
            }
        } else if (r.experiment == "exact-spectrum") {
            for (const auto &entry : summary.at("results")) {
                check_spectrum(r, dir, entry);
            }
        }
        check_budget(r, dir);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::MissingArtifacts, std::string("summary is incomplete: ") + e.what());
    }
    return r;
}

std::string format_report(const VerifyReport &report) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-56s %12s %3s %11s %11s  %s\n", "check", "value", "", "threshold", "excess",
                  "result");
    out << line;
    for (const auto &c : report.rows) {
        const char *verdict = c.pass ? "PASS" : (c.gating ? "FAIL" : "MISS (not gating)");
        std::snprintf(line, sizeof line, "%-56s %12.4e %3s %11.4e %11.4e  %s\n", c.name.c_str(), c.value,
                      c.upper ? "<=" : ">=", c.threshold, excess(c), verdict);
        out << line;
    }
    out << (report.passed() ? "PASS" : "FAIL") << " (" << report.experiment << ")\n";
    return out.str();
}

}  // namespace kitaev
