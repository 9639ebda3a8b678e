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

// Command-line front end: run experiments from config files, verify result
// directories, dump lattices and print gate budgets.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kitaev/config.hpp"
#include "kitaev/error.hpp"
#include "kitaev/experiments.hpp"
#include "kitaev/lattice.hpp"
#include "kitaev/manifest.hpp"
#include "kitaev/verify.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kResource = 3, kVerify = 4 };

int exit_code_for(kitaev::ErrorCode code) {
    using kitaev::ErrorCode;
    switch (code) {
    case ErrorCode::ConfigInvalid:
    case ErrorCode::DimensionTooSmall:
    case ErrorCode::UnreachableSector:
    case ErrorCode::BondNotInLattice:
    case ErrorCode::ParamCountMismatch:
        return kConfig;
    case ErrorCode::ResourceLimit:
    case ErrorCode::SizeTooLarge:
        return kResource;
    case ErrorCode::MissingArtifacts:
        return kVerify;
    default:
        return kFailure;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Ground-state preparation experiments for the honeycomb Kitaev model"};
    app.set_version_flag("--version", kitaev::library_version());
    app.require_subcommand(1);

    std::string config_path, output_dir, results_dir, dump_path;
    int workers = -1;
    bool quiet = false;
    int lx = 2, ly = 2;

    auto *run = app.add_subcommand("run", "Run the experiment described by a config file");
    run->add_option("config", config_path, "Config file (JSON)")->required();
    run->add_option("-o,--output", output_dir, "Override the output directory");
    run->add_option("-j,--workers", workers, "Worker threads for seed sweeps (0 = all cores)")->check(CLI::Range(0, 256));
    run->add_flag("-q,--quiet", quiet, "No progress messages");

    auto *verify = app.add_subcommand("verify", "Re-check the acceptance thresholds of a results directory");
    verify->add_option("dir", results_dir, "Results directory")->required();

    auto *dump = app.add_subcommand("lattice-dump", "Print the lattice description as JSON");
    dump->add_option("--lx", lx, "Cells along x")->required();
    dump->add_option("--ly", ly, "Cells along y")->required();
    dump->add_option("-o,--output", dump_path, "Write to a file instead of stdout");

    auto *noise = app.add_subcommand("noise-report", "Print the gate budget and fidelity estimate of a config");
    noise->add_option("config", config_path, "Config file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*run) {
            kitaev::RunConfig cfg = kitaev::load_config(config_path);
            if (!output_dir.empty()) {
                cfg.output_dir = output_dir;
            }
            if (workers >= 0) {
                cfg.workers = workers;
            }
            kitaev::LogFn log;
            if (!quiet) {
                log = [](const std::string &msg) { std::cerr << msg << std::endl; };
            }
            kitaev::run_experiment(cfg, log);
            std::cout << "wrote " << cfg.output_dir.string() << "\n";
            return kOk;
        }
        if (*verify) {
            const kitaev::VerifyReport report = kitaev::verify_results(results_dir);
            std::cout << kitaev::format_report(report);
            return report.passed() ? kOk : kVerify;
        }
        if (*dump) {
            const std::string text = kitaev::to_json(kitaev::build_torus(lx, ly)).dump(2) + "\n";
            if (dump_path.empty()) {
                std::cout << text;
            } else {
                std::FILE *f = std::fopen(dump_path.c_str(), "w");
                if (f == nullptr) {
                    throw kitaev::Error(kitaev::ErrorCode::IoError, "cannot write " + dump_path);
                }
                std::fputs(text.c_str(), f);
                std::fclose(f);
            }
            return kOk;
        }
        if (*noise) {
            const kitaev::RunConfig cfg = kitaev::load_config(config_path);
            const kitaev::NoiseReport report = kitaev::run_noise_report(cfg);
            std::cout << kitaev::noise_table(report, cfg.noise);
            return kOk;
        }
    } catch (const kitaev::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
