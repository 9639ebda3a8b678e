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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "kitaev/config.hpp"
#include "kitaev/error.hpp"
#include "kitaev/experiments.hpp"
#include "kitaev/manifest.hpp"
#include "kitaev/verify.hpp"

using namespace kitaev;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kSource = KITAEV_SOURCE_DIR;

fs::path scratch(const std::string &name) {
    fs::path p = fs::temp_directory_path() / ("kitaev_cli_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string read(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path &p, const std::string &text) {
    std::ofstream(p, std::ios::binary) << text;
}

json small_config(const fs::path &out, int epochs) {
    return {
        {"experiment", "gs-zero-field"},
        {"lattice", {{"Lx", 2}, {"Ly", 2}}},
        {"couplings", {{"label", "FM"}, {"J", -1.0}}},
        {"sector", "auto"},
        {"ansatz", {{"depth", 2}, {"vortex_layers", false}}},
        {"optimizer", {{"epochs", epochs}, {"learning_rate", 0.05}}},
        {"seeds", {0, 1}},
        {"workers", 1},
        {"output_dir", out.string()},
    };
}

ErrorCode code_of(const json &doc) {
    try {
        (void)config_from_json(doc);
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode::IoError;
}

std::string message_of(const json &doc) {
    try {
        (void)config_from_json(doc);
    } catch (const Error &e) {
        return e.what();
    }
    return "";
}

int run_cli(const std::string &args) {
    std::string cmd = std::string(KITAEV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("shipped configs load and round trip") {
    int count = 0;
    for (const auto &entry : fs::directory_iterator(kSource / "configs")) {
        if (entry.path().extension() != ".json" || entry.path().filename() == "schema.json") {
            continue;
        }
        CAPTURE(entry.path().string());
        auto cfg = load_config(entry.path());
        auto canonical = to_json(cfg);
        CHECK(to_json(config_from_json(canonical)) == canonical);
        ++count;
    }
    CHECK(count >= 7);
}

TEST_CASE("validation names the offending field") {
    auto good = small_config("unused", 5);
    CHECK_NOTHROW((void)config_from_json(good));

    auto unknown = good;
    unknown["lattice"]["Lz"] = 3;
    CHECK(code_of(unknown) == ErrorCode::ConfigInvalid);
    CHECK(message_of(unknown).find("/lattice") != std::string::npos);

    auto top = good;
    top["colour"] = "red";
    CHECK(code_of(top) == ErrorCode::ConfigInvalid);

    auto type = good;
    type["optimizer"]["epochs"] = "many";
    CHECK(message_of(type).find("/optimizer/epochs") != std::string::npos);

    auto odd = good;
    odd["sector"] = {{"vortex_count", 3}};
    CHECK(message_of(odd).find("/sector/vortex_count") != std::string::npos);

    auto small = good;
    small["lattice"]["Lx"] = 1;
    CHECK(code_of(small) != ErrorCode::IoError);

    auto lr = good;
    lr["optimizer"]["learning_rate"] = -0.1;
    CHECK(code_of(lr) == ErrorCode::ConfigInvalid);

    auto exp = good;
    exp["experiment"] = "gs-everything";
    CHECK(code_of(exp) == ErrorCode::ConfigInvalid);

    auto loops = good;
    loops["sector"] = {{"vortex_count", 0}, {"loop_signs", {1, 2}}};
    CHECK(message_of(loops).find("/sector/loop_signs/1") != std::string::npos);
}

TEST_CASE("syntax errors report line and column") {
    auto dir = scratch("syntax");
    fs::create_directories(dir);
    write(dir / "bad.json", "// comment\n{\n  \"experiment\": \"gs-zero-field\",\n  \"lattice\": {\"Lx\": 2,, }\n}\n");
    try {
        (void)load_config(dir / "bad.json");
        FAIL("expected ConfigInvalid");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ConfigInvalid);
        CHECK(std::string(e.what()).find("bad.json:4:") != std::string::npos);
    }
    CHECK_THROWS_AS((void)load_config(dir / "missing.json"), Error);
    fs::remove_all(dir);
}

TEST_CASE("hashing and artifact names") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    auto dir = scratch("writer");
    ArtifactWriter w(dir);
    w.write("a.txt", "abc");
    CHECK(sha256_file(dir / "a.txt") == sha256_hex("abc"));
    CHECK_THROWS_AS(w.write("../escape.txt", "x"), Error);
    CHECK_THROWS_AS(w.write("sub/dir.txt", "x"), Error);
    fs::remove_all(dir);
}

TEST_CASE("memory cap") {
    auto cfg = load_config(kSource / "configs" / "gs_zero_field_n18.json");
    ::setenv("KITAEV_MEMORY_CAP_MB", "100", 1);
    try {
        check_memory(cfg);
        FAIL("expected ResourceLimit");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::ResourceLimit);
    }
    ::unsetenv("KITAEV_MEMORY_CAP_MB");
    CHECK_NOTHROW(check_memory(cfg));
}

TEST_CASE("run, verify, tamper") {
    auto out = scratch("run");
    auto cfg = config_from_json(small_config(out, 500));
    run_experiment(cfg);
    for (const char *name : {"manifest.json", "summary.json", "budget.json", "trace_FM_seed0.csv",
                             "trace_FM_seed1.csv", "prep_report_FM_seed0.json"}) {
        CHECK(fs::exists(out / name));
    }
    auto report = verify_results(out);
    CHECK(report.passed());
    CHECK(format_report(report).find("PASS") != std::string::npos);

    SUBCASE("reruns are byte identical") {
        auto again = scratch("rerun");
        auto cfg2 = cfg;
        cfg2.output_dir = again;
        cfg2.workers = 2;
        run_experiment(cfg2);
        auto a = json::parse(read(out / "manifest.json"));
        auto b = json::parse(read(again / "manifest.json"));
        CHECK(a["config_sha256"] == b["config_sha256"]);
        CHECK(a["files"] == b["files"]);
        fs::remove_all(again);
    }
    SUBCASE("an energy below the oracle fails the bound") {
        auto csv = read(out / "trace_FM_seed0.csv");
        auto second_line = csv.find('\n') + 1;
        auto comma = csv.find(',', second_line);
        auto next = csv.find(',', comma + 1);
        csv.replace(comma + 1, next - comma - 1, "-100.0");
        write(out / "trace_FM_seed0.csv", csv);
        auto bad = verify_results(out);
        CHECK_FALSE(bad.passed());
        bool bound_failed = false, hash_failed = false;
        for (const auto &row : bad.rows) {
            if (!row.pass && row.name.find("variational") != std::string::npos) {
                bound_failed = true;
            }
            if (!row.pass && row.name.find("hash") != std::string::npos) {
                hash_failed = true;
            }
        }
        CHECK(bound_failed);
        CHECK(hash_failed);
    }
    SUBCASE("a missing artifact is reported") {
        fs::remove(out / "trace_FM_seed1.csv");
        try {
            (void)verify_results(out);
            FAIL("expected MissingArtifacts");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::MissingArtifacts);
        }
    }
    fs::remove_all(out);
}

TEST_CASE("a truncated run fails verification with its deltas") {
    auto out = scratch("short");
    run_experiment(config_from_json(small_config(out, 10)));
    auto report = verify_results(out);
    CHECK_FALSE(report.passed());
    bool infidelity_row = false;
    for (const auto &row : report.rows) {
        if (!row.pass && row.gating) {
            CHECK(excess(row) > 0.0);
            infidelity_row = infidelity_row || row.name.find("infidelity") != std::string::npos;
        }
    }
    CHECK(infidelity_row);
    CHECK(format_report(report).find("FAIL") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("command line exit codes") {
    auto dir = scratch("exit");
    fs::create_directories(dir);
    auto bad = small_config(dir / "never", 5);
    bad["optimizer"]["epochs"] = "lots";
    write(dir / "bad.json", bad.dump());
    CHECK(run_cli("run " + (dir / "bad.json").string()) == 2);
    CHECK_FALSE(fs::exists(dir / "never"));

    CHECK(run_cli("verify " + (dir / "nothing_here").string()) == 4);
    CHECK(run_cli("lattice-dump --lx 2 --ly 3 -o " + (dir / "lat.json").string()) == 0);
    auto lat = json::parse(read(dir / "lat.json"));
    CHECK(lat["N"] == 12);
    CHECK(run_cli("lattice-dump --lx 1 --ly 3") == 2);
    CHECK(run_cli("no-such-command") == 2);
    CHECK(run_cli("noise-report " + (kSource / "configs" / "gs_zero_field_n8.json").string()) == 0);

    auto good = small_config(dir / "out", 500);
    write(dir / "good.json", good.dump());
    CHECK(run_cli("run -q " + (dir / "good.json").string()) == 0);
    CHECK(run_cli("verify " + (dir / "out").string()) == 0);
    fs::remove_all(dir);
}
