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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kitaev {

struct CheckRow {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    /// True for "value <= threshold" checks, false for "value >= threshold".
    bool upper = true;
    /// Informational rows (stretch targets) do not affect the verdict.
    bool gating = true;
};

struct VerifyReport {
    std::string experiment;
    std::vector<CheckRow> rows;

    bool passed() const;
};

/// How far a check sits past its threshold (positive means failing).
inline double excess(const CheckRow &c) {
    return c.upper ? c.value - c.threshold : c.threshold - c.value;
}

/// Re-reads a results directory and re-checks its thresholds from the raw
/// CSV files rather than from the summary, so edited data is caught.
/// Throws MissingArtifacts when the summary, the manifest or a listed file
/// is absent.
VerifyReport verify_results(const std::filesystem::path &dir);

std::string format_report(const VerifyReport &report);

}  // namespace kitaev
