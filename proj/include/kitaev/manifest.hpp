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
#include <string_view>
#include <vector>

#include <json.hpp>

namespace kitaev {

std::string library_version();

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path &path);

/// Collects the artifacts of one run. Names must be plain file names, so
/// nothing lands outside the directory.
class ArtifactWriter {
  public:
    explicit ArtifactWriter(std::filesystem::path dir);

    void write(const std::string &name, const std::string &content);
    void write_json(const std::string &name, const nlohmann::json &doc);

    const std::filesystem::path &dir() const noexcept {
        return dir_;
    }
    const std::vector<std::string> &files() const noexcept {
        return files_;
    }

    /// manifest.json: version, canonical config and its hash, per-file
    /// SHA-256 and the wall time.
    void write_manifest(const nlohmann::json &config, double wall_seconds);

  private:
    std::filesystem::path dir_;
    std::vector<std::string> files_;
};

}  // namespace kitaev
