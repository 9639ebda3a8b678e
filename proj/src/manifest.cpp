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

#include "kitaev/manifest.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <Eigen/Core>
#include <openssl/evp.h>

#include "kitaev/error.hpp"

#ifndef KITAEV_VERSION
#define KITAEV_VERSION "0.0.0"
#endif

namespace kitaev {

namespace {

class Sha256 {
  public:
    Sha256() : ctx_(EVP_MD_CTX_new()) {
        if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
            EVP_MD_CTX_free(ctx_);
            throw Error(ErrorCode::IoError, "cannot initialize SHA-256");
        }
    }
    ~Sha256() {
        EVP_MD_CTX_free(ctx_);
    }
    Sha256(const Sha256 &) = delete;
    Sha256 &operator=(const Sha256 &) = delete;

    void update(const void *data, std::size_t len) {
        EVP_DigestUpdate(ctx_, data, len);
    }

    std::string hex() {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_, md.data(), &len);
        std::ostringstream out;
        for (unsigned int k = 0; k < len; ++k) {
            out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
        }
        return out.str();
    }

  private:
    EVP_MD_CTX *ctx_;
};

}  // namespace

std::string library_version() {
    return KITAEV_VERSION;
}

std::string sha256_hex(std::string_view data) {
    Sha256 h;
    h.update(data.data(), data.size());
    return h.hex();
}

std::string sha256_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot read " + path.string());
    }
    Sha256 h;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot create " + dir_.string() + ": " + ec.message());
    }
}

void ArtifactWriter::write(const std::string &name, const std::string &content) {
    if (name.empty() || name.find('/') != std::string::npos || name.find('\\') != std::string::npos ||
        name == "." || name == "..") {
        throw Error(ErrorCode::IoError, "artifact name \"" + name + "\" is not a plain file name");
    }
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + (dir_ / name).string());
    }
    if (std::find(files_.begin(), files_.end(), name) == files_.end()) {
        files_.push_back(name);
    }
}

void ArtifactWriter::write_json(const std::string &name, const nlohmann::json &doc) {
    write(name, doc.dump(2) + "\n");
}

void ArtifactWriter::write_manifest(const nlohmann::json &config, double wall_seconds) {
    nlohmann::json files = nlohmann::json::array();
    for (const auto &name : files_) {
        files.push_back({{"name", name},
                         {"sha256", sha256_file(dir_ / name)},
                         {"bytes", std::filesystem::file_size(dir_ / name)}});
    }
    nlohmann::json manifest{
        {"tool", "kitaev"},
        {"version", library_version()},
        {"config", config},
        {"config_sha256", sha256_hex(config.dump())},
        {"files", files},
        {"wall_time_seconds", wall_seconds},
        {"build",
         {{"compiler", __VERSION__},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
    };
    std::ofstream out(dir_ / "manifest.json", std::ios::trunc);
    out << manifest.dump(2) << "\n";
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write manifest");
    }
}

}  // namespace kitaev
