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

#include "kitaev/error.hpp"

namespace kitaev {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::QubitOutOfRange: return "QubitOutOfRange";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
        case ErrorCode::NoChainFound: return "NoChainFound";
        case ErrorCode::UnreachableSector: return "UnreachableSector";
        case ErrorCode::ParamCountMismatch: return "ParamCountMismatch";
        case ErrorCode::NonDifferentiableGate: return "NonDifferentiableGate";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::StalledConvergence: return "StalledConvergence";
        case ErrorCode::SizeTooLarge: return "SizeTooLarge";
        case ErrorCode::BondNotInLattice: return "BondNotInLattice";
        case ErrorCode::UnsupportedGate: return "UnsupportedGate";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
        case ErrorCode::MissingArtifacts: return "MissingArtifacts";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace kitaev
