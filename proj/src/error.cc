// Copyright 2026 The Docforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "docforge/error.hpp"

namespace docforge {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kPlacementInfeasible: return "PlacementInfeasible";
    case ErrorCode::kInfeasibleCellSize: return "InfeasibleCellSize";
    case ErrorCode::kMissingGlyph: return "MissingGlyph";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kNoOverlap: return "NoOverlap";
  }
  return "Unknown";
}

}  // namespace docforge
