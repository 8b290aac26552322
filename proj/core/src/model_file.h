//
// Copyright 2026 The TextGuard Authors
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
//

// Versioned container shared by classifier and detector model files:
//   8-byte magic "TXTGUARD", u32 format version, u32 model kind,
//   kind-specific metadata, then LinearModel's spec and weight blocks.

#ifndef TEXTGUARD_SRC_MODEL_FILE_H_
#define TEXTGUARD_SRC_MODEL_FILE_H_

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "binary_io.h"
#include "textguard/errors.h"

namespace textguard::internal {

inline constexpr char kModelMagic[8] = {'T', 'X', 'T', 'G', 'U', 'A', 'R', 'D'};
inline constexpr std::uint32_t kModelFormatVersion = 1;

enum class ModelKind : std::uint32_t { kClassifier = 1, kDetector = 2 };

inline void WriteModelHeader(std::ostream& out, ModelKind kind) {
  out.write(kModelMagic, sizeof(kModelMagic));
  WriteU32(out, kModelFormatVersion);
  WriteU32(out, static_cast<std::uint32_t>(kind));
}

inline void ReadModelHeader(std::istream& in, ModelKind expected,
                            const std::string& source) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (in.gcount() != sizeof(magic) ||
      std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw ParseError(source, 0, "not a textguard model file (bad magic)");
  }
  std::uint32_t version = ReadU32(in);
  if (version != kModelFormatVersion) {
    throw ParseError(source, 0,
                     "unsupported model format version " + std::to_string(version));
  }
  std::uint32_t kind = ReadU32(in);
  if (kind != static_cast<std::uint32_t>(expected)) {
    throw ParseError(source, 0,
                     expected == ModelKind::kClassifier ? "expected a classifier model"
                                                        : "expected a detector model");
  }
}

}  // namespace textguard::internal

#endif  // TEXTGUARD_SRC_MODEL_FILE_H_
