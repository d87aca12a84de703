// Copyright 2026 The pauli-lre Authors
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

// Binary dense-operator file, all integers and floats little-endian:
//
//   offset 0   8 bytes   magic "PLRESTAT"
//   offset 8   uint32    format version (1)
//   offset 12  uint32    n
//   offset 16  d*d pairs (float64 re, float64 im), row-major

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "pauli_lre/operators.hpp"

namespace pauli_lre {

inline constexpr char kStateFileMagic[8] = {'P', 'L', 'R', 'E', 'S', 'T', 'A', 'T'};
inline constexpr std::uint32_t kStateFileVersion = 1;

void write_state_file(const ComplexMatrix &m, std::ostream &out);
void write_state_file(const ComplexMatrix &m, const std::filesystem::path &path);

/// Throws ValidationError on a bad header or truncated payload.
ComplexMatrix read_state_file(std::istream &in);
ComplexMatrix read_state_file(const std::filesystem::path &path);

/// True if the file starts with the state-file magic.
bool is_state_file(const std::filesystem::path &path);

}  // namespace pauli_lre
