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

// Measurement record text format ("pauli-lre/1"):
//
//   {"format":"pauli-lre/1","n":2,"shots":100,"seed":7,"state":"maxmixed"}
//   XX 26,24,27,23
//   XY 22,30,25,23
//   ...
//
// One line per setting in ascending SettingIndex order, the label naming
// the axis of qubit 1 first, counts in ascending OutcomeIndex order.
// "seed" and "state" may be null.

#pragma once

#include <filesystem>
#include <iosfwd>

#include "pauli_lre/simulator.hpp"

namespace pauli_lre {

inline constexpr const char *kRecordFormatTag = "pauli-lre/1";

void write_record(const MeasurementRecord &record, std::ostream &out);
/// Throws IoError if the file cannot be written.
void write_record(const MeasurementRecord &record, const std::filesystem::path &path);

/// Throws RecordFormatError naming the offending line.
MeasurementRecord read_record(std::istream &in);
/// Throws IoError if the file cannot be opened, RecordFormatError if it does not parse.
MeasurementRecord read_record(const std::filesystem::path &path);

}  // namespace pauli_lre
