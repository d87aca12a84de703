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

#include "pauli_lre/state_file.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

namespace pauli_lre {

namespace {

template <typename T>
void put_le(std::ostream &out, T value) {
    auto bytes = std::bit_cast<std::array<char, sizeof(T)>>(value);
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream &in) {
    std::array<char, sizeof(T)> bytes{};
    if (!in.read(bytes.data(), bytes.size())) throw ValidationError("state file is truncated");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
}

}  // namespace

void write_state_file(const ComplexMatrix &m, std::ostream &out) {
    if (m.rows() != m.cols() || m.rows() == 0 || !is_power_of_two(static_cast<std::size_t>(m.rows()))) {
        throw ValidationError("state file needs a square 2^n x 2^n matrix");
    }
    out.write(kStateFileMagic, sizeof(kStateFileMagic));
    put_le<std::uint32_t>(out, kStateFileVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(std::countr_zero(static_cast<std::uint64_t>(m.rows()))));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            put_le<double>(out, m(r, c).real());
            put_le<double>(out, m(r, c).imag());
        }
    }
}

void write_state_file(const ComplexMatrix &m, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_state_file(m, out);
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

ComplexMatrix read_state_file(std::istream &in) {
    char magic[sizeof(kStateFileMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kStateFileMagic, sizeof(magic)) != 0) {
        throw ValidationError("not a state file (bad magic)");
    }
    const auto version = get_le<std::uint32_t>(in);
    if (version != kStateFileVersion) {
        throw ValidationError("unsupported state file version " + std::to_string(version));
    }
    const auto n = get_le<std::uint32_t>(in);
    const QubitCount qubits(static_cast<int>(std::min<std::uint32_t>(n, 1000)));
    const auto d = static_cast<Eigen::Index>(qubits.dim());
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            const double re = get_le<double>(in);
            const double im = get_le<double>(in);
            m(r, c) = {re, im};
        }
    }
    return m;
}

ComplexMatrix read_state_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_state_file(in);
}

bool is_state_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    char magic[sizeof(kStateFileMagic)];
    return in.read(magic, sizeof(magic)) && std::memcmp(magic, kStateFileMagic, sizeof(magic)) == 0;
}

}  // namespace pauli_lre
