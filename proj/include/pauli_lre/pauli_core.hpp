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

// Index arithmetic for the n-qubit Pauli operator basis and the Pauli
// measurement settings.
//
// Conventions used throughout the library (qubit 1 is always the most
// significant digit or bit):
//
//   BasisIndex    i in [0, 4^n), base-4 digits i_k in {0,1,2,3} naming
//                 sigma_{i_k}; Omega_i = 2^{-n/2} (x)_k sigma_{i_k}.
//   SettingIndex  w in [0, 3^n), base-3 digits (w_k - 1) with
//                 w_k in {1,2,3} = {X,Y,Z}.
//   OutcomeIndex  s in [0, 2^n), bit s_k = 0 for eigenvalue +1 and
//                 1 for eigenvalue -1.
//
// Subset masks t in [0, 2^n) follow the outcome bit layout, so bit
// position p of a mask belongs to qubit n - p.

#pragma once

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pauli_lre/errors.hpp"

namespace pauli_lre {

class QubitCount {
   public:
    static constexpr int kMax = 16;

    explicit QubitCount(int n) : n_(n) {
        if (n < 1 || n > kMax) {
            throw ValidationError("qubit count must be in [1, " + std::to_string(kMax) + "], got " +
                                  std::to_string(n));
        }
    }

    int value() const noexcept { return n_; }
    /// Hilbert space dimension d = 2^n.
    std::uint64_t dim() const noexcept { return std::uint64_t{1} << n_; }
    /// Number of Pauli basis operators, 4^n.
    std::uint64_t basis_size() const noexcept { return std::uint64_t{1} << (2 * n_); }
    /// Number of measurement settings, 3^n.
    std::uint64_t setting_count() const noexcept {
        std::uint64_t r = 1;
        for (int k = 0; k < n_; ++k) r *= 3;
        return r;
    }
    /// Number of Pauli eigenprojectors, 6^n.
    std::uint64_t projector_count() const noexcept { return setting_count() << n_; }

    friend bool operator==(QubitCount, QubitCount) = default;

   private:
    int n_;
};

enum class Axis : std::uint8_t { X = 1, Y = 2, Z = 3 };

char axis_char(Axis axis) noexcept;
Axis axis_from_char(char c);

// BasisIndex

std::vector<int> basis_digits(QubitCount n, std::uint64_t i);
std::uint64_t encode_basis(QubitCount n, std::span<const int> digits);
int zero_count(QubitCount n, std::uint64_t i);

// SettingIndex

std::vector<Axis> setting_axes(QubitCount n, std::uint64_t w);
std::uint64_t encode_setting(std::span<const Axis> axes);
std::string setting_label(QubitCount n, std::uint64_t w);
std::uint64_t parse_setting_label(std::string_view label);

// OutcomeIndex

/// prod_{k in t} (-1)^{s_k}.
inline int outcome_sign(std::uint64_t s, std::uint64_t t) noexcept {
    return (std::popcount(s & t) & 1) ? -1 : 1;
}

/// Coefficients of the single-qubit eigenprojector (I + sign*sigma_axis)/2
/// in the normalized basis {sigma_0..sigma_3}/sqrt(2).
std::array<double, 4> gamma_single_qubit(Axis axis, int sign);

/// Positions of the 2^n nonzero Gamma coefficients shared by every outcome of
/// setting `w`. Entry t has digit w_k on qubits whose bit is set in t and 0
/// elsewhere.
std::vector<std::uint64_t> nonzero_locations(QubitCount n, std::uint64_t w);

/// Non-allocating form; `out` must hold 2^n entries. No range checks.
void nonzero_locations_into(QubitCount n, std::uint64_t w, std::span<std::uint64_t> out) noexcept;

/// Diagonal entry of X^T X for the full 6^n Pauli set: 3^{zeroCount(i)}.
double xtx_diagonal(QubitCount n, std::uint64_t i);

struct OmegaEntry {
    std::complex<double> value;
    int column_bit;
};

/// The single nonzero entry of sigma_digit in row `row_bit`. The 2^{-n/2}
/// normalization is left to the caller.
OmegaEntry omega_entry_factor(int digit, int row_bit);

/// Row structure of 2^{n/2} Omega_i, folded from omega_entry_factor over all
/// qubits: row r has its single nonzero in column r ^ flip_mask with value
/// phase * (-1)^{popcount(r & sign_mask)}.
struct OmegaPattern {
    std::uint64_t flip_mask;
    std::uint64_t sign_mask;
    std::complex<double> phase;
};

OmegaPattern omega_pattern(QubitCount n, std::uint64_t i);

inline bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// In-place unnormalized Walsh-Hadamard transform:
///   u[t] = sum_s (-1)^{popcount(s & t)} v[s].
/// Works for real or complex element types.
template <typename T>
void walsh_hadamard_transform(std::span<T> v) {
    const std::size_t len = v.size();
    if (!is_power_of_two(len)) {
        throw ValidationError("Walsh-Hadamard transform length must be a power of two, got " +
                              std::to_string(len));
    }
    for (std::size_t h = 1; h < len; h <<= 1) {
        for (std::size_t i = 0; i < len; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const T x = v[j];
                const T y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

std::vector<double> walsh_hadamard_transformed(std::span<const double> v);

}  // namespace pauli_lre
