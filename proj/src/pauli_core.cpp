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

#include "pauli_lre/pauli_core.hpp"

#include <cmath>

namespace pauli_lre {

namespace {

void check_basis_index(QubitCount n, std::uint64_t i) {
    if (i >= n.basis_size()) {
        throw ValidationError("basis index " + std::to_string(i) + " out of range for " +
                              std::to_string(n.value()) + " qubits");
    }
}

void check_setting_index(QubitCount n, std::uint64_t w) {
    if (w >= n.setting_count()) {
        throw ValidationError("setting index " + std::to_string(w) + " out of range for " +
                              std::to_string(n.value()) + " qubits");
    }
}

}  // namespace

char axis_char(Axis axis) noexcept {
    switch (axis) {
        case Axis::X:
            return 'X';
        case Axis::Y:
            return 'Y';
        case Axis::Z:
            return 'Z';
    }
    return '?';
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'X':
            return Axis::X;
        case 'Y':
            return Axis::Y;
        case 'Z':
            return Axis::Z;
        default:
            throw ValidationError(std::string("invalid Pauli axis '") + c + "'");
    }
}

std::vector<int> basis_digits(QubitCount n, std::uint64_t i) {
    check_basis_index(n, i);
    std::vector<int> digits(n.value());
    for (int k = n.value() - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(i & 3);
        i >>= 2;
    }
    return digits;
}

std::uint64_t encode_basis(QubitCount n, std::span<const int> digits) {
    if (digits.size() != static_cast<std::size_t>(n.value())) {
        throw ValidationError("basis digit string has wrong length");
    }
    std::uint64_t i = 0;
    for (int d : digits) {
        if (d < 0 || d > 3) throw ValidationError("basis digit out of range: " + std::to_string(d));
        i = (i << 2) | static_cast<std::uint64_t>(d);
    }
    return i;
}

int zero_count(QubitCount n, std::uint64_t i) {
    check_basis_index(n, i);
    int zeros = 0;
    for (int k = 0; k < n.value(); ++k, i >>= 2) zeros += (i & 3) == 0;
    return zeros;
}

std::vector<Axis> setting_axes(QubitCount n, std::uint64_t w) {
    check_setting_index(n, w);
    std::vector<Axis> axes(n.value());
    for (int k = n.value() - 1; k >= 0; --k) {
        axes[k] = static_cast<Axis>(w % 3 + 1);
        w /= 3;
    }
    return axes;
}

std::uint64_t encode_setting(std::span<const Axis> axes) {
    if (axes.empty() || axes.size() > static_cast<std::size_t>(QubitCount::kMax)) {
        throw ValidationError("setting must name between 1 and 16 axes");
    }
    std::uint64_t w = 0;
    for (Axis a : axes) w = w * 3 + (static_cast<std::uint64_t>(a) - 1);
    return w;
}

std::string setting_label(QubitCount n, std::uint64_t w) {
    std::string label;
    for (Axis a : setting_axes(n, w)) label.push_back(axis_char(a));
    return label;
}

std::uint64_t parse_setting_label(std::string_view label) {
    std::vector<Axis> axes;
    axes.reserve(label.size());
    for (char c : label) axes.push_back(axis_from_char(c));
    return encode_setting(axes);
}

std::array<double, 4> gamma_single_qubit(Axis axis, int sign) {
    if (sign != 1 && sign != -1) throw ValidationError("eigenvalue sign must be +1 or -1");
    const double h = 1.0 / std::sqrt(2.0);
    std::array<double, 4> g{h, 0.0, 0.0, 0.0};
    g[static_cast<std::size_t>(axis)] = sign * h;
    return g;
}

void nonzero_locations_into(QubitCount n, std::uint64_t w, std::span<std::uint64_t> out) noexcept {
    // place[p] = w digit of qubit (n - p) scaled to base-4 place value 4^p.
    std::array<std::uint64_t, QubitCount::kMax> place{};
    for (int p = 0; p < n.value(); ++p) {
        place[p] = (w % 3 + 1) << (2 * p);
        w /= 3;
    }
    out[0] = 0;
    for (std::uint64_t t = 1; t < out.size(); ++t) {
        const std::uint64_t low = t & (~t + 1);
        out[t] = out[t ^ low] + place[std::countr_zero(t)];
    }
}

std::vector<std::uint64_t> nonzero_locations(QubitCount n, std::uint64_t w) {
    check_setting_index(n, w);
    std::vector<std::uint64_t> out(n.dim());
    nonzero_locations_into(n, w, out);
    return out;
}

double xtx_diagonal(QubitCount n, std::uint64_t i) {
    return std::pow(3.0, zero_count(n, i));
}

OmegaEntry omega_entry_factor(int digit, int row_bit) {
    if (row_bit != 0 && row_bit != 1) throw ValidationError("row bit must be 0 or 1");
    const double parity = row_bit ? -1.0 : 1.0;
    switch (digit) {
        case 0:
            return {1.0, row_bit};
        case 1:
            return {1.0, 1 - row_bit};
        case 2:
            return {std::complex<double>(0.0, -parity), 1 - row_bit};
        case 3:
            return {parity, row_bit};
        default:
            throw ValidationError("Pauli digit out of range: " + std::to_string(digit));
    }
}

OmegaPattern omega_pattern(QubitCount n, std::uint64_t i) {
    check_basis_index(n, i);
    OmegaPattern pattern{0, 0, 1.0};
    for (int p = 0; p < n.value(); ++p, i >>= 2) {
        const int digit = static_cast<int>(i & 3);
        const OmegaEntry row0 = omega_entry_factor(digit, 0);
        const OmegaEntry row1 = omega_entry_factor(digit, 1);
        if (row0.column_bit == 1) pattern.flip_mask |= std::uint64_t{1} << p;
        if (row1.value == -row0.value) pattern.sign_mask |= std::uint64_t{1} << p;
        pattern.phase *= row0.value;
    }
    return pattern;
}

std::vector<double> walsh_hadamard_transformed(std::span<const double> v) {
    std::vector<double> u(v.begin(), v.end());
    walsh_hadamard_transform(std::span<double>(u));
    return u;
}

}  // namespace pauli_lre
