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

// Linear regression estimation of an n-qubit state from Pauli measurement
// frequencies, in three steps:
//
//   1. least squares:  theta_i = sum_{w,s} p_{w,s} gamma_i^{(w,s)} / 3^{zeroCount(i)}
//   2. assembly:       mu = sum_i theta_i Omega_i
//   3. projection:     rho = closest density matrix to mu (spectral simplex projection)
//
// Step 1 visits the 3^n settings; each touches only the 2^n coefficients at
// nonzero_locations(w), with values given by one Walsh-Hadamard transform of
// the setting's frequency vector. Step 2 visits the 2^n antidiagonal masks;
// each fills the d entries (r, r ^ mask).
//
// Steps 1 and 2 run on `threads` workers. Step 1 accumulates into one
// private vector per worker and merges them in worker order, so results are
// bitwise reproducible for a fixed worker count.

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pauli_lre/operators.hpp"
#include "pauli_lre/simulator.hpp"

namespace pauli_lre {

/// Fast: Walsh-Hadamard transforms, O(n 6^n) for step 1 and O(n 4^n) for
/// step 2. PaperDirect: the shared 2^n x 2^n sign matrix applied per setting
/// (O(12^n)) and per-entry Omega sums in step 2 (O(8^n)).
enum class Kernel { Fast, PaperDirect };

std::string_view kernel_name(Kernel kernel) noexcept;
Kernel parse_kernel(std::string_view name);

struct PipelineOptions {
    /// Worker count; 0 picks one per hardware thread.
    unsigned threads = 1;
    Kernel kernel = Kernel::Fast;
};

/// Largest n for which steps 2 and 3 allocate the dense d x d matrix.
inline constexpr int kMaxReconstructQubits = 12;
/// The paper-direct step 1 kernel stores a 2^n x 2^n matrix.
inline constexpr int kMaxDirectKernelQubits = 12;

ThetaVector step_one_least_squares(const FrequencySource &frequencies, const PipelineOptions &options = {});
ThetaVector step_one_least_squares(const MeasurementRecord &record, const PipelineOptions &options = {});

HermitianMatrix step_two_assemble(const ThetaVector &theta, const PipelineOptions &options = {});

/// Euclidean projection onto {x : x >= 0, sum x = 1}, by scanning the
/// values from smallest to largest and spreading the accumulated deficit
/// over the values that remain.
std::vector<double> project_onto_simplex(std::span<const double> values);

/// Closest density matrix to `mu` in Frobenius norm. Returns `mu` unchanged
/// when it is already positive semidefinite. Works for any dimension.
DensityMatrix step_three_project(const HermitianMatrix &mu);

struct StepTimings {
    double step1_s = 0.0;
    double step2_s = 0.0;
    double step3_s = 0.0;
    double total_s = 0.0;
};

struct Reconstruction {
    ThetaVector theta;
    HermitianMatrix mu;
    DensityMatrix rho;
    StepTimings timings;
};

Reconstruction reconstruct(const FrequencySource &frequencies, const PipelineOptions &options = {});
Reconstruction reconstruct(const MeasurementRecord &record, const PipelineOptions &options = {});

}  // namespace pauli_lre
