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

// Estimation-error functionals and their asymptotic predictions.
//
// Shot accounting: N0 below is the number of copies per measurement
// projector, N = 6^n N0 in total. Each of the 3^n settings measures its d
// projectors simultaneously, so a setting receives d * N0 shots. Use
// copies_per_projector() to convert from a record's shots per setting.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pauli_lre/operators.hpp"
#include "pauli_lre/simulator.hpp"

namespace pauli_lre {

/// Tr((a - b)^2) = sum |a_rc - b_rc|^2. Throws ValidationError on dimension mismatch.
double hs_squared_distance(const ComplexMatrix &a, const ComplexMatrix &b);

template <typename A, typename B>
double hs_squared_distance(const A &a, const B &b) {
    return hs_squared_distance(a.matrix(), b.matrix());
}

/// F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
/// Takes the closed forms when rho is maximally mixed or pure.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

/// The spectral formula with no shortcuts.
double fidelity_general(const DensityMatrix &rho, const DensityMatrix &sigma);

/// F(I/d, sigma) = (sum_k sqrt(lambda_k(sigma) / d))^2.
double fidelity_with_maximally_mixed(const DensityMatrix &sigma);

/// How the frequency covariance P is modelled in predicted_mse_dense.
enum class CovarianceModel {
    /// P = diag(p_j - p_j^2): the asymptotic formula as usually written.
    Diagonal,
    /// P = I / d: first-order approximation that yields the closed forms.
    UniformFirstOrder,
    /// Per setting, diag(p_w) - p_w p_w^T: the exact multinomial covariance
    /// of simultaneously measured outcomes.
    Multinomial,
};

inline constexpr int kMaxPredictorQubits = 4;

/// E Tr(mu - rho)^2 ~ (M / (N d)) Tr[(X^T X)^{-1} X^T P X (X^T X)^{-1}]
/// with M = 6^n, N = M * N0, evaluated with an explicit X. n <= 4.
double predicted_mse_dense(const DensityMatrix &rho, double copies_per_projector,
                           CovarianceModel model = CovarianceModel::Diagonal);

/// (1/N0) (5/6)^n.
double predicted_mse_max_mixed(QubitCount n, double copies_per_projector);

/// (1/(4 N0)) (5/3)^n. Only meaningful for large N0, where mu is already physical.
double predicted_infidelity_max_mixed(QubitCount n, double copies_per_projector);

/// shots per setting / d.
double copies_per_projector(QubitCount n, std::uint64_t shots_per_setting);

struct ErrorReport {
    int n = 0;
    double copies_per_projector = 0.0;
    /// Absent when only the physical estimate is available.
    std::optional<double> hs_squared_mu;
    double hs_squared_rho = 0.0;
    double infidelity = 0.0;
    std::optional<double> predicted_hs;
    std::optional<double> predicted_infidelity;
    /// "max-mixed-closed-form", "dense-diagonal" or "none".
    std::string predictor;
};

/// Distances of an estimate (mu before, rho after positivity repair) to
/// the true state, with the applicable predictor.
ErrorReport evaluate_errors(const StateDescriptor &truth, const HermitianMatrix &mu, const DensityMatrix &rho,
                            double copies_per_projector);
ErrorReport evaluate_errors(const StateDescriptor &truth, const DensityMatrix &rho, double copies_per_projector);

}  // namespace pauli_lre
