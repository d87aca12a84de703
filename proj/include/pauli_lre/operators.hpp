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

// Value types shared by the simulator, the reconstruction pipeline and the
// metrics: the Pauli coefficient vector and dense d x d operators.

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "pauli_lre/pauli_core.hpp"

namespace pauli_lre {

using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;

/// Coefficients theta_i = Tr(rho Omega_i) over the 4^n Pauli basis.
class ThetaVector {
   public:
    ThetaVector(QubitCount n, std::vector<double> values);

    QubitCount qubits() const noexcept { return n_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::uint64_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }

   private:
    QubitCount n_;
    std::vector<double> values_;
};

/// Largest |A(r,c) - conj(A(c,r))|.
double hermiticity_defect(const ComplexMatrix &m);

/// Dense Hermitian operator of any dimension. Qubit operators have d = 2^n.
class HermitianMatrix {
   public:
    /// Throws ValidationError if `m` is not square or not Hermitian to 1e-10.
    explicit HermitianMatrix(ComplexMatrix m);

    const ComplexMatrix &matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    /// Throws ValidationError unless dim() is a power of two.
    QubitCount qubits() const;
    double trace() const { return m_.trace().real(); }

   private:
    ComplexMatrix m_;
};

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityMatrix {
   public:
    /// Full check: Hermitian, trace 1 and eigenvalues >= -1e-10.
    static DensityMatrix checked(ComplexMatrix m);
    /// Builds V diag(p) V^dagger; `probabilities` must lie on the simplex.
    static DensityMatrix from_spectrum(const ComplexMatrix &eigenvectors, std::span<const double> probabilities);
    /// No eigenvalue check. For callers that have already established physicality.
    static DensityMatrix assume_physical(ComplexMatrix m);

    const ComplexMatrix &matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }
    QubitCount qubits() const;

    HermitianMatrix as_hermitian() const { return HermitianMatrix(m_); }

   private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

}  // namespace pauli_lre
