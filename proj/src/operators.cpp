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

#include "pauli_lre/operators.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace pauli_lre {

namespace {

QubitCount qubits_of_dim(Eigen::Index d) {
    if (d <= 0 || !is_power_of_two(static_cast<std::size_t>(d))) {
        throw ValidationError("dimension " + std::to_string(d) + " is not a power of two");
    }
    return QubitCount(std::countr_zero(static_cast<std::uint64_t>(d)));
}

}  // namespace

ThetaVector::ThetaVector(QubitCount n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != n_.basis_size()) {
        throw ValidationError("theta vector must have 4^n = " + std::to_string(n_.basis_size()) +
                              " entries, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw ValidationError("theta vector has a non-finite entry");
    }
}

double hermiticity_defect(const ComplexMatrix &m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ValidationError("Hermitian matrix must be square and non-empty");
    }
    const double defect = hermiticity_defect(m_);
    if (!(defect <= kHermitianTolerance)) {
        throw ValidationError("matrix is not Hermitian (asymmetry " + std::to_string(defect) + ")");
    }
}

QubitCount HermitianMatrix::qubits() const { return qubits_of_dim(dim()); }

DensityMatrix DensityMatrix::checked(ComplexMatrix m) {
    HermitianMatrix h(std::move(m));
    const double tr = h.trace();
    if (std::abs(tr - 1.0) > kTraceTolerance) {
        throw ValidationError("density matrix trace is " + std::to_string(tr) + ", expected 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    if (es.eigenvalues().minCoeff() < kEigenvalueFloor) {
        throw ValidationError("density matrix has negative eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()));
    }
    return DensityMatrix(h.matrix());
}

DensityMatrix DensityMatrix::from_spectrum(const ComplexMatrix &eigenvectors, std::span<const double> probabilities) {
    const auto d = eigenvectors.rows();
    if (eigenvectors.cols() != d || static_cast<std::size_t>(d) != probabilities.size()) {
        throw ValidationError("spectrum and eigenvector dimensions disagree");
    }
    double total = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) throw ValidationError("spectral weights must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-8) throw ValidationError("spectral weights must sum to 1");

    // Only columns with nonzero weight contribute.
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < d; ++k) {
        if (probabilities[k] > 0.0) support.push_back(k);
    }
    ComplexMatrix scaled(d, static_cast<Eigen::Index>(support.size()));
    for (std::size_t c = 0; c < support.size(); ++c) {
        scaled.col(c) = eigenvectors.col(support[c]) * std::sqrt(probabilities[support[c]]);
    }
    ComplexMatrix rho = scaled * scaled.adjoint();
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::assume_physical(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

QubitCount DensityMatrix::qubits() const { return qubits_of_dim(dim()); }

}  // namespace pauli_lre
