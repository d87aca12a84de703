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

#include "pauli_lre/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace pauli_lre {

namespace {

void check_same_dim(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("dimension mismatch: " + std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
    }
}

// Hermitian PSD square root; eigenvalues are clamped at zero first.
ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXd eigenvalues_of(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver did not converge");
    return es.eigenvalues();
}

bool is_maximally_mixed(const ComplexMatrix &m) {
    const double inv_d = 1.0 / static_cast<double>(m.rows());
    ComplexMatrix diff = m;
    diff.diagonal().array() -= inv_d;
    return diff.cwiseAbs().maxCoeff() <= 1e-13;
}

double clamp_unit(double f) { return std::clamp(f, 0.0, 1.0); }

}  // namespace

double hs_squared_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    check_same_dim(a, b);
    return (a - b).squaredNorm();
}

double fidelity_general(const DensityMatrix &rho, const DensityMatrix &sigma) {
    check_same_dim(rho.matrix(), sigma.matrix());
    const ComplexMatrix root = psd_sqrt(rho.matrix());
    ComplexMatrix inner = root * sigma.matrix() * root;
    inner = (0.5 * (inner + inner.adjoint())).eval();
    const double trace_root = eigenvalues_of(inner).cwiseMax(0.0).cwiseSqrt().sum();
    return clamp_unit(trace_root * trace_root);
}

double fidelity_with_maximally_mixed(const DensityMatrix &sigma) {
    const double d = static_cast<double>(sigma.dim());
    const double s = (eigenvalues_of(sigma.matrix()).cwiseMax(0.0) / d).cwiseSqrt().sum();
    return clamp_unit(s * s);
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    check_same_dim(rho.matrix(), sigma.matrix());
    const ComplexMatrix &r = rho.matrix();
    if (is_maximally_mixed(r)) return fidelity_with_maximally_mixed(sigma);

    // Pure rho = |psi><psi|: any column with nonzero diagonal is psi * conj(psi_j).
    const double purity = r.squaredNorm();
    if (purity >= 1.0 - 1e-12) {
        Eigen::Index j = 0;
        r.diagonal().real().maxCoeff(&j);
        const Eigen::VectorXcd column = r.col(j);
        const double f = (column.adjoint() * sigma.matrix() * column)(0, 0).real() / r(j, j).real();
        return clamp_unit(f);
    }
    return fidelity_general(rho, sigma);
}

double predicted_mse_dense(const DensityMatrix &rho, double copies_per_projector, CovarianceModel model) {
    const QubitCount n = rho.qubits();
    if (n.value() > kMaxPredictorQubits) {
        throw ValidationError("predicted_mse_dense materializes the 6^n x 4^n design matrix and is limited to n <= " +
                              std::to_string(kMaxPredictorQubits));
    }
    if (!(copies_per_projector > 0.0)) throw ValidationError("N0 must be positive");

    const auto d = static_cast<Eigen::Index>(n.dim());
    const auto basis = static_cast<Eigen::Index>(n.basis_size());
    const auto settings = static_cast<Eigen::Index>(n.setting_count());

    // Row (w, s) of X is Gamma^{(w,s)}, the Kronecker product of the
    // single-qubit eigenprojector coefficient vectors, qubit 1 outermost.
    Eigen::MatrixXd x(settings * d, basis);
    for (Eigen::Index w = 0; w < settings; ++w) {
        const std::vector<Axis> axes = setting_axes(n, static_cast<std::uint64_t>(w));
        for (Eigen::Index s = 0; s < d; ++s) {
            Eigen::VectorXd row = Eigen::VectorXd::Ones(1);
            for (int k = 0; k < n.value(); ++k) {
                const int bit = static_cast<int>((s >> (n.value() - 1 - k)) & 1);
                const auto g = gamma_single_qubit(axes[k], bit ? -1 : 1);
                Eigen::VectorXd next(row.size() * 4);
                for (Eigen::Index a = 0; a < row.size(); ++a) {
                    for (int b = 0; b < 4; ++b) next(a * 4 + b) = row(a) * g[b];
                }
                row = std::move(next);
            }
            x.row(w * d + s) = row.transpose();
        }
    }

    const ThetaVector theta = dense_to_theta(rho.as_hermitian());
    const Eigen::VectorXd p = x * Eigen::Map<const Eigen::VectorXd>(theta.values().data(), basis);

    Eigen::MatrixXd cov;
    switch (model) {
        case CovarianceModel::Diagonal:
            cov = x.transpose() * (p.array() - p.array().square()).matrix().asDiagonal() * x;
            break;
        case CovarianceModel::UniformFirstOrder:
            cov = x.transpose() * x / static_cast<double>(d);
            break;
        case CovarianceModel::Multinomial:
            cov = Eigen::MatrixXd::Zero(basis, basis);
            for (Eigen::Index w = 0; w < settings; ++w) {
                const auto xw = x.middleRows(w * d, d);
                const Eigen::VectorXd pw = p.segment(w * d, d);
                const Eigen::MatrixXd block = Eigen::MatrixXd(pw.asDiagonal()) - pw * pw.transpose();
                cov += xw.transpose() * block * xw;
            }
            break;
    }
    const Eigen::MatrixXd xtx_inv = (x.transpose() * x).inverse();
    const double trace = (xtx_inv * cov * xtx_inv).trace();
    // M / (N d) with N = M * N0.
    return trace / (static_cast<double>(d) * copies_per_projector);
}

double predicted_mse_max_mixed(QubitCount n, double copies_per_projector) {
    return std::pow(5.0 / 6.0, n.value()) / copies_per_projector;
}

double predicted_infidelity_max_mixed(QubitCount n, double copies_per_projector) {
    return std::pow(5.0 / 3.0, n.value()) / (4.0 * copies_per_projector);
}

double copies_per_projector(QubitCount n, std::uint64_t shots_per_setting) {
    return static_cast<double>(shots_per_setting) / static_cast<double>(n.dim());
}

ErrorReport evaluate_errors(const StateDescriptor &truth, const DensityMatrix &rho, double copies_per_projector) {
    const DensityMatrix exact = dense_state(truth);
    if (exact.dim() != rho.dim()) {
        throw ValidationError("estimate and true state have different qubit counts");
    }
    ErrorReport report;
    report.n = truth.n.value();
    report.copies_per_projector = copies_per_projector;
    report.hs_squared_rho = hs_squared_distance(rho, exact);
    report.infidelity = 1.0 - fidelity(exact, rho);
    if (truth.kind == StateKind::MaximallyMixed) {
        report.predicted_hs = predicted_mse_max_mixed(truth.n, copies_per_projector);
        report.predicted_infidelity = predicted_infidelity_max_mixed(truth.n, copies_per_projector);
        report.predictor = "max-mixed-closed-form";
    } else if (truth.n.value() <= kMaxPredictorQubits) {
        report.predicted_hs = predicted_mse_dense(exact, copies_per_projector, CovarianceModel::Diagonal);
        report.predictor = "dense-diagonal";
    } else {
        report.predictor = "none";
    }
    return report;
}

ErrorReport evaluate_errors(const StateDescriptor &truth, const HermitianMatrix &mu, const DensityMatrix &rho,
                            double copies_per_projector) {
    ErrorReport report = evaluate_errors(truth, rho, copies_per_projector);
    const DensityMatrix exact = dense_state(truth);
    report.hs_squared_mu = hs_squared_distance(mu, exact);
    return report;
}

}  // namespace pauli_lre
