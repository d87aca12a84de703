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

#include "pauli_lre/reconstruct.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>

#include "pauli_lre/parallel.hpp"

namespace pauli_lre {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kLowDigitBits = 0x5555555555555555ULL;

int nonzero_digit_count(std::uint64_t i) noexcept { return std::popcount((i | (i >> 1)) & kLowDigitBits); }

void check_dense_limit(QubitCount n) {
    if (n.value() <= kMaxReconstructQubits) return;
    const double gib = std::ldexp(16.0, 2 * n.value()) / std::ldexp(1.0, 30);
    throw ValidationError("refusing n = " + std::to_string(n.value()) + ": the dense d x d complex matrix needs " +
                          std::to_string(gib) + " GiB (limit n <= " + std::to_string(kMaxReconstructQubits) + ")");
}

// Settings per GEMM block in the paper-direct step 1 kernel.
constexpr Eigen::Index kDirectBlock = 64;

void accumulate_fast(const FrequencySource &source, QubitCount n, std::uint64_t begin, std::uint64_t end,
                     std::span<double> acc) {
    const std::uint64_t d = n.dim();
    std::vector<double> freq(d);
    std::vector<std::uint64_t> loc(d);
    for (std::uint64_t w = begin; w < end; ++w) {
        source.frequencies(w, freq);
        walsh_hadamard_transform(std::span<double>(freq));
        nonzero_locations_into(n, w, loc);
        for (std::uint64_t t = 0; t < d; ++t) acc[loc[t]] += freq[t];
    }
}

void accumulate_direct(const FrequencySource &source, QubitCount n, const Eigen::MatrixXd &signs, std::uint64_t begin,
                       std::uint64_t end, std::span<double> acc) {
    const auto d = static_cast<Eigen::Index>(n.dim());
    Eigen::MatrixXd block(d, kDirectBlock);
    Eigen::MatrixXd products(d, kDirectBlock);
    std::vector<std::uint64_t> loc(n.dim());
    for (std::uint64_t w0 = begin; w0 < end; w0 += kDirectBlock) {
        const auto width = static_cast<Eigen::Index>(std::min<std::uint64_t>(kDirectBlock, end - w0));
        for (Eigen::Index b = 0; b < width; ++b) {
            source.frequencies(w0 + b, std::span<double>(block.col(b).data(), n.dim()));
        }
        products.leftCols(width).noalias() = signs * block.leftCols(width);
        for (Eigen::Index b = 0; b < width; ++b) {
            nonzero_locations_into(n, w0 + b, loc);
            const double *column = products.col(b).data();
            for (Eigen::Index t = 0; t < d; ++t) acc[loc[t]] += column[t];
        }
    }
}

}  // namespace

std::string_view kernel_name(Kernel kernel) noexcept {
    return kernel == Kernel::Fast ? "fast" : "paper-direct";
}

Kernel parse_kernel(std::string_view name) {
    if (name == "fast") return Kernel::Fast;
    if (name == "paper-direct") return Kernel::PaperDirect;
    throw ValidationError("unknown kernel '" + std::string(name) + "' (expected fast or paper-direct)");
}

ThetaVector step_one_least_squares(const FrequencySource &source, const PipelineOptions &options) {
    const QubitCount n = source.qubits();
    const std::uint64_t settings = n.setting_count();
    const std::uint64_t size = n.basis_size();
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(options.threads), settings));

    Eigen::MatrixXd signs;
    if (options.kernel == Kernel::PaperDirect) {
        if (n.value() > kMaxDirectKernelQubits) {
            throw ValidationError("paper-direct kernel is limited to n <= " + std::to_string(kMaxDirectKernelQubits));
        }
        const auto d = static_cast<Eigen::Index>(n.dim());
        signs.resize(d, d);
        for (Eigen::Index s = 0; s < d; ++s) {
            for (Eigen::Index t = 0; t < d; ++t) {
                signs(t, s) = outcome_sign(static_cast<std::uint64_t>(s), static_cast<std::uint64_t>(t));
            }
        }
    }

    // Worker 0 accumulates straight into the result; the others get private
    // vectors that are added in ascending worker order.
    std::vector<double> theta(size, 0.0);
    std::vector<std::vector<double>> partials(workers - 1);
    parallel_for_chunks(settings, workers, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        std::span<double> acc = theta;
        if (worker > 0) {
            partials[worker - 1].assign(size, 0.0);
            acc = partials[worker - 1];
        }
        if (options.kernel == Kernel::Fast) {
            accumulate_fast(source, n, begin, end, acc);
        } else {
            accumulate_direct(source, n, signs, begin, end, acc);
        }
    });

    std::array<double, QubitCount::kMax + 1> inv_xtx{};
    const double scale = std::sqrt(std::ldexp(1.0, -n.value()));
    for (int z = 0; z <= n.value(); ++z) inv_xtx[z] = scale / std::pow(3.0, z);

    parallel_for_chunks(size, workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            double v = theta[i];
            for (const auto &p : partials) v += p[i];
            theta[i] = v * inv_xtx[n.value() - nonzero_digit_count(i)];
        }
    });
    return ThetaVector(n, std::move(theta));
}

ThetaVector step_one_least_squares(const MeasurementRecord &record, const PipelineOptions &options) {
    return step_one_least_squares(RecordFrequencies(record), options);
}

HermitianMatrix step_two_assemble(const ThetaVector &theta, const PipelineOptions &options) {
    const QubitCount n = theta.qubits();
    check_dense_limit(n);
    const std::uint64_t d = n.dim();
    const double scale = std::sqrt(std::ldexp(1.0, -n.value()));
    ComplexMatrix mu = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(options.threads), d));

    if (options.kernel == Kernel::Fast) {
        // For mask m, the basis indices sharing its nonzero pattern are
        // i(m, c): digit 1 or 2 where m is set, 0 or 3 elsewhere, chosen by c.
        // Entry (r, r ^ m) is sum_c theta_{i(m,c)} (-i)^{|c & m|} (-1)^{|c & r|}.
        parallel_for_chunks(d, workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
            std::vector<std::complex<double>> a(d);
            std::vector<std::uint64_t> index(d);
            static constexpr std::array<std::complex<double>, 4> kMinusIPowers{
                std::complex<double>(1, 0), std::complex<double>(0, -1), std::complex<double>(-1, 0),
                std::complex<double>(0, 1)};
            for (std::uint64_t m = begin; m < end; ++m) {
                std::uint64_t base = 0;
                for (int p = 0; p < n.value(); ++p) {
                    if ((m >> p) & 1) base |= std::uint64_t{1} << (2 * p);
                }
                index[0] = base;
                for (std::uint64_t c = 1; c < d; ++c) {
                    const int p = std::countr_zero(c);
                    const std::uint64_t step = ((m >> p) & 1 ? 1 : 3) << (2 * p);
                    index[c] = index[c & (c - 1)] + step;
                }
                for (std::uint64_t c = 0; c < d; ++c) {
                    a[c] = theta[index[c]] * kMinusIPowers[std::popcount(c & m) & 3];
                }
                walsh_hadamard_transform(std::span<std::complex<double>>(a));
                for (std::uint64_t r = 0; r < d; ++r) {
                    mu(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ m)) = scale * a[r];
                }
            }
        });
    } else {
        // Per-entry sums over the 2^n operators of each mask group.
        std::vector<std::vector<std::uint64_t>> groups(d);
        for (std::uint64_t i = 0; i < n.basis_size(); ++i) {
            std::uint64_t m = 0;
            std::uint64_t rest = i;
            for (int p = 0; p < n.value(); ++p, rest >>= 2) {
                const auto digit = rest & 3;
                if (digit == 1 || digit == 2) m |= std::uint64_t{1} << p;
            }
            groups[m].push_back(i);
        }
        parallel_for_chunks(d, workers, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
            std::vector<std::complex<double>> row(d);
            for (std::uint64_t m = begin; m < end; ++m) {
                std::fill(row.begin(), row.end(), std::complex<double>(0.0));
                for (std::uint64_t i : groups[m]) {
                    const OmegaPattern pattern = omega_pattern(n, i);
                    const std::complex<double> coeff = scale * theta[i] * pattern.phase;
                    for (std::uint64_t r = 0; r < d; ++r) {
                        row[r] += (std::popcount(r & pattern.sign_mask) & 1) ? -coeff : coeff;
                    }
                }
                for (std::uint64_t r = 0; r < d; ++r) {
                    mu(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r ^ m)) = row[r];
                }
            }
        });
    }
    return HermitianMatrix(std::move(mu));
}

std::vector<double> project_onto_simplex(std::span<const double> values) {
    if (values.empty()) throw ValidationError("cannot project an empty vector onto the simplex");
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> out(values.begin(), values.end());
    // Trace deficit; zero for trace-1 input.
    double deficit = 1.0 - std::accumulate(values.begin(), values.end(), 0.0);
    std::size_t remaining = values.size();
    for (std::size_t k = 0; k < order.size(); ++k, --remaining) {
        const double v = values[order[k]];
        const double share = deficit / static_cast<double>(remaining);
        if (v + share < 0.0) {
            deficit += v;
            out[order[k]] = 0.0;
            continue;
        }
        for (std::size_t j = k; j < order.size(); ++j) out[order[j]] = values[order[j]] + share;
        break;
    }
    return out;
}

DensityMatrix step_three_project(const HermitianMatrix &mu) {
    const double tr = mu.trace();
    if (std::abs(tr - 1.0) > 1e-8) {
        throw ValidationError("step three needs a trace-1 matrix, got trace " + std::to_string(tr));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mu.matrix());
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
    const Eigen::VectorXd &lambda = es.eigenvalues();
    if (lambda.minCoeff() >= 0.0) return DensityMatrix::assume_physical(mu.matrix());
    const std::vector<double> projected = project_onto_simplex(std::span<const double>(lambda.data(), lambda.size()));
    return DensityMatrix::from_spectrum(es.eigenvectors(), projected);
}

Reconstruction reconstruct(const FrequencySource &frequencies, const PipelineOptions &options) {
    check_dense_limit(frequencies.qubits());
    const auto start = Clock::now();
    StepTimings timings;

    auto t = Clock::now();
    ThetaVector theta = step_one_least_squares(frequencies, options);
    timings.step1_s = seconds_since(t);

    t = Clock::now();
    HermitianMatrix mu = step_two_assemble(theta, options);
    timings.step2_s = seconds_since(t);

    t = Clock::now();
    DensityMatrix rho = step_three_project(mu);
    timings.step3_s = seconds_since(t);

    timings.total_s = seconds_since(start);
    return Reconstruction{std::move(theta), std::move(mu), std::move(rho), timings};
}

Reconstruction reconstruct(const MeasurementRecord &record, const PipelineOptions &options) {
    return reconstruct(RecordFrequencies(record), options);
}

}  // namespace pauli_lre
