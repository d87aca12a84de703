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

#include "pauli_lre/simulator.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pauli_lre/parallel.hpp"

namespace pauli_lre {

namespace {

struct SettingMasks {
    std::uint64_t z = 0;  // qubits measured along Z
    int y_count = 0;
};

SettingMasks setting_masks(QubitCount n, std::uint64_t w) {
    SettingMasks m;
    for (int p = 0; p < n.value(); ++p, w /= 3) {
        const auto axis = static_cast<Axis>(w % 3 + 1);
        if (axis == Axis::Z) m.z |= std::uint64_t{1} << p;
        if (axis == Axis::Y) ++m.y_count;
    }
    return m;
}

void check_setting(QubitCount n, std::uint64_t w) {
    if (w >= n.setting_count()) {
        throw ValidationError("setting index " + std::to_string(w) + " out of range");
    }
}

// GHZ = (|0..0> + |1..1>)/sqrt(2). Expanding the outcome projector
// (x)_k (I + (-1)^{s_k} sigma_{w_k})/2, only two families of Pauli strings
// have nonzero expectation: even-weight Z strings (value 1) and the full
// string when no qubit is measured along Z (value Re(i^{#Y})).
void ghz_probabilities(QubitCount n, std::uint64_t w, std::span<double> out) {
    const SettingMasks m = setting_masks(n, w);
    const int z_weight = std::popcount(m.z);
    const double scale = 1.0 / static_cast<double>(n.dim());
    const double full_string = m.z != 0 ? 0.0 : (m.y_count % 2 ? 0.0 : (m.y_count % 4 == 0 ? 1.0 : -1.0));
    for (std::uint64_t s = 0; s < n.dim(); ++s) {
        double even_z = 1.0;
        if (z_weight > 0) {
            const std::uint64_t sz = s & m.z;
            even_z = std::ldexp(static_cast<double>((sz == 0) + (sz == m.z)), z_weight - 1);
        }
        const double parity = (std::popcount(s) & 1) ? -1.0 : 1.0;
        out[s] = scale * (even_z + parity * full_string);
    }
}

void product_z_probabilities(QubitCount n, std::uint64_t bits, std::uint64_t w, std::span<double> out) {
    const SettingMasks m = setting_masks(n, w);
    const double weight = std::ldexp(1.0, -(n.value() - std::popcount(m.z)));
    for (std::uint64_t s = 0; s < n.dim(); ++s) out[s] = ((s ^ bits) & m.z) ? 0.0 : weight;
}

void theta_probabilities_into(const ThetaVector &theta, std::uint64_t w, std::span<double> out,
                              std::span<std::uint64_t> locations) {
    const QubitCount n = theta.qubits();
    nonzero_locations_into(n, w, locations);
    for (std::uint64_t t = 0; t < n.dim(); ++t) out[t] = theta[locations[t]];
    walsh_hadamard_transform(out);
    const double norm = std::ldexp(1.0, -n.value());
    const double scale = std::sqrt(norm);
    double total = 0.0;
    for (double &p : out) {
        p *= scale;
        total += p;
    }
    for (std::uint64_t s = 0; s < n.dim(); ++s) {
        if (out[s] < -1e-8) {
            throw ValidationError("setting " + setting_label(n, w) + " outcome " + std::to_string(s) +
                                  " has negative probability " + std::to_string(out[s]));
        }
    }
    if (std::abs(total - 1.0) > 1e-8) {
        throw ValidationError("setting " + setting_label(n, w) + " probabilities sum to " + std::to_string(total));
    }
}

ComplexMatrix random_density_matrix(QubitCount n, std::uint64_t seed) {
    const auto d = static_cast<Eigen::Index>(n.dim());
    SplitMix64 rng = SplitMix64::substream(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = {re, im};
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (0.5 * (rho + rho.adjoint())).eval();
}

}  // namespace

StateDescriptor StateDescriptor::product_z(QubitCount n, std::uint64_t bits) {
    if (bits >= n.dim()) throw ValidationError("productz bit label has more bits than qubits");
    return {StateKind::ProductZ, n, bits, 0};
}

StateDescriptor StateDescriptor::random_density(QubitCount n, std::uint64_t seed) {
    if (n.value() > kMaxDenseThetaQubits) {
        throw ValidationError("random density states need dense storage and are limited to n <= " +
                              std::to_string(kMaxDenseThetaQubits));
    }
    return {StateKind::RandomDensity, n, 0, seed};
}

StateDescriptor StateDescriptor::parse(std::string_view text, QubitCount n) {
    if (text == "maxmixed") return maximally_mixed(n);
    if (text == "ghz") return ghz(n);
    if (text.starts_with("productz:")) {
        const std::string_view bits = text.substr(9);
        if (bits.size() != static_cast<std::size_t>(n.value())) {
            throw ValidationError("productz label must have exactly n = " + std::to_string(n.value()) + " bits");
        }
        std::uint64_t label = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') throw ValidationError("productz label must contain only 0 and 1");
            label = (label << 1) | static_cast<std::uint64_t>(c == '1');
        }
        return product_z(n, label);
    }
    if (text.starts_with("random:")) {
        const std::string_view digits = text.substr(7);
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
            throw ValidationError("random state seed must be a non-negative integer");
        }
        return random_density(n, seed);
    }
    throw ValidationError("unknown state '" + std::string(text) +
                          "' (expected maxmixed, ghz, productz:<bits> or random:<seed>)");
}

std::string StateDescriptor::to_string() const {
    switch (kind) {
        case StateKind::MaximallyMixed:
            return "maxmixed";
        case StateKind::Ghz:
            return "ghz";
        case StateKind::ProductZ: {
            std::string label = "productz:";
            for (int p = n.value() - 1; p >= 0; --p) label.push_back(((bits >> p) & 1) ? '1' : '0');
            return label;
        }
        case StateKind::RandomDensity:
            return "random:" + std::to_string(seed);
    }
    return "?";
}

DensityMatrix dense_state(const StateDescriptor &state) {
    const QubitCount n = state.n;
    if (n.value() > kMaxDenseQubits) {
        throw ValidationError("dense state storage is limited to n <= " + std::to_string(kMaxDenseQubits));
    }
    const auto d = static_cast<Eigen::Index>(n.dim());
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    switch (state.kind) {
        case StateKind::MaximallyMixed:
            m.diagonal().setConstant(1.0 / static_cast<double>(d));
            break;
        case StateKind::Ghz:
            m(0, 0) = m(0, d - 1) = m(d - 1, 0) = m(d - 1, d - 1) = 0.5;
            break;
        case StateKind::ProductZ:
            m(static_cast<Eigen::Index>(state.bits), static_cast<Eigen::Index>(state.bits)) = 1.0;
            break;
        case StateKind::RandomDensity:
            if (n.value() > kMaxDenseThetaQubits) {
                throw ValidationError("random density states are limited to n <= " +
                                      std::to_string(kMaxDenseThetaQubits));
            }
            m = random_density_matrix(n, state.seed);
            break;
    }
    return DensityMatrix::assume_physical(std::move(m));
}

ThetaVector dense_to_theta(const HermitianMatrix &rho) {
    const QubitCount n = rho.qubits();
    if (n.value() > kMaxDenseThetaQubits) {
        throw ValidationError("dense_to_theta is limited to n <= " + std::to_string(kMaxDenseThetaQubits));
    }
    const ComplexMatrix &m = rho.matrix();
    const double scale = std::sqrt(std::ldexp(1.0, -n.value()));
    std::vector<double> theta(n.basis_size());
    for (std::uint64_t i = 0; i < n.basis_size(); ++i) {
        const OmegaPattern pattern = omega_pattern(n, i);
        std::complex<double> acc = 0.0;
        for (std::uint64_t r = 0; r < n.dim(); ++r) {
            const std::complex<double> entry =
                m(static_cast<Eigen::Index>(r ^ pattern.flip_mask), static_cast<Eigen::Index>(r));
            acc += (std::popcount(r & pattern.sign_mask) & 1) ? -entry : entry;
        }
        theta[i] = scale * (pattern.phase * acc).real();
    }
    return ThetaVector(n, std::move(theta));
}

std::vector<double> theta_to_probabilities(const ThetaVector &theta, std::uint64_t w) {
    const QubitCount n = theta.qubits();
    check_setting(n, w);
    std::vector<double> out(n.dim());
    std::vector<std::uint64_t> locations(n.dim());
    theta_probabilities_into(theta, w, out, locations);
    return out;
}

std::vector<double> exact_probabilities(const StateDescriptor &state, std::uint64_t w) {
    check_setting(state.n, w);
    std::vector<double> out(state.n.dim());
    ExactFrequencies(state).frequencies(w, out);
    return out;
}

ExactFrequencies::ExactFrequencies(StateDescriptor state) : state_(state) {
    if (state_.kind == StateKind::RandomDensity) {
        theta_ = dense_to_theta(dense_state(state_).as_hermitian());
    }
}

void ExactFrequencies::frequencies(std::uint64_t w, std::span<double> out) const {
    const QubitCount n = state_.n;
    switch (state_.kind) {
        case StateKind::MaximallyMixed:
            std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(n.dim()));
            return;
        case StateKind::Ghz:
            ghz_probabilities(n, w, out);
            return;
        case StateKind::ProductZ:
            product_z_probabilities(n, state_.bits, w, out);
            return;
        case StateKind::RandomDensity: {
            std::vector<std::uint64_t> locations(n.dim());
            theta_probabilities_into(*theta_, w, out, locations);
            return;
        }
    }
}

FrequencyTable::FrequencyTable(QubitCount n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != n_.setting_count() * n_.dim()) {
        throw ValidationError("frequency table must have 3^n x 2^n entries");
    }
}

std::span<const double> FrequencyTable::row(std::uint64_t w) const {
    check_setting(n_, w);
    return std::span<const double>(values_).subspan(w * n_.dim(), n_.dim());
}

void FrequencyTable::frequencies(std::uint64_t w, std::span<double> out) const {
    const auto r = row(w);
    std::copy(r.begin(), r.end(), out.begin());
}

MeasurementRecord::MeasurementRecord(QubitCount n, std::uint64_t shots, std::vector<Count> counts,
                                     std::optional<std::uint64_t> seed, std::optional<std::string> state_label)
    : n_(n), shots_(shots), counts_(std::move(counts)), seed_(seed), state_label_(std::move(state_label)) {
    if (shots_ < 1) throw ValidationError("shots per setting must be >= 1");
    if (shots_ > std::numeric_limits<Count>::max()) throw ValidationError("shots per setting exceed 2^32 - 1");
    const std::uint64_t d = n_.dim();
    if (counts_.size() != n_.setting_count() * d) {
        throw ValidationError("record must hold 3^n x 2^n counts, got " + std::to_string(counts_.size()));
    }
    for (std::uint64_t w = 0; w < n_.setting_count(); ++w) {
        const auto row = this->counts(w);
        const std::uint64_t total = std::accumulate(row.begin(), row.end(), std::uint64_t{0});
        if (total != shots_) {
            throw ValidationError("setting " + setting_label(n_, w) + " counts sum to " + std::to_string(total) +
                                  ", expected " + std::to_string(shots_));
        }
    }
}

std::span<const MeasurementRecord::Count> MeasurementRecord::counts(std::uint64_t w) const {
    check_setting(n_, w);
    return std::span<const Count>(counts_).subspan(w * n_.dim(), n_.dim());
}

void RecordFrequencies::frequencies(std::uint64_t w, std::span<double> out) const {
    const auto row = record_->counts(w);
    const double inv = 1.0 / static_cast<double>(record_->shots());
    for (std::size_t s = 0; s < row.size(); ++s) out[s] = row[s] * inv;
}

void sample_multinomial(std::span<const double> probabilities, std::uint64_t shots, SplitMix64 &rng,
                        std::span<MeasurementRecord::Count> out) {
    std::uint64_t remaining = shots;
    double mass = 1.0;
    const std::size_t last = probabilities.size() - 1;
    for (std::size_t s = 0; s < probabilities.size(); ++s) {
        std::uint64_t c = 0;
        if (remaining > 0) {
            if (s == last) {
                c = remaining;
            } else {
                const double q = mass > 0.0 ? std::clamp(probabilities[s] / mass, 0.0, 1.0) : 1.0;
                if (q >= 1.0) {
                    c = remaining;
                } else if (q > 0.0) {
                    std::binomial_distribution<std::uint64_t> binomial(remaining, q);
                    c = binomial(rng);
                }
            }
        }
        out[s] = static_cast<MeasurementRecord::Count>(c);
        remaining -= c;
        mass -= probabilities[s];
    }
}

MeasurementRecord sample_counts(const StateDescriptor &state, std::uint64_t shots, std::uint64_t seed,
                                unsigned threads) {
    if (shots < 1) throw ValidationError("shots per setting must be >= 1");
    if (shots > std::numeric_limits<MeasurementRecord::Count>::max()) {
        throw ValidationError("shots per setting exceed 2^32 - 1");
    }
    const QubitCount n = state.n;
    const std::uint64_t d = n.dim();
    const ExactFrequencies exact(state);
    std::vector<MeasurementRecord::Count> counts(n.setting_count() * d);
    parallel_for_chunks(n.setting_count(), resolve_threads(threads),
                        [&](unsigned, std::uint64_t begin, std::uint64_t end) {
                            std::vector<double> p(d);
                            for (std::uint64_t w = begin; w < end; ++w) {
                                exact.frequencies(w, p);
                                SplitMix64 rng = SplitMix64::substream(seed, w);
                                sample_multinomial(p, shots, rng, std::span(counts).subspan(w * d, d));
                            }
                        });
    return MeasurementRecord(n, shots, std::move(counts), seed, state.to_string());
}

SampledFrequencies::SampledFrequencies(const StateDescriptor &state, std::uint64_t shots, std::uint64_t seed)
    : exact_(state), shots_(shots), seed_(seed) {
    if (shots < 1) throw ValidationError("shots per setting must be >= 1");
    if (shots > std::numeric_limits<MeasurementRecord::Count>::max()) {
        throw ValidationError("shots per setting exceed 2^32 - 1");
    }
}

void SampledFrequencies::frequencies(std::uint64_t w, std::span<double> out) const {
    const std::uint64_t d = exact_.qubits().dim();
    std::vector<double> p(d);
    std::vector<MeasurementRecord::Count> counts(d);
    exact_.frequencies(w, p);
    SplitMix64 rng = SplitMix64::substream(seed_, w);
    sample_multinomial(p, shots_, rng, counts);
    const double inv = 1.0 / static_cast<double>(shots_);
    for (std::uint64_t s = 0; s < d; ++s) out[s] = counts[s] * inv;
}

}  // namespace pauli_lre
