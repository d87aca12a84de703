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

// True states, exact Pauli-setting outcome probabilities and multinomial
// shot sampling.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pauli_lre/operators.hpp"
#include "pauli_lre/pauli_core.hpp"
#include "pauli_lre/rng.hpp"

namespace pauli_lre {

/// randomDensity states and denseToTheta are limited to n <= 8.
inline constexpr int kMaxDenseThetaQubits = 8;
/// Dense d x d storage ceiling (n = 12 is a 4096 x 4096 complex matrix).
inline constexpr int kMaxDenseQubits = 12;

enum class StateKind { MaximallyMixed, Ghz, ProductZ, RandomDensity };

struct StateDescriptor {
    StateKind kind;
    QubitCount n;
    /// ProductZ: computational basis label, qubit 1 in the most significant bit.
    std::uint64_t bits = 0;
    /// RandomDensity: seed of the Ginibre draw.
    std::uint64_t seed = 0;

    static StateDescriptor maximally_mixed(QubitCount n) { return {StateKind::MaximallyMixed, n}; }
    static StateDescriptor ghz(QubitCount n) { return {StateKind::Ghz, n}; }
    static StateDescriptor product_z(QubitCount n, std::uint64_t bits);
    static StateDescriptor random_density(QubitCount n, std::uint64_t seed);

    /// Parses "maxmixed", "ghz", "productz:<0/1 string, qubit 1 first>" or
    /// "random:<seed>".
    static StateDescriptor parse(std::string_view text, QubitCount n);
    std::string to_string() const;
};

/// Dense matrix of the state. Throws ValidationError above the dense limits.
DensityMatrix dense_state(const StateDescriptor &state);

/// theta_i = Tr(rho Omega_i) for all 4^n basis operators, O(8^n).
ThetaVector dense_to_theta(const HermitianMatrix &rho);

/// p[s] = Gamma^{(w,s)} . theta for one setting. Throws ValidationError if
/// the result is not a probability vector to 1e-8.
std::vector<double> theta_to_probabilities(const ThetaVector &theta, std::uint64_t w);

/// Outcome probabilities of setting w. Closed forms for all kinds except
/// RandomDensity, which goes through dense_to_theta.
std::vector<double> exact_probabilities(const StateDescriptor &state, std::uint64_t w);

/// Per-setting outcome frequencies consumed by the least-squares step.
/// Implementations must be safe for concurrent calls to frequencies().
class FrequencySource {
   public:
    virtual ~FrequencySource() = default;
    virtual QubitCount qubits() const = 0;
    /// Writes the 2^n outcome frequencies of setting w into `out`.
    virtual void frequencies(std::uint64_t w, std::span<double> out) const = 0;
};

/// Infinite-shot frequencies of a state. For RandomDensity theta is computed
/// once at construction.
class ExactFrequencies final : public FrequencySource {
   public:
    explicit ExactFrequencies(StateDescriptor state);

    QubitCount qubits() const override { return state_.n; }
    void frequencies(std::uint64_t w, std::span<double> out) const override;
    const StateDescriptor &state() const noexcept { return state_; }

   private:
    StateDescriptor state_;
    std::optional<ThetaVector> theta_;
};

/// Dense 3^n x 2^n table of frequencies, row per setting.
class FrequencyTable final : public FrequencySource {
   public:
    FrequencyTable(QubitCount n, std::vector<double> values);

    QubitCount qubits() const override { return n_; }
    void frequencies(std::uint64_t w, std::span<double> out) const override;
    std::span<const double> row(std::uint64_t w) const;

   private:
    QubitCount n_;
    std::vector<double> values_;
};

/// Outcome counts of every setting, all settings sharing one shot budget.
class MeasurementRecord {
   public:
    using Count = std::uint32_t;

    /// Validates sizes and that every setting's counts sum to `shots`.
    MeasurementRecord(QubitCount n, std::uint64_t shots, std::vector<Count> counts,
                      std::optional<std::uint64_t> seed = std::nullopt,
                      std::optional<std::string> state_label = std::nullopt);

    QubitCount qubits() const noexcept { return n_; }
    std::uint64_t shots() const noexcept { return shots_; }
    const std::optional<std::uint64_t> &seed() const noexcept { return seed_; }
    const std::optional<std::string> &state_label() const noexcept { return state_label_; }
    std::span<const Count> counts(std::uint64_t w) const;
    std::span<const Count> all_counts() const noexcept { return counts_; }

    friend bool operator==(const MeasurementRecord &, const MeasurementRecord &) = default;

   private:
    QubitCount n_;
    std::uint64_t shots_;
    std::vector<Count> counts_;
    std::optional<std::uint64_t> seed_;
    std::optional<std::string> state_label_;
};

/// View of a record as frequencies counts / shots.
class RecordFrequencies final : public FrequencySource {
   public:
    explicit RecordFrequencies(const MeasurementRecord &record) : record_(&record) {}

    QubitCount qubits() const override { return record_->qubits(); }
    void frequencies(std::uint64_t w, std::span<double> out) const override;

   private:
    const MeasurementRecord *record_;
};

/// Multinomial draw of `shots` outcomes by sequential conditional binomials.
void sample_multinomial(std::span<const double> probabilities, std::uint64_t shots, SplitMix64 &rng,
                        std::span<MeasurementRecord::Count> out);

/// Samples `shots` outcomes for every setting. Setting w draws from the
/// substream keyed by (seed, w), so the result is independent of `threads`.
MeasurementRecord sample_counts(const StateDescriptor &state, std::uint64_t shots, std::uint64_t seed,
                                unsigned threads = 1);

/// Same draws as sample_counts, produced on demand per setting and returned
/// as frequencies. Nothing of size 6^n is stored.
class SampledFrequencies final : public FrequencySource {
   public:
    SampledFrequencies(const StateDescriptor &state, std::uint64_t shots, std::uint64_t seed);

    QubitCount qubits() const override { return exact_.qubits(); }
    void frequencies(std::uint64_t w, std::span<double> out) const override;

   private:
    ExactFrequencies exact_;
    std::uint64_t shots_;
    std::uint64_t seed_;
};

}  // namespace pauli_lre
