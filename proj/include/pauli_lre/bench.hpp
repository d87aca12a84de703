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

// Benchmark drivers behind the CLI: per-step timing versus qubit count,
// step-1 speed versus worker count, and Monte-Carlo estimation error versus
// N0. Each driver returns rows; the *_csv / read_*_csv pairs give the
// on-disk form.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pauli_lre/metrics.hpp"
#include "pauli_lre/reconstruct.hpp"
#include "pauli_lre/simulator.hpp"

namespace pauli_lre::bench {

struct TimingRow {
    int n = 0;
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;
    double total = 0.0;
    std::string kernel;
    unsigned threads = 1;
};

/// One warm-up run, then the per-step median of `repeats` runs.
TimingRow time_reconstruction(const FrequencySource &source, const PipelineOptions &options, int repeats = 3);

/// Infinite-shot records of `kind` (productz uses |0...0>, random uses seed 1)
/// for n in [n_min, n_max].
std::vector<TimingRow> bench_time(StateKind kind, int n_min, int n_max, const PipelineOptions &options,
                                  int repeats = 3);

struct GrowthFit {
    double log_slope = 0.0;
    /// exp(log_slope): fitted ratio t(n+1) / t(n).
    double factor = 0.0;
};

/// Least-squares fit of ln t against n.
GrowthFit fit_growth(std::span<const double> n, std::span<const double> t);

struct ThreadRow {
    unsigned threads = 1;
    double t1 = 0.0;
    double speed = 0.0;
};

struct ThreadSweep {
    std::vector<ThreadRow> rows;
    /// Largest |theta_k - theta_first| over all worker counts.
    double max_theta_deviation = 0.0;
};

/// Times step 1 alone (warm-up + median of `repeats`) for each worker count.
ThreadSweep bench_threads(StateKind kind, int n, std::span<const unsigned> thread_counts, Kernel kernel,
                          int repeats = 3);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct ErrorCurveRow {
    double n0 = 0.0;
    double mean_hs_mu = 0.0;
    double mean_hs_rho = 0.0;
    double mean_infidelity = 0.0;
    /// NaN when no predictor applies.
    double pred_hs = 0.0;
    double pred_infid = 0.0;
};

/// For each N0 in `grid` (copies per projector), runs `trials` independent
/// sampled reconstructions with d * N0 shots per setting and averages the
/// errors. Trial t of grid point g samples with seed mix(seed, g, t).
std::vector<ErrorCurveRow> error_curve(const StateDescriptor &state, std::span<const double> grid, int trials,
                                       std::uint64_t seed, const PipelineOptions &options = {});

/// Shots per setting for N0 copies per projector; N0 * d must be a positive integer.
std::uint64_t shots_for_copies(QubitCount n, double copies_per_projector);

std::string timing_csv(std::span<const TimingRow> rows);
std::vector<TimingRow> read_timing_csv(std::istream &in);

std::string thread_csv(std::span<const ThreadRow> rows);
std::vector<ThreadRow> read_thread_csv(std::istream &in);

std::string error_curve_csv(std::span<const ErrorCurveRow> rows);
std::vector<ErrorCurveRow> read_error_curve_csv(std::istream &in);

std::string timing_json(const StepTimings &timings, unsigned threads, Kernel kernel);
StepTimings parse_timing_json(const std::string &text);

std::string error_report_json(const ErrorReport &report);
ErrorReport parse_error_report_json(const std::string &text);

}  // namespace pauli_lre::bench
