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

#include "pauli_lre/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "pauli_lre/parallel.hpp"
#include "pauli_lre/rng.hpp"

namespace pauli_lre::bench {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

StateDescriptor bench_state(StateKind kind, QubitCount n) {
    switch (kind) {
        case StateKind::MaximallyMixed:
            return StateDescriptor::maximally_mixed(n);
        case StateKind::Ghz:
            return StateDescriptor::ghz(n);
        case StateKind::ProductZ:
            return StateDescriptor::product_z(n, 0);
        case StateKind::RandomDensity:
            return StateDescriptor::random_density(n, 1);
    }
    return StateDescriptor::maximally_mixed(n);
}

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string &s) {
    char *end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ValidationError("malformed number in CSV: '" + s + "'");
    return v;
}

// Reads a CSV with exactly the given header; returns the data rows.
std::vector<std::vector<std::string>> read_csv(std::istream &in, const std::vector<std::string> &header) {
    std::string line;
    if (!std::getline(in, line) || split(line, ',') != header) {
        throw ValidationError("CSV header does not match the expected columns");
    }
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != header.size()) throw ValidationError("CSV row has the wrong number of columns");
        rows.push_back(std::move(fields));
    }
    return rows;
}

const std::vector<std::string> kTimingHeader{"n", "t1", "t2", "t3", "total", "kernel", "threads"};
const std::vector<std::string> kThreadHeader{"threads", "t1_s", "speed"};
const std::vector<std::string> kErrorHeader{"N0",      "mean_hs_mu", "mean_hs_rho", "mean_infidelity",
                                            "pred_hs", "pred_infid"};

json optional_number(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json &j, const char *key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return j[key].get<double>();
}

}  // namespace

TimingRow time_reconstruction(const FrequencySource &source, const PipelineOptions &options, int repeats) {
    repeats = std::max(1, repeats);
    (void)reconstruct(source, options);
    std::vector<double> t1, t2, t3, total;
    for (int r = 0; r < repeats; ++r) {
        const StepTimings t = reconstruct(source, options).timings;
        t1.push_back(t.step1_s);
        t2.push_back(t.step2_s);
        t3.push_back(t.step3_s);
        total.push_back(t.total_s);
    }
    TimingRow row;
    row.n = source.qubits().value();
    row.t1 = median(t1);
    row.t2 = median(t2);
    row.t3 = median(t3);
    row.total = median(total);
    row.kernel = std::string(kernel_name(options.kernel));
    row.threads = resolve_threads(options.threads);
    return row;
}

std::vector<TimingRow> bench_time(StateKind kind, int n_min, int n_max, const PipelineOptions &options, int repeats) {
    if (n_min > n_max) throw ValidationError("empty qubit range");
    std::vector<TimingRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        const ExactFrequencies source(bench_state(kind, QubitCount(n)));
        rows.push_back(time_reconstruction(source, options, repeats));
    }
    return rows;
}

GrowthFit fit_growth(std::span<const double> n, std::span<const double> t) {
    std::vector<double> log_t(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (!(t[k] > 0.0)) throw ValidationError("growth fit needs positive times");
        log_t[k] = std::log(t[k]);
    }
    const LinearFit line = fit_line(n, log_t);
    return {line.slope, std::exp(line.slope)};
}

ThreadSweep bench_threads(StateKind kind, int n, std::span<const unsigned> thread_counts, Kernel kernel,
                          int repeats) {
    if (thread_counts.empty()) throw ValidationError("thread list is empty");
    const ExactFrequencies source(bench_state(kind, QubitCount(n)));
    ThreadSweep sweep;
    std::vector<double> reference;
    for (unsigned threads : thread_counts) {
        if (threads < 1) throw ValidationError("thread counts must be >= 1");
        const PipelineOptions options{threads, kernel};
        ThetaVector theta = step_one_least_squares(source, options);
        std::vector<double> times;
        for (int r = 0; r < std::max(1, repeats); ++r) {
            const auto start = Clock::now();
            theta = step_one_least_squares(source, options);
            times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        }
        if (reference.empty()) {
            reference.assign(theta.values().begin(), theta.values().end());
        } else {
            for (std::size_t i = 0; i < reference.size(); ++i) {
                sweep.max_theta_deviation = std::max(sweep.max_theta_deviation, std::abs(theta[i] - reference[i]));
            }
        }
        const double t1 = median(times);
        sweep.rows.push_back({threads, t1, 1.0 / t1});
    }
    return sweep;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("line fit needs at least two points");
    const double count = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
        syy += (y[k] - my) * (y[k] - my);
    }
    if (sxx == 0.0) throw ValidationError("line fit needs at least two distinct x values");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

std::uint64_t shots_for_copies(QubitCount n, double copies_per_projector) {
    const double shots = copies_per_projector * static_cast<double>(n.dim());
    const double rounded = std::round(shots);
    if (!(rounded >= 1.0) || std::abs(shots - rounded) > 1e-9 * std::max(1.0, shots)) {
        throw ValidationError("N0 * 2^n must be a positive integer (shots per setting), got " + fmt(shots));
    }
    return static_cast<std::uint64_t>(rounded);
}

std::vector<ErrorCurveRow> error_curve(const StateDescriptor &state, std::span<const double> grid, int trials,
                                       std::uint64_t seed, const PipelineOptions &options) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    const QubitCount n = state.n;
    const DensityMatrix truth = dense_state(state);
    std::vector<ErrorCurveRow> rows;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double n0 = grid[g];
        const std::uint64_t shots = shots_for_copies(n, n0);
        ErrorCurveRow row;
        row.n0 = n0;
        for (int t = 0; t < trials; ++t) {
            const std::uint64_t trial_seed =
                splitmix64_mix(seed ^ splitmix64_mix((static_cast<std::uint64_t>(g) << 32) | static_cast<unsigned>(t)));
            const SampledFrequencies source(state, shots, trial_seed);
            const Reconstruction rec = reconstruct(source, options);
            row.mean_hs_mu += hs_squared_distance(rec.mu, truth);
            row.mean_hs_rho += hs_squared_distance(rec.rho, truth);
            row.mean_infidelity += 1.0 - fidelity(truth, rec.rho);
        }
        row.mean_hs_mu /= trials;
        row.mean_hs_rho /= trials;
        row.mean_infidelity /= trials;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        if (state.kind == StateKind::MaximallyMixed) {
            row.pred_hs = predicted_mse_max_mixed(n, n0);
            row.pred_infid = predicted_infidelity_max_mixed(n, n0);
        } else {
            row.pred_hs = n.value() <= kMaxPredictorQubits ? predicted_mse_dense(truth, n0) : nan;
            row.pred_infid = nan;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string timing_csv(std::span<const TimingRow> rows) {
    std::string out = "n,t1,t2,t3,total,kernel,threads\n";
    for (const auto &r : rows) {
        out += std::to_string(r.n) + "," + fmt(r.t1) + "," + fmt(r.t2) + "," + fmt(r.t3) + "," + fmt(r.total) + "," +
               r.kernel + "," + std::to_string(r.threads) + "\n";
    }
    return out;
}

std::vector<TimingRow> read_timing_csv(std::istream &in) {
    std::vector<TimingRow> rows;
    for (const auto &f : read_csv(in, kTimingHeader)) {
        TimingRow r;
        r.n = static_cast<int>(to_double(f[0]));
        r.t1 = to_double(f[1]);
        r.t2 = to_double(f[2]);
        r.t3 = to_double(f[3]);
        r.total = to_double(f[4]);
        r.kernel = std::string(kernel_name(parse_kernel(f[5])));
        r.threads = static_cast<unsigned>(to_double(f[6]));
        rows.push_back(r);
    }
    return rows;
}

std::string thread_csv(std::span<const ThreadRow> rows) {
    std::string out = "threads,t1_s,speed\n";
    for (const auto &r : rows) out += std::to_string(r.threads) + "," + fmt(r.t1) + "," + fmt(r.speed) + "\n";
    return out;
}

std::vector<ThreadRow> read_thread_csv(std::istream &in) {
    std::vector<ThreadRow> rows;
    for (const auto &f : read_csv(in, kThreadHeader)) {
        rows.push_back({static_cast<unsigned>(to_double(f[0])), to_double(f[1]), to_double(f[2])});
    }
    return rows;
}

std::string error_curve_csv(std::span<const ErrorCurveRow> rows) {
    std::string out = "N0,mean_hs_mu,mean_hs_rho,mean_infidelity,pred_hs,pred_infid\n";
    for (const auto &r : rows) {
        out += fmt(r.n0) + "," + fmt(r.mean_hs_mu) + "," + fmt(r.mean_hs_rho) + "," + fmt(r.mean_infidelity) + "," +
               fmt(r.pred_hs) + "," + fmt(r.pred_infid) + "\n";
    }
    return out;
}

std::vector<ErrorCurveRow> read_error_curve_csv(std::istream &in) {
    std::vector<ErrorCurveRow> rows;
    for (const auto &f : read_csv(in, kErrorHeader)) {
        rows.push_back({to_double(f[0]), to_double(f[1]), to_double(f[2]), to_double(f[3]), to_double(f[4]),
                        to_double(f[5])});
    }
    return rows;
}

std::string timing_json(const StepTimings &timings, unsigned threads, Kernel kernel) {
    json j;
    j["t_step1_s"] = timings.step1_s;
    j["t_step2_s"] = timings.step2_s;
    j["t_step3_s"] = timings.step3_s;
    j["t_total_s"] = timings.total_s;
    j["threads"] = threads;
    j["kernel"] = kernel_name(kernel);
    return j.dump();
}

StepTimings parse_timing_json(const std::string &text) {
    try {
        const json j = json::parse(text);
        return {j.at("t_step1_s").get<double>(), j.at("t_step2_s").get<double>(), j.at("t_step3_s").get<double>(),
                j.at("t_total_s").get<double>()};
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed timing JSON: ") + e.what());
    }
}

std::string error_report_json(const ErrorReport &report) {
    json j;
    j["n"] = report.n;
    j["N0"] = report.copies_per_projector;
    j["hs_squared_mu"] = optional_number(report.hs_squared_mu);
    j["hs_squared_rho"] = report.hs_squared_rho;
    j["infidelity"] = report.infidelity;
    j["predicted_hs"] = optional_number(report.predicted_hs);
    j["predicted_infidelity"] = optional_number(report.predicted_infidelity);
    j["predictor"] = report.predictor;
    return j.dump();
}

ErrorReport parse_error_report_json(const std::string &text) {
    try {
        const json j = json::parse(text);
        ErrorReport r;
        r.n = j.at("n").get<int>();
        r.copies_per_projector = j.at("N0").get<double>();
        r.hs_squared_mu = number_or_null(j, "hs_squared_mu");
        r.hs_squared_rho = j.at("hs_squared_rho").get<double>();
        r.infidelity = j.at("infidelity").get<double>();
        r.predicted_hs = number_or_null(j, "predicted_hs");
        r.predicted_infidelity = number_or_null(j, "predicted_infidelity");
        r.predictor = j.at("predictor").get<std::string>();
        return r;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed error report JSON: ") + e.what());
    }
}

}  // namespace pauli_lre::bench
