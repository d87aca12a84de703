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

// pauli-lre: simulate Pauli measurement records, reconstruct states, evaluate
// estimation errors and run the scaling benchmarks.
//
// Exit codes: 0 success, 1 numerical failure, 2 validation error, 3 I/O error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pauli_lre/bench.hpp"
#include "pauli_lre/errors.hpp"
#include "pauli_lre/metrics.hpp"
#include "pauli_lre/parallel.hpp"
#include "pauli_lre/reconstruct.hpp"
#include "pauli_lre/record_io.hpp"
#include "pauli_lre/simulator.hpp"
#include "pauli_lre/state_file.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pauli_lre;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct Config {
    std::optional<int> n;
    std::optional<std::uint64_t> shots;
    std::optional<double> n0;
    std::uint64_t seed = 0;
    std::string state;
    std::string threads = "1";
    std::string kernel = "fast";
    std::string in;
    std::string out;
    std::string mu_out;
    std::string grid;
    int trials = 50;
    std::string n_range;
    std::string thread_list;
    int repeats = 3;
    bool exact = false;
};

unsigned parse_threads(const std::string &text) {
    if (text == "auto") return resolve_threads(0);
    try {
        std::size_t pos = 0;
        const long v = std::stol(text, &pos);
        if (pos == text.size() && v >= 1 && v <= 4096) return static_cast<unsigned>(v);
    } catch (const std::exception &) {
    }
    throw ValidationError("--threads must be a positive integer or \"auto\", got '" + text + "'");
}

PipelineOptions pipeline(const Config &c) { return {parse_threads(c.threads), parse_kernel(c.kernel)}; }

int require_n(const Config &c) {
    if (!c.n) throw ValidationError("--n is required");
    return *c.n;
}

// "16,32,2^6" or "2^4..2^12" (powers of two between the bounds).
std::vector<double> parse_grid(const std::string &text) {
    auto value = [](const std::string &tok) {
        try {
            std::size_t pos = 0;
            if (tok.rfind("2^", 0) == 0) {
                const int k = std::stoi(tok.substr(2), &pos);
                if (pos == tok.size() - 2 && k >= 0 && k <= 60) return std::ldexp(1.0, k);
            } else {
                const double v = std::stod(tok, &pos);
                if (pos == tok.size() && v > 0.0 && std::isfinite(v)) return v;
            }
        } catch (const std::exception &) {
        }
        throw ValidationError("bad --grid entry '" + tok + "'");
    };
    std::vector<double> grid;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        const auto dots = tok.find("..");
        if (dots == std::string::npos) {
            grid.push_back(value(tok));
            continue;
        }
        const double lo = value(tok.substr(0, dots));
        const double hi = value(tok.substr(dots + 2));
        if (lo > hi) throw ValidationError("empty --grid range '" + tok + "'");
        for (double v = lo; v <= hi; v *= 2.0) grid.push_back(v);
    }
    if (grid.empty()) throw ValidationError("--grid is empty");
    return grid;
}

std::vector<unsigned> parse_thread_list(const std::string &text) {
    std::vector<unsigned> out;
    if (text.empty()) {
        const unsigned cores = resolve_threads(0);
        for (unsigned t = 1; t < cores; t *= 2) out.push_back(t);
        out.push_back(cores);
        return out;
    }
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(parse_threads(tok));
    return out;
}

std::pair<int, int> parse_n_range(const Config &c) {
    if (c.n_range.empty()) {
        const int n = require_n(c);
        return {n, n};
    }
    const auto colon = c.n_range.find(':');
    try {
        if (colon != std::string::npos) {
            return {std::stoi(c.n_range.substr(0, colon)), std::stoi(c.n_range.substr(colon + 1))};
        }
    } catch (const std::exception &) {
    }
    throw ValidationError("--n-range must look like 7:10");
}

void check_distinct(const std::string &a, const std::string &b) {
    if (a.empty() || b.empty()) return;
    if (fs::weakly_canonical(a) == fs::weakly_canonical(b)) {
        throw ValidationError("input and output paths must differ");
    }
}

// Writes text to --out, or stdout when no path is given.
void emit(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out.flush()) throw IoError("failed writing " + path);
}

StateKind kind_of(const std::string &state) {
    return StateDescriptor::parse(state.empty() ? "maxmixed" : state, QubitCount(1)).kind;
}

// Counts equal to shots * p exactly; refuses when a count would not be integral.
MeasurementRecord exact_record(const StateDescriptor &state, std::uint64_t shots, std::uint64_t seed) {
    const QubitCount n = state.n;
    std::vector<MeasurementRecord::Count> counts;
    counts.reserve(n.setting_count() * n.dim());
    for (std::uint64_t w = 0; w < n.setting_count(); ++w) {
        for (double p : exact_probabilities(state, w)) {
            const double c = p * static_cast<double>(shots);
            const double r = std::round(c);
            if (std::abs(c - r) > 1e-6) {
                throw ValidationError("--exact needs shots * p integral for every outcome; setting " +
                                      setting_label(n, w) + " gives " + std::to_string(c));
            }
            counts.push_back(static_cast<MeasurementRecord::Count>(r));
        }
    }
    return MeasurementRecord(n, shots, std::move(counts), seed, state.to_string());
}

int cmd_simulate(const Config &c) {
    if (c.out.empty()) throw ValidationError("--out is required");
    if (!c.shots) throw ValidationError("--shots is required");
    const QubitCount n(require_n(c));
    const auto state = StateDescriptor::parse(c.state.empty() ? "maxmixed" : c.state, n);
    const MeasurementRecord record = c.exact ? exact_record(state, *c.shots, c.seed)
                                             : sample_counts(state, *c.shots, c.seed, parse_threads(c.threads));
    write_record(record, fs::path(c.out));
    json summary;
    summary["settings"] = n.setting_count();
    summary["shots"] = *c.shots;
    summary["bytes"] = fs::file_size(c.out);
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_reconstruct(const Config &c) {
    if (c.in.empty() || c.out.empty()) throw ValidationError("--in and --out are required");
    check_distinct(c.in, c.out);
    check_distinct(c.in, c.mu_out);
    check_distinct(c.out, c.mu_out);
    const PipelineOptions options = pipeline(c);
    const MeasurementRecord record = read_record(fs::path(c.in));
    const Reconstruction rec = reconstruct(record, options);
    write_state_file(rec.rho.matrix(), fs::path(c.out));
    if (!c.mu_out.empty()) write_state_file(rec.mu.matrix(), fs::path(c.mu_out));
    std::cout << bench::timing_json(rec.timings, options.threads, options.kernel) << "\n";
    return 0;
}

std::string error_curve_for(const Config &c) {
    const QubitCount n(require_n(c));
    const auto state = StateDescriptor::parse(c.state.empty() ? "maxmixed" : c.state, n);
    const std::vector<double> grid = parse_grid(c.grid);
    const auto rows = bench::error_curve(state, grid, c.trials, c.seed, pipeline(c));
    return bench::error_curve_csv(rows);
}

int cmd_eval(const Config &c) {
    if (!c.grid.empty()) {
        emit(c.out, error_curve_for(c));
        return 0;
    }
    if (c.in.empty()) throw ValidationError("--in (record or state file) or --grid is required");
    std::optional<ErrorReport> report;
    if (is_state_file(c.in)) {
        const DensityMatrix rho = DensityMatrix::checked(read_state_file(fs::path(c.in)));
        if (c.n && *c.n != rho.qubits().value()) {
            throw ValidationError("mismatched n: --n is " + std::to_string(*c.n) + " but the state file holds n = " +
                                  std::to_string(rho.qubits().value()));
        }
        if (c.state.empty()) throw ValidationError("--state is required with a state file");
        double n0 = 0.0;
        if (c.n0) {
            n0 = *c.n0;
        } else if (c.shots) {
            n0 = copies_per_projector(rho.qubits(), *c.shots);
        } else {
            throw ValidationError("--shots or --n0 is required with a state file");
        }
        if (!(n0 > 0.0)) throw ValidationError("N0 must be positive");
        report = evaluate_errors(StateDescriptor::parse(c.state, rho.qubits()), rho, n0);
    } else {
        const MeasurementRecord record = read_record(fs::path(c.in));
        const QubitCount n = record.qubits();
        if (c.n && *c.n != n.value()) {
            throw ValidationError("mismatched n: --n is " + std::to_string(*c.n) + " but the record holds n = " +
                                  std::to_string(n.value()));
        }
        std::string label = c.state;
        if (label.empty() && record.state_label()) label = *record.state_label();
        if (label.empty()) throw ValidationError("--state is required (the record names no state)");
        const Reconstruction rec = reconstruct(record, pipeline(c));
        report = evaluate_errors(StateDescriptor::parse(label, n), rec.mu, rec.rho,
                                 copies_per_projector(n, record.shots()));
    }
    emit(c.out, bench::error_report_json(*report) + "\n");
    return 0;
}

int cmd_predict(const Config &c) {
    const QubitCount n(require_n(c));
    double n0 = 0.0;
    if (c.n0) {
        n0 = *c.n0;
    } else if (c.shots) {
        n0 = copies_per_projector(n, *c.shots);
    } else {
        throw ValidationError("--n0 or --shots is required");
    }
    if (!(n0 > 0.0)) throw ValidationError("N0 must be positive");
    const auto state = StateDescriptor::parse(c.state.empty() ? "maxmixed" : c.state, n);
    json j;
    j["n"] = n.value();
    j["N0"] = n0;
    j["state"] = state.to_string();
    j["max_mixed_hs"] = predicted_mse_max_mixed(n, n0);
    j["max_mixed_infidelity"] = predicted_infidelity_max_mixed(n, n0);
    if (n.value() <= kMaxPredictorQubits) {
        const DensityMatrix rho = dense_state(state);
        j["dense_diagonal_hs"] = predicted_mse_dense(rho, n0, CovarianceModel::Diagonal);
        j["dense_first_order_hs"] = predicted_mse_dense(rho, n0, CovarianceModel::UniformFirstOrder);
        j["dense_multinomial_hs"] = predicted_mse_dense(rho, n0, CovarianceModel::Multinomial);
    } else {
        j["dense_diagonal_hs"] = nullptr;
        j["dense_first_order_hs"] = nullptr;
        j["dense_multinomial_hs"] = nullptr;
    }
    emit(c.out, j.dump() + "\n");
    return 0;
}

json growth_json(const std::vector<bench::TimingRow> &rows, double bench::TimingRow::*field) {
    if (rows.size() < 2) return nullptr;
    std::vector<double> n, t;
    for (const auto &r : rows) {
        n.push_back(r.n);
        t.push_back(r.*field);
    }
    const auto fit = bench::fit_growth(n, t);
    return {{"log_slope", fit.log_slope}, {"factor", fit.factor}};
}

// CSV goes to --out (summary on stdout) or to stdout (summary on stderr).
void emit_with_summary(const Config &c, const std::string &csv, const json &summary) {
    emit(c.out, csv);
    (c.out.empty() ? std::cerr : std::cout) << summary.dump() << "\n";
}

int cmd_bench_time(const Config &c) {
    const auto [lo, hi] = parse_n_range(c);
    const auto rows = bench::bench_time(kind_of(c.state), lo, hi, pipeline(c), c.repeats);
    json summary;
    summary["t1_growth"] = growth_json(rows, &bench::TimingRow::t1);
    summary["t2_growth"] = growth_json(rows, &bench::TimingRow::t2);
    summary["t3_growth"] = growth_json(rows, &bench::TimingRow::t3);
    emit_with_summary(c, bench::timing_csv(rows), summary);
    return 0;
}

int cmd_bench_threads(const Config &c) {
    const int n = require_n(c);
    if (n < 8 || n > 11) throw ValidationError("bench-threads needs --n in [8, 11]");
    const std::vector<unsigned> threads = parse_thread_list(c.thread_list);
    const auto sweep = bench::bench_threads(kind_of(c.state), n, threads, parse_kernel(c.kernel), c.repeats);
    json summary;
    summary["max_theta_deviation"] = sweep.max_theta_deviation;
    if (sweep.rows.size() >= 2) {
        std::vector<double> x, y;
        for (const auto &r : sweep.rows) {
            x.push_back(r.threads);
            y.push_back(r.speed);
        }
        const auto fit = bench::fit_line(x, y);
        summary["speed_fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}};
    } else {
        summary["speed_fit"] = nullptr;
    }
    emit_with_summary(c, bench::thread_csv(sweep.rows), summary);
    return 0;
}

int cmd_bench_error(const Config &c) {
    if (c.grid.empty()) throw ValidationError("--grid is required");
    emit(c.out, error_curve_for(c));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pauli-measurement state reconstruction by linear regression estimation"};
    app.require_subcommand(1);
    Config c;

    auto add_n = [&](CLI::App *s) { s->add_option("--n", c.n, "Number of qubits")->check(CLI::Range(1, 16)); };
    auto add_state = [&](CLI::App *s) {
        s->add_option("--state", c.state, "maxmixed | ghz | productz:<bits> | random:<seed>");
    };
    auto add_pipeline = [&](CLI::App *s) {
        s->add_option("--threads", c.threads, "Worker count or \"auto\"")->capture_default_str();
        s->add_option("--kernel", c.kernel, "fast | paper-direct")->capture_default_str();
    };

    auto *simulate = app.add_subcommand("simulate", "Sample a measurement record");
    add_n(simulate);
    add_state(simulate);
    add_pipeline(simulate);
    simulate->add_option("--shots", c.shots, "Shots per setting");
    simulate->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
    simulate->add_option("--out", c.out, "Record file to write");
    simulate->add_flag("--exact", c.exact, "Write exact counts shots * p instead of sampling");

    auto *recon = app.add_subcommand("reconstruct", "Reconstruct a state from a record file");
    add_pipeline(recon);
    recon->add_option("--in", c.in, "Record file");
    recon->add_option("--out", c.out, "State file for rho");
    recon->add_option("--mu-out", c.mu_out, "Optional state file for mu (before positivity repair)");

    auto *eval = app.add_subcommand("eval", "Error report for a record or state file, or an N0 grid");
    add_n(eval);
    add_state(eval);
    add_pipeline(eval);
    eval->add_option("--in", c.in, "Record file or state file");
    eval->add_option("--out", c.out, "Output file (default stdout)");
    eval->add_option("--shots", c.shots, "Shots per setting behind a state file");
    eval->add_option("--n0", c.n0, "Copies per projector behind a state file");
    eval->add_option("--grid", c.grid, "N0 list, e.g. 2^4..2^12");
    eval->add_option("--trials", c.trials, "Trials per grid point")->capture_default_str()->check(CLI::PositiveNumber);
    eval->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();

    auto *predict = app.add_subcommand("predict", "Predicted mean squared HS distance");
    add_n(predict);
    add_state(predict);
    predict->add_option("--shots", c.shots, "Shots per setting");
    predict->add_option("--n0", c.n0, "Copies per projector");
    predict->add_option("--out", c.out, "Output file (default stdout)");

    auto *bench_time = app.add_subcommand("bench-time", "Per-step time versus n");
    add_n(bench_time);
    add_state(bench_time);
    add_pipeline(bench_time);
    bench_time->add_option("--n-range", c.n_range, "Inclusive range lo:hi");
    bench_time->add_option("--repeats", c.repeats, "Timed runs per point")->capture_default_str()->check(
        CLI::PositiveNumber);
    bench_time->add_option("--out", c.out, "CSV file (default stdout)");

    auto *bench_threads = app.add_subcommand("bench-threads", "Step 1 speed versus worker count");
    add_n(bench_threads);
    add_state(bench_threads);
    bench_threads->add_option("--kernel", c.kernel, "fast | paper-direct")->capture_default_str();
    bench_threads->add_option("--thread-list", c.thread_list, "Comma-separated worker counts (default 1,2,4,..,cores)");
    bench_threads->add_option("--repeats", c.repeats, "Timed runs per point")->capture_default_str()->check(
        CLI::PositiveNumber);
    bench_threads->add_option("--out", c.out, "CSV file (default stdout)");

    auto *bench_error = app.add_subcommand("bench-error", "Monte-Carlo estimation error versus N0");
    add_n(bench_error);
    add_state(bench_error);
    add_pipeline(bench_error);
    bench_error->add_option("--grid", c.grid, "N0 list, e.g. 2^4..2^12");
    bench_error->add_option("--trials", c.trials, "Trials per grid point")->capture_default_str()->check(
        CLI::PositiveNumber);
    bench_error->add_option("--seed", c.seed, "PRNG seed")->capture_default_str();
    bench_error->add_option("--out", c.out, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*simulate) return cmd_simulate(c);
        if (*recon) return cmd_reconstruct(c);
        if (*eval) return cmd_eval(c);
        if (*predict) return cmd_predict(c);
        if (*bench_time) return cmd_bench_time(c);
        if (*bench_threads) return cmd_bench_threads(c);
        if (*bench_error) return cmd_bench_error(c);
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const NumericalError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
