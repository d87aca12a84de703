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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "dense_oracle.hpp"
#include "pauli_lre/bench.hpp"
#include "pauli_lre/parallel.hpp"
#include "pauli_lre/state_file.hpp"

using namespace pauli_lre;

namespace {

TEST(StateFile, RoundTripIsExact) {
    std::mt19937_64 rng(1);
    for (int nv = 1; nv <= 4; ++nv) {
        const ComplexMatrix m = oracle::random_hermitian_trace_one(1 << nv, rng);
        std::stringstream buf;
        write_state_file(m, buf);
        EXPECT_EQ(buf.str().size(), 16u + 16u * (1u << (2 * nv)));
        EXPECT_EQ(read_state_file(buf), m);
    }
}

TEST(StateFile, LayoutIsLittleEndian) {
    ComplexMatrix m(2, 2);
    m << 1.0, std::complex<double>(0, 0.5), std::complex<double>(0, -0.5), 0.0;
    std::stringstream buf;
    write_state_file(m, buf);
    const std::string s = buf.str();
    EXPECT_EQ(s.substr(0, 8), "PLRESTAT");
    EXPECT_EQ(static_cast<unsigned char>(s[8]), 1);
    EXPECT_EQ(static_cast<unsigned char>(s[12]), 1);
    // 1.0 = 0x3FF0000000000000, low byte first.
    EXPECT_EQ(static_cast<unsigned char>(s[16 + 7]), 0x3F);
    EXPECT_EQ(static_cast<unsigned char>(s[16 + 6]), 0xF0);
}

TEST(StateFile, Rejections) {
    std::stringstream bad("NOTSTATE");
    EXPECT_THROW(read_state_file(bad), ValidationError);
    ComplexMatrix m = ComplexMatrix::Identity(4, 4);
    std::stringstream buf;
    write_state_file(m, buf);
    std::stringstream truncated(buf.str().substr(0, 40));
    EXPECT_THROW(read_state_file(truncated), ValidationError);
    std::stringstream out;
    EXPECT_THROW(write_state_file(ComplexMatrix::Identity(3, 3), out), ValidationError);
    EXPECT_THROW(read_state_file(std::filesystem::path("/nonexistent/x.bin")), IoError);
}

TEST(Parallel, StaticChunksCoverRange) {
    for (std::uint64_t count : {0u, 1u, 7u, 64u, 1000u}) {
        for (unsigned workers : {1u, 2u, 3u, 8u}) {
            std::uint64_t next = 0;
            for (unsigned w = 0; w < workers; ++w) {
                const auto r = static_chunk(count, workers, w);
                EXPECT_EQ(r.begin, next);
                next = r.end;
            }
            EXPECT_EQ(next, count);
        }
    }
}

TEST(Parallel, ExceptionsPropagate) {
    EXPECT_THROW(parallel_for_chunks(100, 4,
                                     [](unsigned w, std::uint64_t, std::uint64_t) {
                                         if (w == 2) throw ValidationError("boom");
                                     }),
                 ValidationError);
}

TEST(Fits, LineAndGrowth) {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{3, 5, 7, 9};
    const auto f = bench::fit_line(x, y);
    EXPECT_NEAR(f.slope, 2.0, 1e-14);
    EXPECT_NEAR(f.intercept, 1.0, 1e-14);
    EXPECT_NEAR(f.r2, 1.0, 1e-14);
    const std::vector<double> t{1.0, 12.0, 144.0, 1728.0};
    EXPECT_NEAR(bench::fit_growth(x, t).factor, 12.0, 1e-10);
    EXPECT_THROW(bench::fit_line(std::vector<double>{1}, std::vector<double>{1}), ValidationError);
    EXPECT_THROW(bench::fit_growth(x, std::vector<double>{1, 0, 1, 1}), ValidationError);
}

TEST(Bench, ShotsForCopies) {
    EXPECT_EQ(bench::shots_for_copies(QubitCount(2), 16), 64u);
    EXPECT_EQ(bench::shots_for_copies(QubitCount(3), 0.5), 4u);
    EXPECT_THROW(bench::shots_for_copies(QubitCount(1), 0.3), ValidationError);
    EXPECT_THROW(bench::shots_for_copies(QubitCount(1), 0), ValidationError);
}

TEST(Bench, TimingRowsAndCsvRoundTrip) {
    const auto rows = bench::bench_time(StateKind::MaximallyMixed, 2, 4, {1, Kernel::Fast}, 1);
    ASSERT_EQ(rows.size(), 3u);
    for (const auto &r : rows) {
        EXPECT_GT(r.total, 0.0);
        EXPECT_EQ(r.kernel, "fast");
    }
    std::istringstream in(bench::timing_csv(rows));
    const auto back = bench::read_timing_csv(in);
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        EXPECT_EQ(back[k].n, rows[k].n);
        EXPECT_EQ(back[k].t1, rows[k].t1);
        EXPECT_EQ(back[k].total, rows[k].total);
        EXPECT_EQ(back[k].threads, rows[k].threads);
    }
    std::istringstream wrong("n,t1\n1,2\n");
    EXPECT_THROW(bench::read_timing_csv(wrong), ValidationError);
}

TEST(Bench, ThreadSweepIsDeterministic) {
    const std::vector<unsigned> threads{1, 2, 3};
    const auto sweep = bench::bench_threads(StateKind::RandomDensity, 6, threads, Kernel::Fast, 1);
    ASSERT_EQ(sweep.rows.size(), 3u);
    EXPECT_LE(sweep.max_theta_deviation, 1e-12);
    std::istringstream in(bench::thread_csv(sweep.rows));
    const auto back = bench::read_thread_csv(in);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[2].threads, 3u);
    EXPECT_EQ(back[1].speed, sweep.rows[1].speed);
}

TEST(Bench, ErrorCurveAndCsvRoundTrip) {
    const auto state = StateDescriptor::maximally_mixed(QubitCount(2));
    const std::vector<double> grid{16, 64};
    const auto rows = bench::error_curve(state, grid, 20, 3);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto &r : rows) {
        EXPECT_LE(r.mean_hs_rho, r.mean_hs_mu + 1e-12);
        EXPECT_DOUBLE_EQ(r.pred_hs, predicted_mse_max_mixed(QubitCount(2), r.n0));
    }
    EXPECT_EQ(rows[0].mean_hs_mu, bench::error_curve(state, grid, 20, 3)[0].mean_hs_mu);
    std::istringstream in(bench::error_curve_csv(rows));
    const auto back = bench::read_error_curve_csv(in);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].mean_infidelity, rows[1].mean_infidelity);

    const auto ghz = bench::error_curve(StateDescriptor::ghz(QubitCount(5)), std::vector<double>{1}, 1, 1);
    EXPECT_TRUE(std::isnan(ghz[0].pred_hs));
    std::istringstream nan_in(bench::error_curve_csv(ghz));
    EXPECT_TRUE(std::isnan(bench::read_error_curve_csv(nan_in)[0].pred_infid));
}

TEST(Bench, JsonRoundTrips) {
    const StepTimings t{0.25, 0.5, 0.125, 1.0};
    const std::string j = bench::timing_json(t, 4, Kernel::PaperDirect);
    EXPECT_EQ(j, R"({"t_step1_s":0.25,"t_step2_s":0.5,"t_step3_s":0.125,"t_total_s":1.0,"threads":4,)"
                 R"("kernel":"paper-direct"})");
    const auto back = bench::parse_timing_json(j);
    EXPECT_EQ(back.step3_s, 0.125);

    ErrorReport r;
    r.n = 2;
    r.copies_per_projector = 8;
    r.hs_squared_mu = 0.1;
    r.hs_squared_rho = 0.05;
    r.infidelity = 0.01;
    r.predicted_hs = 0.2;
    r.predictor = "dense-diagonal";
    const auto parsed = bench::parse_error_report_json(bench::error_report_json(r));
    EXPECT_EQ(parsed.hs_squared_mu, r.hs_squared_mu);
    EXPECT_EQ(parsed.predicted_hs, r.predicted_hs);
    EXPECT_FALSE(parsed.predicted_infidelity.has_value());
    EXPECT_EQ(parsed.predictor, r.predictor);
    EXPECT_THROW(bench::parse_timing_json("{}"), ValidationError);
}

}  // namespace
