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

// Drives the pauli-lre executable end to end.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"
#include "malformed_records.hpp"
#include "pauli_lre/bench.hpp"
#include "pauli_lre/record_io.hpp"
#include "pauli_lre/state_file.hpp"

namespace fs = std::filesystem;
using namespace pauli_lre;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(PAULI_LRE_CLI) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("pauli_lre_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(Cli, SimulateFormatAndDeterminism) {
    const auto r = run("simulate --n 2 --state maxmixed --shots 100 --seed 7 --out " + path("a.txt"));
    ASSERT_EQ(r.code, 0);
    const auto summary = nlohmann::json::parse(r.out);
    EXPECT_EQ(summary["settings"], 9);
    EXPECT_EQ(summary["shots"], 100);
    EXPECT_EQ(summary["bytes"], fs::file_size(path("a.txt")));
    const auto rec = read_record(fs::path(path("a.txt")));
    EXPECT_EQ(rec.qubits().value(), 2);
    std::istringstream lines(slurp(path("a.txt")));
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    EXPECT_EQ(count, 10);

    ASSERT_EQ(run("simulate --n 2 --state maxmixed --shots 100 --seed 7 --out " + path("b.txt")).code, 0);
    EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
}

TEST_F(Cli, SimulateGhzParity) {
    ASSERT_EQ(run("simulate --n 3 --state ghz --shots 500 --seed 1 --out " + path("g.txt")).code, 0);
    const auto rec = read_record(fs::path(path("g.txt")));
    const auto xxx = rec.counts(0);
    const auto zzz = rec.counts(26);
    for (std::uint64_t s = 0; s < 8; ++s) {
        if (std::popcount(s) & 1) EXPECT_EQ(xxx[s], 0u);
        if (s != 0 && s != 7) EXPECT_EQ(zzz[s], 0u);
    }
}

TEST_F(Cli, ReconstructNoiselessIdentity) {
    ASSERT_EQ(run("simulate --n 4 --state maxmixed --shots 160 --exact --out " + path("r.txt")).code, 0);
    const auto r = run("reconstruct --in " + path("r.txt") + " --out " + path("rho.bin"));
    ASSERT_EQ(r.code, 0);
    const ComplexMatrix rho = read_state_file(fs::path(path("rho.bin")));
    EXPECT_LT((rho - ComplexMatrix::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff(), 1e-10);
    const auto t = bench::parse_timing_json(r.out);
    EXPECT_GT(t.step1_s, 0.0);
    EXPECT_GT(t.step2_s, 0.0);
    EXPECT_GT(t.step3_s, 0.0);
    EXPECT_GE(t.total_s, t.step1_s + t.step2_s + t.step3_s);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["threads"], 1);
    EXPECT_EQ(j["kernel"], "fast");
}

TEST_F(Cli, KernelsAgreeAndDirectIsSlowerAtEightQubits) {
    ASSERT_EQ(run("simulate --n 8 --state ghz --shots 64 --seed 3 --out " + path("r.txt")).code, 0);
    const auto fast = run("reconstruct --kernel fast --in " + path("r.txt") + " --out " + path("f.bin"));
    const auto direct = run("reconstruct --kernel paper-direct --in " + path("r.txt") + " --out " + path("d.bin"));
    ASSERT_EQ(fast.code, 0);
    ASSERT_EQ(direct.code, 0);
    const ComplexMatrix a = read_state_file(fs::path(path("f.bin")));
    const ComplexMatrix b = read_state_file(fs::path(path("d.bin")));
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GT(bench::parse_timing_json(direct.out).step1_s, bench::parse_timing_json(fast.out).step1_s);
}

TEST_F(Cli, EvalIdenticalStateIsZero) {
    ASSERT_EQ(run("simulate --n 3 --state ghz --shots 8 --exact --out " + path("r.txt")).code, 0);
    ASSERT_EQ(run("reconstruct --in " + path("r.txt") + " --out " + path("rho.bin")).code, 0);
    const auto r = run("eval --in " + path("rho.bin") + " --state ghz --shots 8");
    ASSERT_EQ(r.code, 0);
    const auto report = bench::parse_error_report_json(r.out);
    EXPECT_NEAR(report.hs_squared_rho, 0.0, 1e-20);
    EXPECT_NEAR(report.infidelity, 0.0, 1e-12);
    EXPECT_EQ(report.copies_per_projector, 1.0);

    const auto from_record = run("eval --in " + path("r.txt"));
    ASSERT_EQ(from_record.code, 0);
    EXPECT_NEAR(*bench::parse_error_report_json(from_record.out).hs_squared_mu, 0.0, 1e-20);
}

TEST_F(Cli, EvalGridTracksClosedForm) {
    const auto r = run("eval --n 4 --state maxmixed --grid 2^4..2^12 --trials 50 --seed 5");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    const auto rows = bench::read_error_curve_csv(in);
    ASSERT_EQ(rows.size(), 9u);
    for (const auto &row : rows) {
        EXPECT_LT(std::abs(row.mean_hs_mu - row.pred_hs) / row.pred_hs, 0.15) << "N0=" << row.n0;
        EXPECT_LE(row.mean_hs_rho, row.mean_hs_mu);
    }
}

TEST_F(Cli, PredictAndBenchCommands) {
    auto r = run("predict --n 2 --n0 100");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["max_mixed_hs"].get<double>(), 6.944e-3, 1e-6);

    r = run("bench-time --n-range 2:4 --repeats 1 --out " + path("t.csv"));
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["t1_growth"].contains("factor"));
    std::ifstream t(path("t.csv"));
    EXPECT_EQ(bench::read_timing_csv(t).size(), 3u);

    r = run("bench-threads --n 8 --thread-list 1,2 --repeats 1 --out " + path("th.csv"));
    ASSERT_EQ(r.code, 0);
    EXPECT_LE(nlohmann::json::parse(r.out)["max_theta_deviation"].get<double>(), 1e-12);

    r = run("bench-error --n 2 --grid 16,32 --trials 3");
    ASSERT_EQ(r.code, 0);
    std::istringstream e(r.out);
    EXPECT_EQ(bench::read_error_curve_csv(e).size(), 2u);
}

TEST_F(Cli, ExitCodes) {
    for (const auto &bad : fixtures::malformed_records()) {
        const std::string p = path(std::string(bad.name) + ".txt");
        std::ofstream(p) << bad.text;
        EXPECT_EQ(run("reconstruct --in " + p + " --out " + path("x.bin")).code, 2) << bad.name;
    }
    EXPECT_EQ(run("reconstruct --in " + path("missing.txt") + " --out " + path("x.bin")).code, 3);
    EXPECT_EQ(run("simulate --n 2 --shots 10 --out /nonexistent/dir/r.txt").code, 3);
    EXPECT_EQ(run("simulate --n 0 --shots 10 --out " + path("r.txt")).code, 2);
    EXPECT_EQ(run("simulate --n 2 --shots 10 --state bell --out " + path("r.txt")).code, 2);
    EXPECT_EQ(run("simulate --n 2 --shots 10 --threads 0 --out " + path("r.txt")).code, 2);
    EXPECT_EQ(run("reconstruct --kernel slow --in a --out b").code, 2);
    EXPECT_EQ(run("bogus").code, 2);
    EXPECT_EQ(run("--help").code, 0);

    ASSERT_EQ(run("simulate --n 2 --shots 8 --exact --out " + path("r.txt")).code, 0);
    EXPECT_EQ(run("reconstruct --in " + path("r.txt") + " --out " + path("r.txt")).code, 2);
    ASSERT_EQ(run("reconstruct --in " + path("r.txt") + " --out " + path("rho.bin")).code, 0);
    EXPECT_EQ(run("eval --in " + path("rho.bin") + " --state maxmixed --n 3 --shots 8").code, 2);
    EXPECT_EQ(run("simulate --n 2 --shots 3 --exact --out " + path("r3.txt")).code, 2);
}

}  // namespace
