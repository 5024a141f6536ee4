// SPDX-License-Identifier: Apache-2.0
//
// nr-ia-sim: initial-access analytics and Monte Carlo for NR at mmWave
// Copyright (C) 2026 The nr-ia-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "run_cli.hpp"

namespace {

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST(Cli, ReactFigureDefaults) {
    const auto r = cli::run("react --delta-f 240");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out.rfind("# config_hash=0x", 0), 0u);
    EXPECT_NE(r.out.find("framework,m_gnb,m_ue,arch_gnb,arch_ue,n_ss,t_ss_ms,s_d,t_ia_ms,t_report_ms,t_total_ms\n"),
              std::string::npos);
    EXPECT_EQ(lines(r.out), 2u + 24u);
    EXPECT_NE(r.out.find("SA-DL,64,16,analog,analog,8,20,2100,5240.11608125,"), std::string::npos);
}

TEST(Cli, ReactUplinkMulticonnectivity) {
    const auto r = cli::run("react --framework MC-UL --gnb-arch digital --m-gnb 16 --m-ue 16 --n-ss 8 --delta-f 240");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("MC-UL,16,16,digital,analog,8,20,42,100.05358125,10,110.05358125"), std::string::npos);
}

TEST(Cli, OverheadTable) {
    const auto r = cli::run("overhead --n-ss 64 --delta-f 120 --diversity 1");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("n_ss,delta_f_khz,diversity,n_rep,omega_5ms,omega_tss,omega_report\n"), std::string::npos);
    const auto row = r.out.find("64,120,1,11,");
    ASSERT_NE(row, std::string::npos);
    EXPECT_NEAR(std::stod(r.out.substr(row + 12)), 0.36165888, 1e-12);
}

TEST(Cli, MisdetectDeterministicAcrossWorkers) {
    const std::string args = "misdetect --lambda-b 10,30 --trials 3000 --seed 5";
    const auto one = cli::run(args, "NR_IA_SIM_WORKERS=1");
    ASSERT_EQ(one.exit_code, 0);
    EXPECT_EQ(lines(one.out), 4u);
    EXPECT_NE(one.out.find("# config_hash=0x"), std::string::npos);
    EXPECT_NE(one.out.find("seed=5"), std::string::npos);
    for (const char* w : {"3", "16"}) EXPECT_EQ(cli::run(args, std::string("NR_IA_SIM_WORKERS=") + w).out, one.out);
}

TEST(Cli, SnrCdfWritesFile) {
    const std::string out = ::testing::TempDir() + "nr_ia_cdf.csv";
    const auto r = cli::run("snr-cdf --trials 200 --out " + out);
    ASSERT_EQ(r.exit_code, 0);
    const std::string csv = cli::slurp(out);
    EXPECT_NE(csv.find("snr_db,cdf\n"), std::string::npos);
    EXPECT_NE(csv.find(",1\n"), std::string::npos);
}

TEST(Cli, ConfigAndSweep) {
    const std::string cfg = write_temp("nr_ia_cli_cfg.json", R"({"gnb":{"m":16},"montecarlo":{"n_trials":500}})");
    const auto md = cli::run("--config " + cfg + " misdetect");
    ASSERT_EQ(md.exit_code, 0);
    EXPECT_NE(md.out.find(",16,4,analog,analog,120,0,"), std::string::npos);
    EXPECT_NE(md.out.find(",500,1\n"), std::string::npos);

    const std::string grid = write_temp("nr_ia_cli_grid.json", R"({"trials": 300, "seed": 4,
        "grid": {"numerology_n": [3, 5], "lambda_b": [10, 20]}})");
    const auto sw = cli::run("sweep " + grid);
    ASSERT_EQ(sw.exit_code, 0);
    EXPECT_EQ(std::count(sw.out.begin(), sw.out.end(), '#'), 3);
    EXPECT_EQ(lines(sw.out), 1u + 1u + 4u + 2u);
    EXPECT_EQ(cli::run("sweep " + grid).out, sw.out);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli::run("").exit_code, 1);
    EXPECT_EQ(cli::run("--help").exit_code, 0);
    EXPECT_EQ(cli::run("launch").exit_code, 1);
    EXPECT_EQ(cli::run("react --framework SA-UL").exit_code, 1);
    EXPECT_EQ(cli::run("misdetect --m-gnb 8").exit_code, 1);
    EXPECT_EQ(cli::run("--config /nonexistent/cfg.json react").exit_code, 1);
    EXPECT_EQ(cli::run("repro fig9").exit_code, 1);
    const std::string bad = write_temp("nr_ia_cli_bad.json", R"({"colour": 1})");
    EXPECT_EQ(cli::run("--config " + bad + " overhead").exit_code, 1);
}

TEST(Cli, ReproPassAndMismatch) {
    const auto ok = cli::run("repro table1");
    EXPECT_EQ(ok.exit_code, 0);
    EXPECT_NE(ok.out.find("6 pass, 0 fail"), std::string::npos);
    const auto dev = cli::run("repro table2");
    EXPECT_EQ(dev.exit_code, 0);
    EXPECT_NE(dev.out.find("DEVIATION"), std::string::npos);

    const std::string recipes = write_temp("nr_ia_cli_recipes.json", R"({"recipes":[{"id":"t","kind":"directions",
        "provenance":"test","tolerance":{"abs":0},"points":[{"role":"ue","m":4,"expected":7}]}]})");
    const std::string out = ::testing::TempDir() + "nr_ia_repro.csv";
    const auto bad = cli::run("repro t --recipes " + recipes + " --out " + out);
    EXPECT_EQ(bad.exit_code, 2);
    EXPECT_NE(cli::slurp(out).find(",FAIL,"), std::string::npos);
}
