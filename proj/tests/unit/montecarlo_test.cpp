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
#include <cmath>
#include <numbers>

#include "nr_ia/config.hpp"
#include "nr_ia/montecarlo.hpp"
#include "property.hpp"

using namespace nr_ia;

namespace {

Scenario scenario(int m_gnb, int m_ue, double lambda, double gamma = -5, bool diversity = false) {
    Json j;
    j["gnb"]["m"] = m_gnb;
    j["ue"]["m"] = m_ue;
    j["ssburst"]["diversity"] = diversity ? 1 : 0;
    j["montecarlo"]["lambda_b"] = lambda;
    j["montecarlo"]["gamma_db"] = gamma;
    return scenario_from_json(j);
}

// P(every gNB in the disc is in outage) for a PPP, by trapezoidal integration.
double outage_floor(const ChannelParams& p, double lambda_km2, double radius_m) {
    const int steps = 400000;
    const double h = radius_m / steps;
    double area = 0;
    for (int i = 0; i <= steps; ++i) {
        const double r = i * h;
        const double alive = std::min(1.0, std::exp(-p.outage.a_out_per_m * r + p.outage.b_out));
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        area += w * alive * 2 * std::numbers::pi * r * h;
    }
    return std::exp(-lambda_km2 * 1e-6 * area);
}

} // namespace

TEST(Ppp, CountAndOrdering) {
    const int n = 20000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        RandomStream rng(1, {static_cast<std::uint32_t>(i), 0, StreamPurpose::deployment, 0});
        const Deployment d = drop_ppp(10, 400, rng);
        double prev = 0;
        for (const Point2& p : d.gnb_positions) {
            const double r = std::hypot(p.x, p.y);
            ASSERT_LE(r, 400.0);
            ASSERT_GE(r, prev);
            prev = r;
        }
        const double c = static_cast<double>(d.gnb_positions.size());
        s += c;
        s2 += c * c;
    }
    const double mean = 10 * std::numbers::pi * 0.16;
    EXPECT_NEAR(s / n, mean, 5 * std::sqrt(mean / n));
    EXPECT_NEAR(s2 / n - (s / n) * (s / n), mean, 0.1 * mean);
    RandomStream rng(1, {});
    EXPECT_THROW(drop_ppp(0, 400, rng), DomainError);
}

TEST(Wilson, KnownIntervals) {
    auto [lo, hi] = wilson_interval(5, 10);
    EXPECT_NEAR(lo, 0.23659309051256394, 1e-12);
    EXPECT_NEAR(hi, 0.7634069094874361, 1e-12);
    auto [lo0, hi0] = wilson_interval(0, 100);
    EXPECT_EQ(lo0, 0.0);
    EXPECT_NEAR(hi0, 0.03699349820698569, 1e-12);
    auto [lo1, hi1] = wilson_interval(100, 100);
    EXPECT_NEAR(lo1, 1 - 0.03699349820698569, 1e-12);
    EXPECT_EQ(hi1, 1.0);
}

TEST(WilsonProperty, ContainsEstimate) {
    prop::Gen gen(51);
    for (int i = 0; i < prop::kCases; ++i) {
        const std::int64_t n = gen.integer(1, 100000);
        const std::int64_t k = gen.integer(0, n);
        auto [lo, hi] = wilson_interval(k, n);
        const double p = static_cast<double>(k) / n;
        EXPECT_LE(lo, p + 1e-15);
        EXPECT_GE(hi, p - 1e-15);
        EXPECT_GE(lo, 0.0);
        EXPECT_LE(hi, 1.0);
    }
}

TEST(AlignedBlock, WithinSweep) {
    prop::Gen gen(52);
    const std::vector<ArchKind> kinds{ArchKind::analog, ArchKind::hybrid, ArchKind::digital};
    for (int i = 0; i < prop::kCases; ++i) {
        const Endpoint g = make_endpoint(gen.pick(std::vector<int>{4, 16, 64}), Role::gnb, gen.pick(kinds));
        const Endpoint u = make_endpoint(gen.pick(std::vector<int>{1, 4, 16, 64}), Role::ue, gen.pick(kinds));
        const int b = aligned_block_index(g, u, gen.real(-10, 10));
        EXPECT_GE(b, 0);
        EXPECT_LT(b, sweep_blocks(g, u));
    }
}

TEST(Misdetection, DecreasesWithDensity) {
    const auto sparse = run_misdetection(scenario(4, 4, 10), 4000, 3);
    const auto dense = run_misdetection(scenario(4, 4, 60), 4000, 3);
    EXPECT_GT(sparse.p_md, dense.p_md);
    EXPECT_GT(dense.ci_low, -1e-12);
    EXPECT_LE(sparse.ci_low, sparse.p_md);
    EXPECT_GE(sparse.ci_high, sparse.p_md);
}

TEST(Misdetection, VeryDenseNetworkAlmostAlwaysDetects) {
    const auto e = run_misdetection(scenario(4, 4, 300), 2000, 4);
    EXPECT_LT(e.p_md, 1e-3);
}

TEST(Misdetection, ExtremeDensityWithLargeArrays) {
    const auto e = run_misdetection(scenario(64, 16, 1e4), 100, 4);
    EXPECT_LT(e.p_md, 1e-3);
}

// gNBs beyond the default radius almost never escape outage, so enlarging the
// disc changes almost nothing. The radial construction keeps the inner gNBs
// identical, which makes the comparison trial by trial.
TEST(Misdetection, DiscTruncationBias) {
    Scenario inner = scenario(4, 4, 10);
    Scenario outer = inner;
    outer.montecarlo.radius_m = 800;
    const auto a = simulate_trials(inner, 20000, 13);
    const auto b = simulate_trials(outer, 20000, 13);
    const auto c = compare_paired(b, a);
    EXPECT_EQ(c.only_better_missed, 0);
    EXPECT_LE(c.gap, 5e-4);
    const double beyond = regime_probabilities(400, inner.channel).outage;
    EXPECT_GT(beyond, 0.9997);
}

TEST(Misdetection, EmptyDiscCountsAsMiss) {
    const auto e = run_misdetection(scenario(4, 4, 0.01), 1000, 5);
    EXPECT_GT(e.p_md, 0.99);
}

// With no threshold only outage can cause a miss: compare with the PPP void
// probability of non-outage gNBs.
TEST(Misdetection, OutageMassMatchesIntegral) {
    const Scenario s = scenario(4, 4, 10, -INFINITY);
    const double expect = outage_floor(s.channel, 10, 400);
    EXPECT_NEAR(expect, 0.32794749283968855, 1e-6);
    const auto e = run_misdetection(s, 20000, 6);
    EXPECT_NEAR(e.p_md, expect, 5 * std::sqrt(expect * (1 - expect) / 20000));
    const auto no_signal = std::count(e.snr_cdf.begin(), e.snr_cdf.end(), kNoSignalDb);
    EXPECT_EQ(static_cast<double>(no_signal) / 20000, e.p_md);
}

TEST(Misdetection, UnreachableThreshold) {
    EXPECT_EQ(run_misdetection(scenario(4, 4, 30, 1000), 500, 7).p_md, 1.0);
}

TEST(Misdetection, DeterministicAcrossWorkers) {
    const Scenario s = scenario(16, 4, 20);
    const auto one = simulate_trials(s, 3000, 99, 1);
    for (int w : {2, 4, 16}) {
        const auto many = simulate_trials(s, 3000, 99, w);
        ASSERT_EQ(one.size(), many.size());
        for (std::size_t i = 0; i < one.size(); ++i) {
            ASSERT_EQ(one[i].best_snr_inst_db, many[i].best_snr_inst_db) << w << ' ' << i;
            ASSERT_EQ(one[i].detected, many[i].detected);
        }
    }
    const auto again = run_misdetection(s, 3000, 99, 3);
    EXPECT_EQ(again.p_md, summarize(one).p_md);
    EXPECT_EQ(again.snr_cdf, summarize(one).snr_cdf);
}

TEST(Misdetection, ErrorsOnBadTrialCount) {
    EXPECT_THROW(simulate_trials(scenario(4, 4, 10), 0, 1), DomainError);
}

// Same seed couples trials, so extra chunks can only help.
TEST(MisdetectionProperty, DiversityNeverHurtsTrialwise) {
    const auto d0 = simulate_trials(scenario(4, 4, 20, -5, false), 5000, 8);
    const auto d1 = simulate_trials(scenario(4, 4, 20, -5, true), 5000, 8);
    for (std::size_t i = 0; i < d0.size(); ++i) {
        ASSERT_EQ(d0[i].best_snr_avg_db, d1[i].best_snr_avg_db);
        ASSERT_GE(d1[i].best_snr_inst_db, d0[i].best_snr_inst_db);
        if (d0[i].detected) {
            ASSERT_TRUE(d1[i].detected);
        }
    }
}

TEST(MisdetectionProperty, LargerArraysNeverHurtTrialwise) {
    const auto small = simulate_trials(scenario(4, 4, 20), 5000, 9);
    const auto big = simulate_trials(scenario(64, 16, 20), 5000, 9);
    for (std::size_t i = 0; i < small.size(); ++i) {
        if (small[i].detected) {
            ASSERT_TRUE(big[i].detected) << i;
        }
    }
    const auto c = compare_paired(big, small);
    EXPECT_EQ(c.only_better_missed, 0);
    EXPECT_GT(c.gap, 0);
}

TEST(SnrCdf, LargerArraysDominate) {
    const auto small = snr_cdf(scenario(4, 4, 20), 4000, 14);
    const auto big = snr_cdf(scenario(64, 16, 20), 4000, 14);
    ASSERT_EQ(small.size(), big.size());
    EXPECT_TRUE(std::is_sorted(small.begin(), small.end()));
    for (std::size_t i = 0; i < small.size(); ++i) ASSERT_GE(big[i], small[i]);
    const auto pts = ecdf_points(small);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        ASSERT_GT(pts[i].cdf, pts[i - 1].cdf);
        ASSERT_GT(pts[i].snr_db, pts[i - 1].snr_db);
    }
    EXPECT_GT(pts.front().cdf, 0.0);
    EXPECT_DOUBLE_EQ(pts.back().cdf, 1.0);
}

TEST(PairedComparison, Counts) {
    std::vector<TrialOutcome> a(4), b(4);
    a[0].detected = true;
    a[1].detected = true;
    a[2].detected = true;
    b[0].detected = true;
    b[3].detected = true;
    const auto c = compare_paired(a, b);
    EXPECT_DOUBLE_EQ(c.p_better, 0.25);
    EXPECT_DOUBLE_EQ(c.p_worse, 0.5);
    EXPECT_EQ(c.only_worse_missed, 2);
    EXPECT_EQ(c.only_better_missed, 1);
    EXPECT_NEAR(c.se_paired, std::sqrt((0.75 - 0.0625) / 4), 1e-15);
    EXPECT_THROW(compare_paired(a, std::vector<TrialOutcome>(3)), DomainError);
}

TEST(Ecdf, StepPoints) {
    const auto pts = ecdf_points({-INFINITY, 1, 1, 2});
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[0].snr_db, -INFINITY);
    EXPECT_DOUBLE_EQ(pts[0].cdf, 0.25);
    EXPECT_DOUBLE_EQ(pts[1].cdf, 0.75);
    EXPECT_DOUBLE_EQ(pts[2].cdf, 1.0);
}

TEST(Sweep, SeedsAndErrors) {
    std::vector<GridPoint> grid{{scenario(4, 4, 10)}, {std::string("bad point")}, {scenario(4, 4, 10)}};
    const auto rows = sweep(grid, 500, 11);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_TRUE(rows[0].ok());
    ASSERT_NE(rows[1].error(), nullptr);
    EXPECT_EQ(*rows[1].error(), "bad point");
    EXPECT_EQ(rows[0].seed, derive_seed(11, 0));
    EXPECT_EQ(rows[2].seed, derive_seed(11, 2));
    EXPECT_TRUE(rows[0].estimate.snr_cdf.empty());

    const auto crn = sweep(grid, 500, 11, true);
    EXPECT_EQ(crn[0].seed, 11u);
    EXPECT_EQ(crn[0].estimate.p_md, crn[2].estimate.p_md);

    EXPECT_TRUE(sweep({}, 500, 11).empty());
    const auto again = sweep(grid, 500, 11);
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].estimate.p_md, again[i].estimate.p_md);
}
