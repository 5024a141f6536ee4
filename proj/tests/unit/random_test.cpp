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

#include <cmath>
#include <set>

#include "nr_ia/random.hpp"

using namespace nr_ia;

// Known-answer vectors for Philox4x32-10.
TEST(Philox, KnownAnswers) {
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    EXPECT_EQ(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStream, ReproducibleAndDistinct) {
    RandomStream a(7, {1, 2, StreamPurpose::link, 0});
    RandomStream b(7, {1, 2, StreamPurpose::link, 0});
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u32(), b.next_u32());

    std::set<std::uint32_t> firsts;
    for (std::uint32_t t = 0; t < 4; ++t) {
        for (std::uint32_t g = 0; g < 4; ++g) {
            for (auto p : {StreamPurpose::deployment, StreamPurpose::link, StreamPurpose::fading}) {
                for (std::uint32_t c = 0; c < 4; ++c) firsts.insert(RandomStream(7, {t, g, p, c}).next_u32());
            }
        }
    }
    EXPECT_EQ(firsts.size(), 4u * 4u * 3u * 4u);
    EXPECT_NE(RandomStream(7, {}).next_u32(), RandomStream(8, {}).next_u32());
}

TEST(RandomStream, UniformRangeAndMoments) {
    RandomStream r(3, {});
    double sum = 0, sum2 = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sum2 += u * u;
    }
    EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
    EXPECT_NEAR(sum2 / n - (sum / n) * (sum / n), 1.0 / 12, 2e-3);
}

TEST(RandomStream, NormalExponentialGammaMoments) {
    RandomStream r(4, {});
    const int n = 200000;
    double sn = 0, sn2 = 0, se = 0;
    for (int i = 0; i < n; ++i) {
        const double z = r.normal();
        sn += z;
        sn2 += z * z;
        se += r.exponential();
    }
    EXPECT_NEAR(sn / n, 0.0, 5 / std::sqrt(n));
    EXPECT_NEAR(sn2 / n, 1.0, 0.02);
    EXPECT_NEAR(se / n, 1.0, 5 / std::sqrt(n));
    for (double shape : {0.5, 2.0, 3.0}) {
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            const double g = r.gamma(shape);
            ASSERT_GT(g, 0.0);
            s += g;
            s2 += g * g;
        }
        EXPECT_NEAR(s / n, shape, 5 * std::sqrt(shape / n)) << shape;
        EXPECT_NEAR(s2 / n - (s / n) * (s / n), shape, 0.05 * shape) << shape;
    }
}

TEST(Seeds, DeriveSeedSpreads) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(derive_seed(42, 3), derive_seed(42, 3));
    EXPECT_NE(derive_seed(42, 3), derive_seed(43, 3));
}
