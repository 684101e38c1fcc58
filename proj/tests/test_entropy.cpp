// Copyright 2026 The qtoken Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qtoken/entropy.hpp"

using namespace qtoken;
using entropy::EntropyPool;

namespace {

// 22 counts in the 420..497 range summing to 10000 with H ~= 4.45750 bits.
const std::vector<std::uint64_t> kTwentyTwoOutcomeCounts = {420, 420, 426, 429, 430, 432, 437, 440, 442, 443, 450,
                                                     453, 463, 467, 468, 476, 477, 477, 480, 482, 494, 494};

}  // namespace

TEST(FillPool, DefaultSourceGivesHundredUnitSamples) {
    for (std::uint64_t seed : {0ULL, 1ULL, 123456789ULL}) {
        const EntropyPool pool = entropy::fill_pool(seed);
        ASSERT_EQ(pool.samples().size(), 100u);
        for (double s : pool.samples()) {
            EXPECT_GE(s, 0.0);
            EXPECT_LT(s, 1.0);
            EXPECT_EQ(std::fmod(s * 256, 1.0), 0.0) << "samples are outcome / 256";
        }
        EXPECT_EQ(pool.usage_counter(), 0u);
    }
}

TEST(FillPool, ZeroStateSourceGivesZeros) {
    const EntropyPool pool(+[] { return qsim::new_zero_state(8); }, 5);
    for (double s : pool.samples()) EXPECT_EQ(s, 0.0);
}

TEST(FillPool, SameSeedSamePool) {
    const EntropyPool a = entropy::fill_pool(99), b = entropy::fill_pool(99), c = entropy::fill_pool(100);
    EXPECT_TRUE(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin()));
    EXPECT_FALSE(std::equal(a.samples().begin(), a.samples().end(), c.samples().begin()));
}

TEST(FillPool, RejectsWrongWidthSource) {
    EXPECT_THROW(EntropyPool(+[] { return qsim::new_zero_state(3); }, 1), std::invalid_argument);
}

TEST(Mix, FormulaExamples) {
    EXPECT_DOUBLE_EQ(EntropyPool::mix(0.5, 0.5, 0.0), 0.5);
    EXPECT_NEAR(EntropyPool::mix(0.999, 0.999, 0.9), 0.9999, 1e-15);
    // Wraps into [0, 1).
    EXPECT_NEAR(EntropyPool::mix(1.0, 1.0, 0.5), 0.0005, 1e-15);
}

TEST(Draw, RefreshesEveryFiftyDraws) {
    EntropyPool pool = entropy::fill_pool(3);
    for (int i = 0; i < 50; ++i) pool.draw();
    EXPECT_EQ(pool.refresh_count(), 1u);
    EXPECT_EQ(pool.usage_counter(), 0u);
    pool.draw();
    EXPECT_EQ(pool.refresh_count(), 1u);
    EXPECT_EQ(pool.usage_counter(), 1u);
}

TEST(Draw, TenThousandDrawsStayInRangeAndRefresh200Times) {
    EntropyPool pool = entropy::fill_pool(11);
    for (int i = 0; i < 10'000; ++i) {
        const double v = pool.draw();
        ASSERT_GE(v, 0.0);
        ASSERT_LT(v, 1.0);
        ASSERT_LE(pool.usage_counter(), EntropyPool::kMaxUsage);
    }
    EXPECT_EQ(pool.refresh_count(), 200u);
}

TEST(Draw, DeterministicSequence) {
    EntropyPool a = entropy::fill_pool(8), b = entropy::fill_pool(8);
    for (int i = 0; i < 500; ++i) ASSERT_EQ(a.draw(), b.draw());
}

TEST(EntropyQuality, FairCoin) {
    const auto r = entropy::entropy_quality(std::vector<std::uint64_t>{5000, 5000});
    EXPECT_DOUBLE_EQ(r.raw_entropy, 1.0);
    EXPECT_DOUBLE_EQ(r.max_entropy, 1.0);
    EXPECT_DOUBLE_EQ(r.quality, 1.0);
    EXPECT_EQ(r.distinct_outcomes, 2u);
}

TEST(EntropyQuality, UniformOverTwentyTwo) {
    const auto r = entropy::entropy_quality(std::vector<std::uint64_t>(22, 454));
    EXPECT_NEAR(r.raw_entropy, std::log2(22.0), 1e-12);
    EXPECT_NEAR(r.max_entropy, 4.4594, 5e-5);
    EXPECT_NEAR(r.quality, 1.0, 1e-12);
}

TEST(EntropyQuality, TwentyTwoOutcomeDistribution) {
    ASSERT_EQ(std::accumulate(kTwentyTwoOutcomeCounts.begin(), kTwentyTwoOutcomeCounts.end(), std::uint64_t{0}), 10000u);
    const auto r = entropy::entropy_quality(kTwentyTwoOutcomeCounts);
    EXPECT_NEAR(r.raw_entropy, 4.4575, 5e-5);
    EXPECT_NEAR(r.quality, 0.9996, 5e-5);
}

TEST(EntropyQuality, DegenerateAndErrors) {
    const auto one = entropy::entropy_quality(std::vector<std::uint64_t>{0, 7, 0});
    EXPECT_EQ(one.distinct_outcomes, 1u);
    EXPECT_EQ(one.quality, 0.0);
    EXPECT_THROW(entropy::entropy_quality(std::vector<std::uint64_t>{}), std::invalid_argument);
    EXPECT_THROW(entropy::entropy_quality(std::vector<std::uint64_t>{0, 0}), std::invalid_argument);
    EXPECT_THROW(entropy::entropy_quality(qsim::Counts{}), std::invalid_argument);
}

TEST(EntropyQuality, BoundedAndOneOnlyWhenUniform) {
    Rng rng(404);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = 2 + rng.below(40);
        std::vector<std::uint64_t> counts(k);
        for (auto& c : counts) c = 1 + rng.below(1000);
        const auto r = entropy::entropy_quality(counts);
        EXPECT_LE(r.raw_entropy, std::log2(static_cast<double>(k)) + 1e-12);
        EXPECT_GE(r.quality, 0.0);
        EXPECT_LE(r.quality, 1.0);
        const bool uniform = std::all_of(counts.begin(), counts.end(), [&](auto c) { return c == counts[0]; });
        EXPECT_EQ(std::abs(r.quality - 1.0) < 1e-12, uniform);
    }
}
