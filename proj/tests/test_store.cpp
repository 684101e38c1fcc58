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

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qtoken/store.hpp"
#include "qtoken/verify.hpp"

using namespace qtoken;
using token::TokenRecord;

namespace {

constexpr token::Seconds kT0 = 1'700'000'000;

std::filesystem::path temp_path(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "qtoken_store_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

TokenRecord used_token(std::uint64_t seed) {
    auto pool = entropy::fill_pool(seed);
    Rng rng(seed + 3);
    TokenRecord t = token::generate_token(pool, kT0, rng);
    verify::verify_token(t, kT0 + 60, pool, rng);
    return t;
}

}  // namespace

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
    Rng rng(1);
    for (int i = 0; i < 10'000; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng.below(20)) - 10);
        EXPECT_EQ(std::strtod(store::format_double(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(store::format_double(0.1), "0.10000000000000001");
    EXPECT_THROW(store::format_double(std::nan("")), store::StoreFormatError);
}

TEST(Serialize, FixedKeyOrder) {
    const std::string line = store::serialize_token(used_token(1));
    const char* keys[] = {"\"token_id\"", "\"created_at\"", "\"base_angles\"", "\"temporal_depth\"",
                          "\"checkpoints\"", "\"n_uses\"", "\"failure_count\"", "\"history\""};
    std::size_t pos = 0;
    for (const char* k : keys) {
        const auto at = line.find(k, pos);
        ASSERT_NE(at, std::string::npos) << k;
        pos = at;
    }
    EXPECT_EQ(line.find('\n'), std::string::npos);
}

TEST(Serialize, RoundTripIsExact) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const TokenRecord t = used_token(seed);
        const TokenRecord back = store::parse_token(store::serialize_token(t));
        EXPECT_EQ(back, t);
        EXPECT_TRUE(token::lifecycle_audit(back));
    }
}

TEST(Parse, MalformedRecordsRejected) {
    EXPECT_THROW(store::parse_token("not json"), store::StoreFormatError);
    EXPECT_THROW(store::parse_token("{}"), store::StoreFormatError);
    std::string line = store::serialize_token(used_token(2));
    const auto at = line.find("\"base_angles\":[");
    line.insert(at + 15, "1.0,");
    EXPECT_THROW(store::parse_token(line), store::StoreFormatError);
}

TEST(LoadSave, FileRoundTripAndMissingFile) {
    const auto path = temp_path("roundtrip.jsonl");
    std::filesystem::remove(path);
    EXPECT_TRUE(store::load(path).empty());

    std::vector<TokenRecord> tokens;
    for (std::uint64_t s = 0; s < 5; ++s) tokens.push_back(used_token(s));
    store::save(path, tokens);
    EXPECT_EQ(store::load(path), tokens);
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
}

TEST(LoadSave, ReportsLineOfBadRecord) {
    const auto path = temp_path("bad.jsonl");
    {
        std::ofstream out(path);
        out << store::serialize_token(used_token(1)) << "\n\n{\"token_id\": 3}\n";
    }
    try {
        store::load(path);
        FAIL() << "expected StoreFormatError";
    } catch (const store::StoreFormatError& e) {
        EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
    }
}

TEST(LoadSave, UnwritableDirectoryIsIoError) {
    EXPECT_THROW(store::save("/nonexistent-dir/for/sure/store.jsonl", {}), store::StoreIoError);
}
