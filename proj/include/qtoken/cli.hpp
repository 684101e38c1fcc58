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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "qtoken/token.hpp"

namespace qtoken::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsage = 2,
    kIoError = 3,
};

struct RunConfig {
    std::uint64_t seed = 0;
    std::filesystem::path store_path = "qtoken_store.jsonl";
    std::uint64_t shots = 10'000;
    std::uint64_t trials = 1'000;
    /// Frozen "now"; the system clock is used when unset.
    std::optional<token::Seconds> clock_override;

    token::Seconds now() const;
};

int cmd_generate(const RunConfig& config, std::uint64_t count, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, const std::string& token_id, std::ostream& out, std::ostream& err);
/// With `fresh`, attacks `fresh_count` newly generated tokens instead of the store.
int cmd_attack(const RunConfig& config, bool fresh, std::uint64_t fresh_count, std::ostream& out,
               std::ostream& err);
int cmd_entropy_report(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evolve(const RunConfig& config, const std::string& token_id, std::int64_t horizon_seconds,
               std::int64_t step_seconds, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand. Reads QTOKEN_STORE for the
/// default store path.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qtoken::cli
