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

// JSON-lines token store: one token object per line, keys in a fixed order,
// floats written with 17 significant digits so they read back bit-exactly.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qtoken/token.hpp"

namespace qtoken::store {

class StoreFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StoreIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "%.17g" rendering of a finite double.
std::string format_double(double value);

/// Single JSON object, no trailing newline.
std::string serialize_token(const token::TokenRecord& token);

token::TokenRecord parse_token(std::string_view line);

/// Missing file reads as an empty store. Blank lines are skipped.
std::vector<token::TokenRecord> load(const std::filesystem::path& path);

/// Replaces the file atomically (write to a sibling temp file, then rename).
void save(const std::filesystem::path& path, const std::vector<token::TokenRecord>& tokens);

}  // namespace qtoken::store
