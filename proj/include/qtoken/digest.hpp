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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace qtoken {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(std::span<const std::uint8_t> bytes);

/// Lowercase hex encoding.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// True for exactly 64 lowercase hex characters.
bool is_sha256_hex(std::string_view text);

/// Byte-buffer builder for the fixed big-endian layouts that get hashed.
class ByteWriter {
public:
    void put_u8(std::uint8_t v) { bytes_.push_back(v); }
    void put_u32_be(std::uint32_t v);
    void put_u64_be(std::uint64_t v);
    void put_i64_be(std::int64_t v) { put_u64_be(static_cast<std::uint64_t>(v)); }
    /// IEEE-754 bit pattern, big-endian.
    void put_f64_be(double v);
    void put_text(std::string_view text);

    std::span<const std::uint8_t> bytes() const { return bytes_; }
    Sha256Digest digest() const { return sha256(bytes_); }

private:
    std::basic_string<std::uint8_t> bytes_;
};

}  // namespace qtoken
