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

#include "qtoken/store.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qtoken::store {
namespace {

using nlohmann::json;

template <std::size_t N>
void append_array(std::string& out, const std::array<double, N>& values) {
    out += '[';
    for (std::size_t i = 0; i < N; ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    out += ']';
}

template <std::size_t N>
std::array<double, N> read_array(const json& j, const char* key) {
    const json& arr = j.at(key);
    if (!arr.is_array() || arr.size() != N) {
        throw StoreFormatError(std::string("field '") + key + "' must be an array of " + std::to_string(N));
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = arr[i].get<double>();
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    if (!std::isfinite(value)) {
        throw StoreFormatError("cannot serialize a non-finite value");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string serialize_token(const token::TokenRecord& token) {
    std::string out;
    out.reserve(512 + token.history.size() * 128);
    out += "{\"token_id\":" + json(token.token_id).dump();
    out += ",\"created_at\":" + std::to_string(token.created_at);
    out += ",\"base_angles\":";
    append_array(out, token.base_angles);
    out += ",\"temporal_depth\":" + std::to_string(token.temporal_depth);
    out += ",\"checkpoints\":";
    append_array(out, token.checkpoints);
    out += ",\"n_uses\":" + std::to_string(token.n_uses);
    out += ",\"failure_count\":" + std::to_string(token.failure_count);
    out += ",\"history\":[";
    for (std::size_t i = 0; i < token.history.size(); ++i) {
        const auto& h = token.history[i];
        if (i) out += ',';
        out += "{\"timestamp\":" + std::to_string(h.timestamp);
        out += ",\"success\":";
        out += h.success ? "true" : "false";
        out += ",\"state_hash\":" + json(h.state_hash).dump() + "}";
    }
    out += "]}";
    return out;
}

token::TokenRecord parse_token(std::string_view line) {
    try {
        const json j = json::parse(line);
        token::TokenRecord t;
        t.token_id = j.at("token_id").get<std::string>();
        t.created_at = j.at("created_at").get<std::int64_t>();
        t.base_angles = read_array<token::kTokenQubits>(j, "base_angles");
        t.temporal_depth = j.at("temporal_depth").get<int>();
        t.checkpoints = read_array<token::kTokenQubits>(j, "checkpoints");
        t.n_uses = j.at("n_uses").get<std::uint64_t>();
        t.failure_count = j.at("failure_count").get<std::uint64_t>();
        for (const json& h : j.at("history")) {
            t.history.push_back({h.at("timestamp").get<std::int64_t>(), h.at("success").get<bool>(),
                                 h.at("state_hash").get<std::string>()});
        }
        return t;
    } catch (const json::exception& e) {
        throw StoreFormatError(std::string("malformed token record: ") + e.what());
    }
}

std::vector<token::TokenRecord> load(const std::filesystem::path& path) {
    std::vector<token::TokenRecord> tokens;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        return tokens;
    }
    std::ifstream in(path);
    if (!in) {
        throw StoreIoError("cannot open store " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            tokens.push_back(parse_token(line));
        } catch (const StoreFormatError& e) {
            throw StoreFormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (in.bad()) {
        throw StoreIoError("error reading store " + path.string());
    }
    return tokens;
}

void save(const std::filesystem::path& path, const std::vector<token::TokenRecord>& tokens) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw StoreIoError("cannot write store " + tmp.string());
        }
        for (const auto& t : tokens) {
            out << serialize_token(t) << '\n';
        }
        out.flush();
        if (!out) {
            throw StoreIoError("error writing store " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw StoreIoError("cannot replace store " + path.string());
    }
}

}  // namespace qtoken::store
