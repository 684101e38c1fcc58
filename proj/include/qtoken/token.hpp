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
#include <stdexcept>
#include <string>
#include <vector>

#include "qtoken/entropy.hpp"
#include "qtoken/qsim.hpp"
#include "qtoken/random.hpp"

namespace qtoken::token {

inline constexpr int kTokenQubits = 8;
inline constexpr int kTemporalDepth = 4;
inline constexpr std::int64_t kStepSeconds = 900;
inline constexpr double kBaseLifetimeSeconds = 4 * 3600.0;
inline constexpr double kFailurePenalty = 0.9;

using Seconds = std::int64_t;

struct HistoryEntry {
    Seconds timestamp = 0;
    bool success = false;
    std::string state_hash;

    friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// A token's full secret material and lifecycle counters.
struct TokenRecord {
    std::string token_id;
    Seconds created_at = 0;
    std::array<double, kTokenQubits> base_angles{};
    int temporal_depth = kTemporalDepth;
    std::array<double, kTokenQubits> checkpoints{};
    std::uint64_t n_uses = 0;
    std::uint64_t failure_count = 0;
    std::vector<HistoryEntry> history;

    friend bool operator==(const TokenRecord&, const TokenRecord&) = default;
};

class ExpiredTokenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TamperedTokenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// SHA-256 over outcome byte || created_at (8 bytes BE) || 8 angle bit
/// patterns (BE), as lowercase hex.
std::string compute_token_id(std::uint8_t outcome, Seconds created_at,
                             std::span<const double, kTokenQubits> base_angles);

/// Draws 8 angles (2*pi*E) and then 8 checkpoints from the pool, measures one
/// byte of the base-prepared register and derives the token id.
TokenRecord generate_token(entropy::EntropyPool& pool, Seconds now, Rng& rng);

/// (sin(t/43200) + sin(t/3600) + sin(t/300)) / 3 with t in seconds.
double temporal_modulation(double t);

/// sin^2(theta * f(t)) * pi.
double final_angle(double theta, double t);

/// Phase angle of qubit `qubit` at layer `layer`:
/// theta * sin((layer + 1) * pi / depth) * cos(2 * pi * layer_entropy).
double layer_phase(double theta, int layer, int depth, double layer_entropy);

/// One evolution circuit with `layer_entropy.size()` == temporal_depth layers.
/// Layer l: RY(final_angle) on each qubit, ring CNOT(i, i+1 mod 8), CSWAP(0,1,2)
/// and CCZ(5,6,7) on even layers, then PHASE(layer_phase) on each qubit.
qsim::Circuit evolution_circuit(const TokenRecord& token, Seconds t, std::span<const double> layer_entropy);

/// Same circuit drawing one pool value per layer.
qsim::Circuit evolution_circuit(const TokenRecord& token, Seconds t, entropy::EntropyPool& pool);

/// floor((t - t0) / 900) mod depth. Throws std::invalid_argument when t < t0.
int evolution_step(const TokenRecord& token, Seconds t);

/// tau0 * exp(-n_uses / max(1, t - t0)) * 0.9^failure_count, in seconds.
double effective_lifetime(const TokenRecord& token, Seconds t);

bool is_expired(const TokenRecord& token, Seconds t);

/// Recomputes token_id, checks angle/checkpoint ranges and history hashes.
/// The measured outcome byte is not stored, so the id check accepts the
/// record when any of the 256 possible bytes reproduces token_id.
bool lifecycle_audit(const TokenRecord& token);

}  // namespace qtoken::token
