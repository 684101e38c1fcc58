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
#include <functional>
#include <optional>
#include <string>

#include "qtoken/entropy.hpp"
#include "qtoken/qsim.hpp"
#include "qtoken/random.hpp"
#include "qtoken/token.hpp"

namespace qtoken::verify {

using qsim::MeasurementBasis;
using token::Seconds;
using token::TokenRecord;

using BasisSchedule = std::array<MeasurementBasis, token::kTokenQubits>;

struct VerificationConfig {
    double epsilon0 = 0.03;
    int rounds = 3;
    /// Shots per qubit and round when `sampled` is set.
    std::uint64_t shots_per_round = 1000;
    /// Estimate "measured" expectations from finite shots instead of exactly.
    bool sampled = false;
    /// Modelled wall-clock spacing between rounds, used only for
    /// temporal_consistency. Circuits are built at the integer time t.
    double round_interval_seconds = 1e-5;

    /// Throws std::invalid_argument unless epsilon0 > 0 and rounds >= 1.
    void validate() const;
};

/// Outcome of one verification; field names follow the persisted report.
struct VerificationReport {
    bool success = false;
    double difference = 0.0;
    double threshold = 0.0;
    int evolution_step = 0;
    double entropy_level = 0.0;
    double temporal_consistency = 0.0;
    int verification_rounds = 0;
    std::uint64_t failure_count = 0;
};

/// (0.3 + w, 0.3 + w, 0.4 - 2w). Throws std::invalid_argument unless
/// 0 <= w <= 0.1.
std::array<double, 3> basis_probabilities(double e_weight);

/// Samples one basis per qubit with probabilities basis_probabilities(e_weight).
BasisSchedule sample_bases(double e_weight, Rng& rng);

/// Left rotation of the schedule by `steps` positions.
BasisSchedule rotate_schedule(const BasisSchedule& bases, int steps);

/// e_weight = 0.1 * pool.draw(), sample per qubit, rotate left by the token's
/// current evolution step.
BasisSchedule choose_bases(const TokenRecord& token, Seconds t, entropy::EntropyPool& pool, Rng& rng);

/// eps0 * (1 + f(t) * exp(-e_quantum)) + e_factor, clamped below at 0.001.
double threshold_value(double epsilon0, double f_t, double e_quantum, double e_factor);

/// Draws e_quantum then e_factor = 0.01 * draw from the pool.
double threshold(Seconds t, entropy::EntropyPool& pool, double epsilon0 = 0.03);

/// Per-layer entropy used when rebuilding evolution circuits during
/// verification. Both sides derive it from public data so they agree without
/// sharing a live pool.
using LayerEntropyFn = std::function<double(const std::string& token_id, int step, int round, int layer)>;

/// SHA-256(token_id || step || round || layer as u32 BE), top 53 bits / 2^53.
double derive_layer_entropy(const std::string& token_id, int step, int round, int layer);

/// How the party presenting a token builds its responses. The default is the
/// legitimate holder; the attack harness overrides individual aspects.
struct Prover {
    explicit Prover(TokenRecord presented) : record(std::move(presented)) {}

    TokenRecord record;
    /// Added to the evolution step used for layer-entropy derivation.
    int step_shift = 0;
    /// Measure every qubit in this basis instead of the prescribed schedule.
    std::optional<MeasurementBasis> basis_override;
    /// Replace every per-layer entropy value with this constant.
    std::optional<double> injected_entropy;
};

/// Per-qubit expectations of base-prepared state + evolution circuit.
std::array<double, token::kTokenQubits> evolved_expectations(const TokenRecord& token, Seconds t,
                                                             std::span<const double> layer_entropy,
                                                             const BasisSchedule& bases);

/// SHA-256 of the eight values rounded to 12 decimals, as BE float64 patterns.
std::string expectation_state_hash(const std::array<double, token::kTokenQubits>& expected);

/// Runs the multi-round protocol for `prover` against the verifier's stored
/// `token`, then appends a history entry and updates the token's counters.
///
/// Throws token::TamperedTokenError when the stored token fails its audit and
/// token::ExpiredTokenError when it has outlived its effective lifetime.
VerificationReport verify_with_prover(TokenRecord& token, Seconds t, entropy::EntropyPool& pool, Rng& rng,
                                      const VerificationConfig& config, const Prover& prover,
                                      const LayerEntropyFn& layer_entropy = derive_layer_entropy);

/// `presented` defaults to the stored token itself (the legitimate holder).
VerificationReport verify_token(TokenRecord& token, Seconds t, entropy::EntropyPool& pool, Rng& rng,
                                const VerificationConfig& config = {},
                                const std::optional<TokenRecord>& presented = std::nullopt);

}  // namespace qtoken::verify
