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
#include <string_view>

#include "qtoken/entropy.hpp"
#include "qtoken/random.hpp"
#include "qtoken/token.hpp"
#include "qtoken/verify.hpp"

namespace qtoken::attacks {

enum class AttackKind { Standard, Temporal, Basis, Entropy, Combined };

inline constexpr std::array<AttackKind, 5> kAllAttacks = {
    AttackKind::Standard, AttackKind::Temporal, AttackKind::Basis, AttackKind::Entropy, AttackKind::Combined,
};

/// Lowercase name used as the JSON key ("standard", "temporal", ...).
std::string_view to_string(AttackKind kind);

/// Forged prover for one trial:
///  - Standard: uniformly random angles and checkpoints under the victim's id.
///  - Temporal: true angles, layer entropy derived for step (s + k) mod d, k in 1..d-1.
///  - Basis:    true angles, every qubit answered in Z regardless of schedule.
///  - Entropy:  true angles, every layer entropy replaced by 0.5.
///  - Combined: Temporal shift and Basis override together.
verify::Prover forge_prover(AttackKind kind, const token::TokenRecord& victim, Rng& rng);

/// Runs one forged verification against a copy of `victim`; true when the
/// attacker passed. The victim itself is never modified.
bool attack_trial(AttackKind kind, const token::TokenRecord& victim, token::Seconds t,
                  entropy::EntropyPool& pool, Rng& rng, const verify::VerificationConfig& config = {},
                  const verify::LayerEntropyFn& layer_entropy = verify::derive_layer_entropy);

struct SecurityAnalysis {
    std::array<double, kAllAttacks.size()> rates{};
    std::uint64_t trials_per_attack = 0;
    double overall_security_score = 0.0;
    double entropy_quality_score = 0.0;

    double rate(AttackKind kind) const { return rates[static_cast<std::size_t>(kind)]; }
};

struct AnalysisOptions {
    /// Creation time of the generated tokens; trial times are offset from it.
    token::Seconds now = 1'700'000'000;
    std::uint64_t entropy_shots = 10'000;
};

/// Generates `token_count` tokens and runs `trials_per_attack` trials of each
/// kind, assigned round-robin over the tokens. Deterministic given `seed`.
SecurityAnalysis run_security_analysis(std::uint64_t token_count, std::uint64_t trials_per_attack,
                                       std::uint64_t seed, const AnalysisOptions& options = {});

/// Same, against an existing token set (copies are attacked).
SecurityAnalysis run_security_analysis(std::span<const token::TokenRecord> tokens,
                                       std::uint64_t trials_per_attack, std::uint64_t seed,
                                       token::Seconds now, std::uint64_t entropy_shots = 10'000);

/// Fraction of legitimate (unforged) verifications that succeed, run under
/// the same schedule as the attack trials.
double legitimate_success_rate(std::span<const token::TokenRecord> tokens, std::uint64_t trials,
                               std::uint64_t seed, token::Seconds now);

/// Normalized entropy of `shots` measurements of a token's evolved register.
entropy::EntropyQualityReport token_distribution_quality(const token::TokenRecord& token, token::Seconds t,
                                                         std::uint64_t shots, Rng& rng);

}  // namespace qtoken::attacks
