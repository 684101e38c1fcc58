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

#include "qtoken/attacks.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qtoken::attacks {
namespace {

// Trials walk through two full evolution cycles so every step value is hit.
constexpr token::Seconds kTrialSpacing = token::kStepSeconds / 2;
constexpr std::uint64_t kScheduleLength = 8;

token::Seconds trial_time(const token::TokenRecord& victim, token::Seconds now, std::uint64_t trial) {
    return std::max(now, victim.created_at) + kTrialSpacing * static_cast<token::Seconds>(trial % kScheduleLength);
}

}  // namespace

std::string_view to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::Standard: return "standard";
        case AttackKind::Temporal: return "temporal";
        case AttackKind::Basis: return "basis";
        case AttackKind::Entropy: return "entropy";
        case AttackKind::Combined: return "combined";
    }
    return "?";
}

verify::Prover forge_prover(AttackKind kind, const token::TokenRecord& victim, Rng& rng) {
    verify::Prover prover{victim};
    const auto shift = [&] {
        const int depth = std::max(victim.temporal_depth, 2);
        return 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(depth - 1)));
    };
    switch (kind) {
        case AttackKind::Standard:
            for (double& theta : prover.record.base_angles) {
                theta = 2 * std::numbers::pi * rng.uniform();
            }
            for (double& checkpoint : prover.record.checkpoints) {
                checkpoint = rng.uniform();
            }
            break;
        case AttackKind::Temporal:
            prover.step_shift = shift();
            break;
        case AttackKind::Basis:
            prover.basis_override = qsim::MeasurementBasis::Z;
            break;
        case AttackKind::Entropy:
            prover.injected_entropy = 0.5;
            break;
        case AttackKind::Combined:
            prover.step_shift = shift();
            prover.basis_override = qsim::MeasurementBasis::Z;
            break;
    }
    return prover;
}

bool attack_trial(AttackKind kind, const token::TokenRecord& victim, token::Seconds t,
                  entropy::EntropyPool& pool, Rng& rng, const verify::VerificationConfig& config,
                  const verify::LayerEntropyFn& layer_entropy) {
    token::TokenRecord copy = victim;
    const verify::Prover prover = forge_prover(kind, victim, rng);
    return verify::verify_with_prover(copy, t, pool, rng, config, prover, layer_entropy).success;
}

SecurityAnalysis run_security_analysis(std::span<const token::TokenRecord> tokens,
                                       std::uint64_t trials_per_attack, std::uint64_t seed,
                                       token::Seconds now, std::uint64_t entropy_shots) {
    if (tokens.empty() || trials_per_attack == 0) {
        throw std::invalid_argument("security analysis needs at least one token and one trial");
    }
    entropy::EntropyPool pool = entropy::fill_pool(mix_seed(seed, 1));
    Rng rng(mix_seed(seed, 2));

    SecurityAnalysis analysis;
    analysis.trials_per_attack = trials_per_attack;
    for (AttackKind kind : kAllAttacks) {
        std::uint64_t successes = 0;
        for (std::uint64_t trial = 0; trial < trials_per_attack; ++trial) {
            const token::TokenRecord& victim = tokens[trial % tokens.size()];
            try {
                successes += attack_trial(kind, victim, trial_time(victim, now, trial), pool, rng) ? 1 : 0;
            } catch (const token::ExpiredTokenError&) {
                // An expired victim rejects every presentation.
            }
        }
        analysis.rates[static_cast<std::size_t>(kind)] =
            static_cast<double>(successes) / static_cast<double>(trials_per_attack);
    }

    double mean_rate = 0.0;
    for (double r : analysis.rates) {
        mean_rate += r;
    }
    mean_rate /= static_cast<double>(analysis.rates.size());
    analysis.overall_security_score = 1.0 - mean_rate;

    Rng sample_rng(mix_seed(seed, 3));
    analysis.entropy_quality_score =
        token_distribution_quality(tokens.front(), std::max(now, tokens.front().created_at), entropy_shots,
                                   sample_rng)
            .quality;
    return analysis;
}

SecurityAnalysis run_security_analysis(std::uint64_t token_count, std::uint64_t trials_per_attack,
                                       std::uint64_t seed, const AnalysisOptions& options) {
    if (token_count == 0) {
        throw std::invalid_argument("security analysis needs at least one token");
    }
    entropy::EntropyPool pool = entropy::fill_pool(mix_seed(seed, 10));
    Rng rng(mix_seed(seed, 11));
    std::vector<token::TokenRecord> tokens;
    tokens.reserve(token_count);
    for (std::uint64_t i = 0; i < token_count; ++i) {
        tokens.push_back(token::generate_token(pool, options.now, rng));
    }
    return run_security_analysis(tokens, trials_per_attack, seed, options.now, options.entropy_shots);
}

double legitimate_success_rate(std::span<const token::TokenRecord> tokens, std::uint64_t trials,
                               std::uint64_t seed, token::Seconds now) {
    if (tokens.empty() || trials == 0) {
        throw std::invalid_argument("control run needs at least one token and one trial");
    }
    entropy::EntropyPool pool = entropy::fill_pool(mix_seed(seed, 1));
    Rng rng(mix_seed(seed, 2));
    std::uint64_t successes = 0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        token::TokenRecord copy = tokens[trial % tokens.size()];
        const verify::Prover prover{copy};
        successes += verify::verify_with_prover(copy, trial_time(copy, now, trial), pool, rng, {}, prover).success;
    }
    return static_cast<double>(successes) / static_cast<double>(trials);
}

entropy::EntropyQualityReport token_distribution_quality(const token::TokenRecord& token, token::Seconds t,
                                                         std::uint64_t shots, Rng& rng) {
    const int step = token::evolution_step(token, t);
    std::vector<double> layers(static_cast<std::size_t>(token.temporal_depth));
    for (int l = 0; l < token.temporal_depth; ++l) {
        layers[static_cast<std::size_t>(l)] = verify::derive_layer_entropy(token.token_id, step, 0, l);
    }
    qsim::StateVector state = qsim::base_prepared_state();
    qsim::apply_circuit(state, token::evolution_circuit(token, t, layers));
    return entropy::entropy_quality(qsim::sample_measurements(state, shots, rng));
}

}  // namespace qtoken::attacks
