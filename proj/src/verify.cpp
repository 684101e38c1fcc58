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

#include "qtoken/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qtoken/digest.hpp"

namespace qtoken::verify {
namespace {

constexpr std::size_t kQubits = token::kTokenQubits;

// sin((t + dt) / period) - sin(t / period) without cancellation.
double sine_increment(double t, double dt, double period) {
    const double half = dt / (2 * period);
    return 2 * std::cos(t / period + half) * std::sin(half);
}

// Population standard deviation of f across the modelled round times.
double temporal_consistency(Seconds t, int rounds, double interval) {
    const double base = static_cast<double>(t);
    std::vector<double> offsets(static_cast<std::size_t>(rounds));
    for (int r = 0; r < rounds; ++r) {
        const double dt = r * interval;
        offsets[static_cast<std::size_t>(r)] =
            (sine_increment(base, dt, 43200.0) + sine_increment(base, dt, 3600.0) +
             sine_increment(base, dt, 300.0)) / 3.0;
    }
    double mean = 0.0;
    for (double v : offsets) mean += v;
    mean /= rounds;
    double var = 0.0;
    for (double v : offsets) var += (v - mean) * (v - mean);
    return std::sqrt(var / rounds);
}

std::vector<double> layer_values(const LayerEntropyFn& fn, const std::string& id, int step, int round,
                                 int depth) {
    std::vector<double> values(static_cast<std::size_t>(depth));
    for (int l = 0; l < depth; ++l) {
        values[static_cast<std::size_t>(l)] = fn(id, step, round, l);
    }
    return values;
}

double sampled_expectation(const qsim::StateVector& state, int qubit, MeasurementBasis basis,
                           std::uint64_t shots, Rng& rng) {
    qsim::StateVector rotated = state;
    qsim::rotate_to_z(rotated, qubit, basis);
    // P(qubit reads 0) = (1 + <Z>) / 2 after rotation.
    const double p0 = (1.0 + qsim::expectation(rotated, qubit, MeasurementBasis::Z)) / 2.0;
    std::int64_t balance = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        balance += rng.uniform() < p0 ? 1 : -1;
    }
    return static_cast<double>(balance) / static_cast<double>(shots);
}

qsim::StateVector evolved_state(const TokenRecord& token, Seconds t, std::span<const double> layer_entropy) {
    qsim::StateVector state = qsim::base_prepared_state();
    qsim::apply_circuit(state, token::evolution_circuit(token, t, layer_entropy));
    return state;
}

}  // namespace

void VerificationConfig::validate() const {
    if (!(epsilon0 > 0.0)) {
        throw std::invalid_argument("epsilon0 must be positive");
    }
    if (rounds < 1) {
        throw std::invalid_argument("verification needs at least one round");
    }
    if (sampled && shots_per_round == 0) {
        throw std::invalid_argument("sampled verification needs shots_per_round >= 1");
    }
}

std::array<double, 3> basis_probabilities(double e_weight) {
    if (!(e_weight >= 0.0 && e_weight <= 0.1)) {
        throw std::invalid_argument("e_weight must lie in [0, 0.1]");
    }
    return {0.3 + e_weight, 0.3 + e_weight, 0.4 - 2 * e_weight};
}

BasisSchedule sample_bases(double e_weight, Rng& rng) {
    const auto p = basis_probabilities(e_weight);
    BasisSchedule bases{};
    for (auto& b : bases) {
        const double u = rng.uniform();
        b = u < p[0] ? MeasurementBasis::X : (u < p[0] + p[1] ? MeasurementBasis::Y : MeasurementBasis::Z);
    }
    return bases;
}

BasisSchedule rotate_schedule(const BasisSchedule& bases, int steps) {
    BasisSchedule out = bases;
    const auto n = static_cast<int>(bases.size());
    std::rotate(out.begin(), out.begin() + ((steps % n) + n) % n, out.end());
    return out;
}

BasisSchedule choose_bases(const TokenRecord& token, Seconds t, entropy::EntropyPool& pool, Rng& rng) {
    const double e_weight = 0.1 * pool.draw();
    return rotate_schedule(sample_bases(e_weight, rng), token::evolution_step(token, t));
}

double threshold_value(double epsilon0, double f_t, double e_quantum, double e_factor) {
    const double eps = epsilon0 * (1.0 + f_t * std::exp(-e_quantum)) + e_factor;
    return std::max(eps, 0.001);
}

double threshold(Seconds t, entropy::EntropyPool& pool, double epsilon0) {
    const double e_quantum = pool.draw();
    const double e_factor = 0.01 * pool.draw();
    return threshold_value(epsilon0, token::temporal_modulation(static_cast<double>(t)), e_quantum, e_factor);
}

double derive_layer_entropy(const std::string& token_id, int step, int round, int layer) {
    ByteWriter w;
    w.put_text(token_id);
    w.put_u32_be(static_cast<std::uint32_t>(step));
    w.put_u32_be(static_cast<std::uint32_t>(round));
    w.put_u32_be(static_cast<std::uint32_t>(layer));
    const Sha256Digest d = w.digest();
    std::uint64_t top = 0;
    for (int i = 0; i < 8; ++i) {
        top = (top << 8) | d[static_cast<std::size_t>(i)];
    }
    return static_cast<double>(top >> 11) * 0x1.0p-53;
}

std::array<double, kQubits> evolved_expectations(const TokenRecord& token, Seconds t,
                                                 std::span<const double> layer_entropy,
                                                 const BasisSchedule& bases) {
    const qsim::StateVector state = evolved_state(token, t, layer_entropy);
    std::array<double, kQubits> out{};
    for (std::size_t q = 0; q < kQubits; ++q) {
        out[q] = qsim::expectation(state, static_cast<int>(q), bases[q]);
    }
    return out;
}

std::string expectation_state_hash(const std::array<double, kQubits>& expected) {
    ByteWriter w;
    for (double v : expected) {
        double rounded = std::round(v * 1e12) / 1e12;
        if (rounded == 0.0) {
            rounded = 0.0;  // fold -0.0
        }
        w.put_f64_be(rounded);
    }
    const Sha256Digest d = w.digest();
    return to_hex(d);
}

VerificationReport verify_with_prover(TokenRecord& token, Seconds t, entropy::EntropyPool& pool, Rng& rng,
                                      const VerificationConfig& config, const Prover& prover,
                                      const LayerEntropyFn& layer_entropy) {
    config.validate();
    if (!token::lifecycle_audit(token)) {
        throw token::TamperedTokenError("token " + token.token_id + " failed its lifecycle audit");
    }
    if (t < token.created_at || token::is_expired(token, t)) {
        throw token::ExpiredTokenError("token " + token.token_id + " is expired");
    }

    const int step = token::evolution_step(token, t);
    const int prover_depth = std::max(prover.record.temporal_depth, 1);
    const int prover_step = ((step + prover.step_shift) % prover_depth + prover_depth) % prover_depth;

    double difference_sum = 0.0;
    std::array<double, kQubits> expected{};
    for (int round = 1; round <= config.rounds; ++round) {
        const BasisSchedule bases = choose_bases(token, t, pool, rng);

        const auto verifier_entropy =
            layer_values(layer_entropy, token.token_id, step, round, token.temporal_depth);
        expected = evolved_expectations(token, t, verifier_entropy, bases);

        std::vector<double> prover_entropy;
        if (prover.injected_entropy) {
            prover_entropy.assign(static_cast<std::size_t>(prover.record.temporal_depth), *prover.injected_entropy);
        } else {
            prover_entropy =
                layer_values(layer_entropy, prover.record.token_id, prover_step, round, prover.record.temporal_depth);
        }
        BasisSchedule measured_bases = bases;
        if (prover.basis_override) {
            measured_bases.fill(*prover.basis_override);
        }

        std::array<double, kQubits> measured{};
        if (config.sampled) {
            const qsim::StateVector state = evolved_state(prover.record, t, prover_entropy);
            for (std::size_t q = 0; q < kQubits; ++q) {
                measured[q] = sampled_expectation(state, static_cast<int>(q), measured_bases[q],
                                                  config.shots_per_round, rng);
            }
        } else {
            measured = evolved_expectations(prover.record, t, prover_entropy, measured_bases);
        }

        double round_difference = 0.0;
        for (std::size_t q = 0; q < kQubits; ++q) {
            round_difference += std::abs(measured[q] - expected[q]);
        }
        difference_sum += round_difference / kQubits;
    }

    VerificationReport report;
    report.difference = difference_sum / config.rounds;
    report.threshold = threshold(t, pool, config.epsilon0);
    report.evolution_step = step;
    report.entropy_level = pool.draw();
    report.temporal_consistency = temporal_consistency(t, config.rounds, config.round_interval_seconds);
    report.verification_rounds = config.rounds;
    report.success = report.difference <= report.threshold;

    token.history.push_back({t, report.success, expectation_state_hash(expected)});
    ++token.n_uses;
    if (!report.success) {
        ++token.failure_count;
    }
    report.failure_count = token.failure_count;
    return report;
}

VerificationReport verify_token(TokenRecord& token, Seconds t, entropy::EntropyPool& pool, Rng& rng,
                                const VerificationConfig& config, const std::optional<TokenRecord>& presented) {
    Prover prover{presented.value_or(token)};
    return verify_with_prover(token, t, pool, rng, config, prover);
}

}  // namespace qtoken::verify
