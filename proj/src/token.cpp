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

#include "qtoken/token.hpp"

#include <cmath>
#include <numbers>

#include "qtoken/digest.hpp"

namespace qtoken::token {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

bool in_unit_interval(double v) { return v >= 0.0 && v < 1.0; }

}  // namespace

std::string compute_token_id(std::uint8_t outcome, Seconds created_at,
                             std::span<const double, kTokenQubits> base_angles) {
    ByteWriter w;
    w.put_u8(outcome);
    w.put_i64_be(created_at);
    for (double theta : base_angles) {
        w.put_f64_be(theta);
    }
    const Sha256Digest d = w.digest();
    return to_hex(d);
}

TokenRecord generate_token(entropy::EntropyPool& pool, Seconds now, Rng& rng) {
    TokenRecord token;
    token.created_at = now;
    for (double& theta : token.base_angles) {
        theta = kTwoPi * pool.draw();
        if (theta >= kTwoPi) {
            theta = 0.0;
        }
    }
    for (double& checkpoint : token.checkpoints) {
        checkpoint = pool.draw();
    }
    const auto outcome = static_cast<std::uint8_t>(qsim::sample_once(qsim::base_prepared_state(), rng));
    token.token_id = compute_token_id(outcome, now, token.base_angles);
    return token;
}

double temporal_modulation(double t) {
    return (std::sin(t / 43200.0) + std::sin(t / 3600.0) + std::sin(t / 300.0)) / 3.0;
}

double final_angle(double theta, double t) {
    const double s = std::sin(theta * temporal_modulation(t));
    return s * s * std::numbers::pi;
}

double layer_phase(double theta, int layer, int depth, double layer_entropy) {
    return theta * std::sin((layer + 1) * std::numbers::pi / depth) * std::cos(kTwoPi * layer_entropy);
}

qsim::Circuit evolution_circuit(const TokenRecord& token, Seconds t, std::span<const double> layer_entropy) {
    using qsim::GateOp;
    const int depth = token.temporal_depth;
    if (depth < 1 || static_cast<int>(layer_entropy.size()) != depth) {
        throw std::invalid_argument("evolution circuit needs one entropy value per layer");
    }
    const double tt = static_cast<double>(t);
    qsim::Circuit c;
    c.ops.reserve(static_cast<std::size_t>(depth) * (3 * kTokenQubits + 2));
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < kTokenQubits; ++q) {
            c.append(GateOp::ry(q, final_angle(token.base_angles[q], tt)));
        }
        for (int q = 0; q < kTokenQubits; ++q) {
            c.append(GateOp::cnot(q, (q + 1) % kTokenQubits));
        }
        if (layer % 2 == 0) {
            c.append(GateOp::cswap(0, 1, 2));
            c.append(GateOp::ccz(5, 6, 7));
        }
        const double e = layer_entropy[static_cast<std::size_t>(layer)];
        for (int q = 0; q < kTokenQubits; ++q) {
            c.append(GateOp::phase(q, layer_phase(token.base_angles[q], layer, depth, e)));
        }
    }
    return c;
}

qsim::Circuit evolution_circuit(const TokenRecord& token, Seconds t, entropy::EntropyPool& pool) {
    std::vector<double> draws(static_cast<std::size_t>(std::max(token.temporal_depth, 0)));
    for (double& d : draws) {
        d = pool.draw();
    }
    return evolution_circuit(token, t, draws);
}

int evolution_step(const TokenRecord& token, Seconds t) {
    if (t < token.created_at) {
        throw std::invalid_argument("evolution_step: time precedes token creation");
    }
    if (token.temporal_depth < 1) {
        throw std::invalid_argument("evolution_step: temporal depth must be positive");
    }
    return static_cast<int>(((t - token.created_at) / kStepSeconds) % token.temporal_depth);
}

double effective_lifetime(const TokenRecord& token, Seconds t) {
    const double elapsed = static_cast<double>(std::max<Seconds>(1, t - token.created_at));
    return kBaseLifetimeSeconds * std::exp(-static_cast<double>(token.n_uses) / elapsed) *
           std::pow(kFailurePenalty, static_cast<double>(token.failure_count));
}

bool is_expired(const TokenRecord& token, Seconds t) {
    return static_cast<double>(t - token.created_at) > effective_lifetime(token, t);
}

bool lifecycle_audit(const TokenRecord& token) {
    if (token.temporal_depth < 1 || !is_sha256_hex(token.token_id)) {
        return false;
    }
    for (double theta : token.base_angles) {
        if (!(theta >= 0.0 && theta < kTwoPi)) {
            return false;
        }
    }
    for (double checkpoint : token.checkpoints) {
        if (!in_unit_interval(checkpoint)) {
            return false;
        }
    }
    if (token.failure_count > token.history.size()) {
        return false;
    }
    for (const HistoryEntry& entry : token.history) {
        if (!is_sha256_hex(entry.state_hash)) {
            return false;
        }
    }
    for (int outcome = 0; outcome < 256; ++outcome) {
        if (compute_token_id(static_cast<std::uint8_t>(outcome), token.created_at, token.base_angles) ==
            token.token_id) {
            return true;
        }
    }
    return false;
}

}  // namespace qtoken::token
