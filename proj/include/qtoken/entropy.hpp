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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qtoken/qsim.hpp"
#include "qtoken/random.hpp"

namespace qtoken::entropy {

/// Produces the 8-qubit state whose measurements feed the pool.
using StateSource = std::function<qsim::StateVector()>;

/// base_preparation_circuit applied to |0>^8.
StateSource default_state_source();

/// Buffer of normalized 8-qubit measurement outcomes mixed with a classical
/// stream. Every `max_usage` draws the buffer is re-measured from the source.
///
/// Single writer: callers that share a pool must serialize access.
class EntropyPool {
public:
    static constexpr std::size_t kPoolSize = 100;
    static constexpr std::size_t kMaxUsage = 50;
    static constexpr int kSourceQubits = 8;

    /// Measures the source immediately. Throws std::invalid_argument when the
    /// source yields a state that is not 8 qubits wide.
    EntropyPool(StateSource source, std::uint64_t seed);

    /// One mixed entropy value in [0, 1).
    double draw();

    /// Re-measures the source and resets the usage counter.
    void refresh();

    /// (q1 + q2) / 2 + classical / 1000, reduced modulo 1.
    static double mix(double q1, double q2, double classical);

    std::span<const double> samples() const { return samples_; }
    std::size_t usage_counter() const { return usage_counter_; }
    std::size_t refresh_count() const { return refresh_count_; }
    std::uint64_t seed() const { return seed_; }

private:
    double next_quantum_sample();

    StateSource source_;
    std::uint64_t seed_;
    Rng measurement_rng_;
    Rng classical_rng_;
    std::vector<double> samples_;
    std::size_t cursor_ = 0;
    std::size_t usage_counter_ = 0;
    std::size_t refresh_count_ = 0;
};

/// Convenience constructor mirroring the pool's initial fill.
EntropyPool fill_pool(StateSource source, std::uint64_t seed);
EntropyPool fill_pool(std::uint64_t seed);

/// Normalized Shannon entropy of an outcome histogram.
struct EntropyQualityReport {
    double raw_entropy = 0.0;  ///< bits
    double max_entropy = 0.0;  ///< log2 of the number of observed outcomes
    double quality = 0.0;      ///< min(1, raw / max); 0 when only one outcome was seen
    std::size_t distinct_outcomes = 0;
    std::uint64_t total_count = 0;
};

/// Zero counts are ignored. Throws std::invalid_argument when no outcome has a
/// positive count.
EntropyQualityReport entropy_quality(std::span<const std::uint64_t> counts);
EntropyQualityReport entropy_quality(const qsim::Counts& counts);

}  // namespace qtoken::entropy
