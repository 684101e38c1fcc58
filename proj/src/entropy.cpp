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

#include "qtoken/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtoken::entropy {

StateSource default_state_source() {
    return [] { return qsim::base_prepared_state(); };
}

EntropyPool::EntropyPool(StateSource source, std::uint64_t seed)
    : source_(std::move(source)),
      seed_(seed),
      measurement_rng_(mix_seed(seed, 0x5155414eULL)),
      classical_rng_(mix_seed(seed, 0x434c4153ULL)) {
    if (!source_) {
        throw std::invalid_argument("entropy pool needs a state source");
    }
    refresh();
    refresh_count_ = 0;
}

void EntropyPool::refresh() {
    const qsim::StateVector state = source_();
    if (state.n_qubits() != kSourceQubits) {
        throw std::invalid_argument("entropy source must yield an 8-qubit state, got " +
                                    std::to_string(state.n_qubits()));
    }
    const auto outcomes = qsim::sample_outcomes(state, kPoolSize, measurement_rng_);
    samples_.resize(kPoolSize);
    for (std::size_t i = 0; i < kPoolSize; ++i) {
        samples_[i] = static_cast<double>(outcomes[i]) / 256.0;
    }
    cursor_ = 0;
    usage_counter_ = 0;
    ++refresh_count_;
}

double EntropyPool::next_quantum_sample() {
    const double v = samples_[cursor_];
    cursor_ = (cursor_ + 1) % samples_.size();
    return v;
}

double EntropyPool::mix(double q1, double q2, double classical) {
    double mixed = (q1 + q2) / 2 + classical / 1000;
    mixed -= std::floor(mixed);
    return mixed < 1.0 ? mixed : 0.0;
}

double EntropyPool::draw() {
    const double q1 = next_quantum_sample();
    const double q2 = next_quantum_sample();
    const double value = mix(q1, q2, classical_rng_.uniform());
    if (++usage_counter_ >= kMaxUsage) {
        refresh();
    }
    return value;
}

EntropyPool fill_pool(StateSource source, std::uint64_t seed) { return EntropyPool(std::move(source), seed); }

EntropyPool fill_pool(std::uint64_t seed) { return EntropyPool(default_state_source(), seed); }

EntropyQualityReport entropy_quality(std::span<const std::uint64_t> counts) {
    EntropyQualityReport report;
    for (std::uint64_t c : counts) {
        if (c > 0) {
            report.total_count += c;
            ++report.distinct_outcomes;
        }
    }
    if (report.total_count == 0) {
        throw std::invalid_argument("entropy_quality needs at least one positive count");
    }
    const double total = static_cast<double>(report.total_count);
    double h = 0.0;
    for (std::uint64_t c : counts) {
        if (c > 0) {
            const double p = static_cast<double>(c) / total;
            h -= p * std::log2(p);
        }
    }
    report.raw_entropy = h;
    report.max_entropy = std::log2(static_cast<double>(report.distinct_outcomes));
    if (report.distinct_outcomes > 1) {
        report.quality = std::min(1.0, h / report.max_entropy);
    }
    return report;
}

EntropyQualityReport entropy_quality(const qsim::Counts& counts) {
    std::vector<std::uint64_t> values;
    values.reserve(counts.size());
    for (const auto& [outcome, count] : counts) {
        values.push_back(count);
    }
    return entropy_quality(values);
}

}  // namespace qtoken::entropy
