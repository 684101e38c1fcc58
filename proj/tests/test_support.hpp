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

// Random circuit generators shared by the property tests.

#include <numbers>
#include <vector>

#include "qtoken/qsim.hpp"
#include "qtoken/random.hpp"

namespace qtoken::testkit {

inline qsim::GateOp random_gate(Rng& rng, int n) {
    using K = qsim::GateKind;
    static constexpr K kinds[] = {K::H, K::RX, K::RY, K::RZ, K::CZ, K::CNOT, K::CSWAP, K::CCZ, K::PHASE};
    K kind;
    do {
        kind = kinds[rng.below(std::size(kinds))];
    } while (qsim::arity(kind) > n);

    std::vector<int> qubits(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) qubits[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        std::swap(qubits[static_cast<std::size_t>(i)], qubits[rng.below(static_cast<std::uint64_t>(i + 1))]);
    }
    qubits.resize(static_cast<std::size_t>(qsim::arity(kind)));
    const double angle = qsim::takes_angle(kind) ? (rng.uniform() * 4 - 2) * std::numbers::pi : 0.0;
    return {kind, qubits, angle};
}

inline qsim::Circuit random_circuit(Rng& rng, int n, int gates) {
    qsim::Circuit c;
    for (int i = 0; i < gates; ++i) c.append(random_gate(rng, n));
    return c;
}

}  // namespace qtoken::testkit
