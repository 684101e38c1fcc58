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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "qtoken/kernels.hpp"
#include "qtoken/qsim.hpp"

namespace qtoken::qsim {
namespace {

using kernels::Mat2;

void check_width(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in 1.." + std::to_string(kMaxQubits) +
                                    ", got " + std::to_string(n_qubits));
    }
}

void check_targets(const StateVector& state, const GateOp& gate) {
    if (static_cast<int>(gate.targets.size()) != arity(gate.kind)) {
        throw std::invalid_argument(std::string(to_string(gate.kind)) + " expects " +
                                    std::to_string(arity(gate.kind)) + " target(s)");
    }
    for (std::size_t i = 0; i < gate.targets.size(); ++i) {
        const int q = gate.targets[i];
        if (q < 0 || q >= state.n_qubits()) {
            throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for " +
                                        std::to_string(state.n_qubits()) + "-qubit state");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gate.targets[j] == q) {
                throw std::invalid_argument("gate targets must be distinct");
            }
        }
    }
}

Mat2 single_qubit_matrix(GateKind kind, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    switch (kind) {
        case GateKind::H: {
            const double r = std::numbers::sqrt2 / 2;
            return {Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{r, 0}, Amplitude{-r, 0}};
        }
        case GateKind::RX:
            return {Amplitude{c, 0}, Amplitude{0, -s}, Amplitude{0, -s}, Amplitude{c, 0}};
        case GateKind::RY:
            return {Amplitude{c, 0}, Amplitude{-s, 0}, Amplitude{s, 0}, Amplitude{c, 0}};
        case GateKind::RZ:
            return {Amplitude{c, -s}, Amplitude{0, 0}, Amplitude{0, 0}, Amplitude{c, s}};
        default:
            throw std::logic_error("not a dense single-qubit gate");
    }
}

void swap_where(StateVector& state, std::uint64_t require_set, std::uint64_t require_clear,
                std::uint64_t flip) {
    auto amps = state.mutable_amplitudes();
    const std::uint64_t mask = require_set | require_clear;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == require_set) {
            std::swap(amps[i], amps[i ^ flip]);
        }
    }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_width(n_qubits);
    amplitudes_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
    amplitudes_[0] = Amplitude{1.0, 0.0};
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2");
    }
    const int n = std::countr_zero(dim);
    StateVector state(n);
    state.amplitudes_ = std::move(amplitudes);
    return state;
}

double StateVector::norm_squared() const {
    return kernels::active_kernels().norm_squared(amplitudes_.data(), amplitudes_.size());
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> out(amplitudes_.size());
    kernels::active_kernels().probabilities(amplitudes_.data(), amplitudes_.size(), out.data());
    return out;
}

StateVector new_zero_state(int n_qubits) { return StateVector(n_qubits); }

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CZ: return "CZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CSWAP: return "CSWAP";
        case GateKind::CCZ: return "CCZ";
        case GateKind::PHASE: return "PHASE";
    }
    return "?";
}

int arity(GateKind kind) {
    switch (kind) {
        case GateKind::CZ:
        case GateKind::CNOT:
            return 2;
        case GateKind::CSWAP:
        case GateKind::CCZ:
            return 3;
        default:
            return 1;
    }
}

bool takes_angle(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
           kind == GateKind::PHASE;
}

char to_char(MeasurementBasis basis) {
    switch (basis) {
        case MeasurementBasis::X: return 'X';
        case MeasurementBasis::Y: return 'Y';
        case MeasurementBasis::Z: return 'Z';
    }
    return '?';
}

void apply_gate(StateVector& state, const GateOp& gate) {
    check_targets(state, gate);
    const auto& k = kernels::active_kernels();
    auto amps = state.mutable_amplitudes();
    const auto bit = [&](std::size_t i) { return std::uint64_t{1} << gate.targets[i]; };

    switch (gate.kind) {
        case GateKind::H:
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            k.apply_single(amps.data(), amps.size(), static_cast<unsigned>(gate.targets[0]),
                           single_qubit_matrix(gate.kind, gate.angle));
            break;
        case GateKind::PHASE:
            k.phase_where_set(amps.data(), amps.size(), static_cast<unsigned>(gate.targets[0]),
                              std::polar(1.0, gate.angle));
            break;
        case GateKind::CZ:
            k.negate_where_all_set(amps.data(), amps.size(), bit(0) | bit(1));
            break;
        case GateKind::CCZ:
            k.negate_where_all_set(amps.data(), amps.size(), bit(0) | bit(1) | bit(2));
            break;
        case GateKind::CNOT:
            swap_where(state, bit(0), bit(1), bit(1));
            break;
        case GateKind::CSWAP:
            swap_where(state, bit(0) | bit(1), bit(2), bit(1) | bit(2));
            break;
    }
}

void apply_circuit(StateVector& state, const Circuit& circuit) {
    for (const GateOp& op : circuit.ops) {
        apply_gate(state, op);
    }
}

void rotate_to_z(StateVector& state, int qubit, MeasurementBasis basis) {
    switch (basis) {
        case MeasurementBasis::X:
            apply_gate(state, GateOp::h(qubit));
            break;
        case MeasurementBasis::Y:
            apply_gate(state, GateOp::rz(qubit, -std::numbers::pi / 2));
            apply_gate(state, GateOp::h(qubit));
            break;
        case MeasurementBasis::Z:
            break;
    }
}

double expectation(const StateVector& state, int qubit, MeasurementBasis basis) {
    if (qubit < 0 || qubit >= state.n_qubits()) {
        throw std::invalid_argument("qubit index " + std::to_string(qubit) + " out of range");
    }
    const auto& k = kernels::active_kernels();
    if (basis == MeasurementBasis::Z) {
        return k.z_expectation(state.amplitudes().data(), state.dimension(), static_cast<unsigned>(qubit));
    }
    StateVector rotated = state;
    rotate_to_z(rotated, qubit, basis);
    return k.z_expectation(rotated.amplitudes().data(), rotated.dimension(), static_cast<unsigned>(qubit));
}

namespace {

std::vector<double> cumulative(const StateVector& state) {
    std::vector<double> cdf = state.probabilities();
    for (std::size_t i = 1; i < cdf.size(); ++i) {
        cdf[i] += cdf[i - 1];
    }
    return cdf;
}

std::uint64_t draw(const std::vector<double>& cdf, Rng& rng) {
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Guard against u landing on the total through rounding.
    const auto index = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(),
                                                                           static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    return index;
}

}  // namespace

std::vector<std::uint64_t> sample_outcomes(const StateVector& state, std::uint64_t shots, Rng& rng) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    const std::vector<double> cdf = cumulative(state);
    std::vector<std::uint64_t> outcomes(shots);
    for (auto& outcome : outcomes) {
        outcome = draw(cdf, rng);
    }
    return outcomes;
}

Counts sample_measurements(const StateVector& state, std::uint64_t shots, Rng& rng) {
    Counts counts;
    for (std::uint64_t outcome : sample_outcomes(state, shots, rng)) {
        ++counts[outcome];
    }
    return counts;
}

std::uint64_t sample_once(const StateVector& state, Rng& rng) { return draw(cumulative(state), rng); }

std::string to_bitstring(std::uint64_t outcome, int n_qubits) {
    std::string bits(static_cast<std::size_t>(n_qubits), '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((outcome >> q) & 1U) {
            bits[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
        }
    }
    return bits;
}

Circuit base_preparation_circuit(int n_qubits) {
    check_width(n_qubits);
    if (n_qubits < 2) {
        throw std::invalid_argument("base preparation needs at least 2 qubits");
    }
    Circuit c;
    for (int q = 0; q < n_qubits; ++q) {
        c.append(GateOp::h(q));
    }
    for (int q = 0; q < n_qubits; ++q) {
        c.append(GateOp::ry(q, std::numbers::pi / 3));
        c.append(GateOp::rz(q, std::numbers::pi / 4));
        c.append(GateOp::rx(q, std::numbers::pi / 5));
    }
    for (int q = 0; q + 1 < n_qubits; ++q) {
        c.append(GateOp::cz(q, q + 1));
    }
    return c;
}

const StateVector& base_prepared_state() {
    static const StateVector prepared = [] {
        StateVector s(kDefaultQubits);
        apply_circuit(s, base_preparation_circuit(kDefaultQubits));
        return s;
    }();
    return prepared;
}

}  // namespace qtoken::qsim
