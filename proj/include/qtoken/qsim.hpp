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

// Dense statevector simulator with exactly the gate set the token protocol
// needs. Qubit 0 is the least-significant bit of a basis-state index.
//
// Rotations use the half-angle convention RX(t) = exp(-i t X / 2) etc.
// PHASE(p) is diag(1, e^{ip}). CCZ negates |111> on its three targets.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qtoken/random.hpp"

namespace qtoken::qsim {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 12;
inline constexpr int kDefaultQubits = 8;

class StateVector {
public:
    /// |0...0> on `n_qubits` qubits. Throws std::invalid_argument outside 1..12.
    explicit StateVector(int n_qubits = kDefaultQubits);

    /// Takes ownership of explicit amplitudes; size must be 2^n for n in 1..12.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    int n_qubits() const { return n_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }

    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    std::span<Amplitude> mutable_amplitudes() { return amplitudes_; }
    const Amplitude& operator[](std::size_t index) const { return amplitudes_[index]; }

    double norm_squared() const;
    std::vector<double> probabilities() const;

private:
    int n_qubits_;
    std::vector<Amplitude> amplitudes_;
};

StateVector new_zero_state(int n_qubits);

enum class GateKind { H, RX, RY, RZ, CZ, CNOT, CSWAP, CCZ, PHASE };

std::string_view to_string(GateKind kind);

/// Number of qubits a gate kind acts on.
int arity(GateKind kind);
bool takes_angle(GateKind kind);

/// CNOT targets are {control, target}; CSWAP targets are {control, a, b}.
struct GateOp {
    GateKind kind;
    std::vector<int> targets;
    double angle = 0.0;

    static GateOp h(int q) { return {GateKind::H, {q}}; }
    static GateOp rx(int q, double theta) { return {GateKind::RX, {q}, theta}; }
    static GateOp ry(int q, double theta) { return {GateKind::RY, {q}, theta}; }
    static GateOp rz(int q, double theta) { return {GateKind::RZ, {q}, theta}; }
    static GateOp phase(int q, double phi) { return {GateKind::PHASE, {q}, phi}; }
    static GateOp cz(int a, int b) { return {GateKind::CZ, {a, b}}; }
    static GateOp cnot(int control, int target) { return {GateKind::CNOT, {control, target}}; }
    static GateOp cswap(int control, int a, int b) { return {GateKind::CSWAP, {control, a, b}}; }
    static GateOp ccz(int a, int b, int c) { return {GateKind::CCZ, {a, b, c}}; }

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

struct Circuit {
    std::vector<GateOp> ops;

    std::size_t size() const { return ops.size(); }
    void append(GateOp op) { ops.push_back(std::move(op)); }
    void append(const Circuit& other) { ops.insert(ops.end(), other.ops.begin(), other.ops.end()); }

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class MeasurementBasis { X, Y, Z };

char to_char(MeasurementBasis basis);

/// Throws std::invalid_argument on arity mismatch or on repeated or
/// out-of-range targets.
void apply_gate(StateVector& state, const GateOp& gate);
void apply_circuit(StateVector& state, const Circuit& circuit);

/// <sigma_basis> on one qubit; the state is not modified.
double expectation(const StateVector& state, int qubit, MeasurementBasis basis);

/// Applies the rotation that maps `basis` onto the computational basis on
/// `qubit` (X: H; Y: RZ(-pi/2) then H; Z: nothing).
void rotate_to_z(StateVector& state, int qubit, MeasurementBasis basis);

/// Outcome index (qubit 0 = least-significant bit) -> shot count.
using Counts = std::map<std::uint64_t, std::uint64_t>;

/// Born-rule sampling. Throws std::invalid_argument when shots == 0.
Counts sample_measurements(const StateVector& state, std::uint64_t shots, Rng& rng);

/// Born-rule sampling that keeps shot order.
std::vector<std::uint64_t> sample_outcomes(const StateVector& state, std::uint64_t shots, Rng& rng);

/// Draws one outcome index from the Born distribution.
std::uint64_t sample_once(const StateVector& state, Rng& rng);

/// Bitstring with the highest qubit first, e.g. index 1 on two qubits -> "01".
std::string to_bitstring(std::uint64_t outcome, int n_qubits);

/// H on every qubit, then RY(pi/3), RZ(pi/4), RX(pi/5) on each qubit in turn,
/// then CZ(i, i+1) along the chain.
Circuit base_preparation_circuit(int n_qubits = kDefaultQubits);

/// base_preparation_circuit applied to |0...0>; cached for the default width.
const StateVector& base_prepared_state();

}  // namespace qtoken::qsim
