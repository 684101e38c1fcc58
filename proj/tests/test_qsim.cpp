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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle/dense_oracle.hpp"
#include "qtoken/qsim.hpp"
#include "test_support.hpp"

using namespace qtoken;
using qsim::GateKind;
using qsim::GateOp;
using qsim::MeasurementBasis;

namespace {

void expect_matches(const qsim::StateVector& s, const std::vector<oracle::C>& ref, double tol) {
    ASSERT_EQ(s.dimension(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        EXPECT_NEAR(s[i].real(), ref[i].real(), tol) << "amplitude " << i;
        EXPECT_NEAR(s[i].imag(), ref[i].imag(), tol) << "amplitude " << i;
    }
}

qsim::StateVector basis_state(int n, std::size_t index) {
    std::vector<qsim::Amplitude> a(std::size_t{1} << n);
    a[index] = 1.0;
    return qsim::StateVector::from_amplitudes(a);
}

}  // namespace

TEST(ZeroState, OneHotAtIndexZero) {
    for (int n : {1, 2, 8}) {
        const auto s = qsim::new_zero_state(n);
        ASSERT_EQ(s.dimension(), std::size_t{1} << n);
        EXPECT_EQ(s[0], qsim::Amplitude(1.0, 0.0));
        for (std::size_t i = 1; i < s.dimension(); ++i) EXPECT_EQ(s[i], qsim::Amplitude(0.0, 0.0));
    }
}

TEST(ZeroState, RejectsOutOfRangeWidth) {
    EXPECT_THROW(qsim::new_zero_state(0), std::invalid_argument);
    EXPECT_THROW(qsim::new_zero_state(13), std::invalid_argument);
    EXPECT_NO_THROW(qsim::new_zero_state(12));
}

TEST(ApplyGate, HadamardOnZero) {
    auto s = qsim::new_zero_state(1);
    qsim::apply_gate(s, GateOp::h(0));
    EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(ApplyGate, ControlledZOnlyFlipsOneOne) {
    for (std::size_t idx = 0; idx < 4; ++idx) {
        auto s = basis_state(2, idx);
        qsim::apply_gate(s, GateOp::cz(0, 1));
        EXPECT_EQ(s[idx].real(), idx == 3 ? -1.0 : 1.0) << idx;
    }
}

TEST(ApplyGate, CnotAndCswapPermuteBasisStates) {
    // |q1 q0> = |01>: control q0 set, flips q1 -> |11>.
    auto s = basis_state(2, 0b01);
    qsim::apply_gate(s, GateOp::cnot(0, 1));
    EXPECT_EQ(s[0b11].real(), 1.0);

    // Control q0 set, swap q1 and q2: |0 1 1> -> |1 0 1>.
    auto t = basis_state(3, 0b011);
    qsim::apply_gate(t, GateOp::cswap(0, 1, 2));
    EXPECT_EQ(t[0b101].real(), 1.0);

    // Control clear: untouched.
    auto u = basis_state(3, 0b010);
    qsim::apply_gate(u, GateOp::cswap(0, 1, 2));
    EXPECT_EQ(u[0b010].real(), 1.0);
}

TEST(ApplyGate, RejectsBadTargets) {
    auto s = qsim::new_zero_state(3);
    EXPECT_THROW(qsim::apply_gate(s, GateOp::h(3)), std::invalid_argument);
    EXPECT_THROW(qsim::apply_gate(s, GateOp::h(-1)), std::invalid_argument);
    EXPECT_THROW(qsim::apply_gate(s, GateOp::cz(1, 1)), std::invalid_argument);
    EXPECT_THROW(qsim::apply_gate(s, (GateOp{GateKind::CCZ, {0, 1}})), std::invalid_argument);
    EXPECT_THROW(qsim::apply_gate(s, GateOp::ccz(0, 1, 5)), std::invalid_argument);
}

TEST(ApplyGate, MatchesDenseOracleOnRandomThreeQubitCircuit) {
    Rng rng(2024);
    const auto circuit = testkit::random_circuit(rng, 3, 10);
    auto s = qsim::new_zero_state(3);
    qsim::apply_circuit(s, circuit);
    expect_matches(s, oracle::run(circuit, 3), 1e-9);
}

TEST(Oracle, HundredRandomCircuitsAgree) {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const int gates = 1 + static_cast<int>(rng.below(25));
        const auto circuit = testkit::random_circuit(rng, n, gates);
        auto s = qsim::new_zero_state(n);
        qsim::apply_circuit(s, circuit);
        SCOPED_TRACE(trial);
        expect_matches(s, oracle::run(circuit, n), 1e-9);
    }
}

TEST(Unitarity, SimulatorColumnsFormUnitaryForEveryGateKind) {
    // Column j of the simulated unitary is the simulator applied to |j>.
    const int n = 3;
    const std::vector<GateOp> gates = {
        GateOp::h(1),          GateOp::rx(0, 0.7),   GateOp::ry(2, -1.3), GateOp::rz(1, 2.1),
        GateOp::phase(0, 0.4), GateOp::cz(0, 2),     GateOp::cnot(2, 0),  GateOp::cswap(1, 0, 2),
        GateOp::ccz(0, 1, 2),
    };
    for (const auto& g : gates) {
        oracle::Matrix u(8);
        for (std::size_t j = 0; j < 8; ++j) {
            auto s = basis_state(n, j);
            qsim::apply_gate(s, g);
            for (std::size_t i = 0; i < 8; ++i) u(i, j) = s[i];
        }
        EXPECT_LT(oracle::unitarity_error(u), 1e-12) << qsim::to_string(g.kind);
        EXPECT_LT(oracle::unitarity_error(oracle::gate_matrix(g, n)), 1e-12) << qsim::to_string(g.kind);
    }
}

TEST(Involution, SelfInverseGatesRestoreState) {
    Rng rng(99);
    for (const auto& g : {GateOp::h(0), GateOp::cz(0, 2), GateOp::ccz(0, 1, 2)}) {
        auto s = qsim::new_zero_state(3);
        qsim::apply_circuit(s, testkit::random_circuit(rng, 3, 12));
        const auto before = s;
        qsim::apply_gate(s, g);
        qsim::apply_gate(s, g);
        for (std::size_t i = 0; i < s.dimension(); ++i) {
            EXPECT_NEAR(std::abs(s[i] - before[i]), 0.0, 1e-10);
        }
    }
}

TEST(Norm, PreservedOverLongCircuits) {
    Rng rng(31337);
    for (int n : {2, 5, 8}) {
        auto s = qsim::new_zero_state(n);
        qsim::apply_circuit(s, testkit::random_circuit(rng, n, 1000));
        EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-9) << n;
    }
}

TEST(Expectation, EigenstatesAndRotations) {
    auto zero = qsim::new_zero_state(1);
    EXPECT_DOUBLE_EQ(qsim::expectation(zero, 0, MeasurementBasis::Z), 1.0);

    auto plus = qsim::new_zero_state(1);
    qsim::apply_gate(plus, GateOp::h(0));
    EXPECT_NEAR(qsim::expectation(plus, 0, MeasurementBasis::X), 1.0, 1e-15);

    // +i eigenstate of Y: H then PHASE(pi/2).
    auto plus_i = plus;
    qsim::apply_gate(plus_i, GateOp::phase(0, std::numbers::pi / 2));
    EXPECT_NEAR(qsim::expectation(plus_i, 0, MeasurementBasis::Y), 1.0, 1e-15);

    auto ry = qsim::new_zero_state(1);
    qsim::apply_gate(ry, GateOp::ry(0, std::numbers::pi / 3));
    EXPECT_NEAR(qsim::expectation(ry, 0, MeasurementBasis::Y), 0.0, 1e-15);
    EXPECT_NEAR(qsim::expectation(ry, 0, MeasurementBasis::Z), 0.5, 1e-15);
}

TEST(Expectation, MatchesDensePauliOracleAndStaysBounded) {
    Rng rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(3));
        const auto circuit = testkit::random_circuit(rng, n, 15);
        auto s = qsim::new_zero_state(n);
        qsim::apply_circuit(s, circuit);
        const auto ref = oracle::run(circuit, n);
        for (int q = 0; q < n; ++q) {
            for (auto b : {MeasurementBasis::X, MeasurementBasis::Y, MeasurementBasis::Z}) {
                const double e = qsim::expectation(s, q, b);
                EXPECT_NEAR(e, oracle::pauli_expectation(ref, q, b), 1e-9);
                EXPECT_LE(std::abs(e), 1 + 1e-9);
            }
        }
    }
}

TEST(Expectation, RejectsBadQubit) {
    const auto s = qsim::new_zero_state(2);
    EXPECT_THROW(qsim::expectation(s, 2, MeasurementBasis::Z), std::invalid_argument);
}

TEST(Sampling, DeterministicStateGivesSingleOutcome) {
    auto s = basis_state(2, 0b01);
    Rng rng(1);
    const auto counts = qsim::sample_measurements(s, 100, rng);
    ASSERT_EQ(counts.size(), 1u);
    EXPECT_EQ(qsim::to_bitstring(counts.begin()->first, 2), "01");
    EXPECT_EQ(counts.begin()->second, 100u);
}

TEST(Sampling, UniformTwoQubitWithinSixSigma) {
    // Binomial(40000, 1/4): sigma = sqrt(40000 * 1/4 * 3/4) ~= 86.6; 6 sigma ~= 520 < 600.
    auto s = qsim::new_zero_state(2);
    qsim::apply_gate(s, GateOp::h(0));
    qsim::apply_gate(s, GateOp::h(1));
    Rng rng(42);
    const auto counts = qsim::sample_measurements(s, 40000, rng);
    ASSERT_EQ(counts.size(), 4u);
    std::uint64_t total = 0;
    for (const auto& [outcome, count] : counts) {
        EXPECT_NEAR(static_cast<double>(count), 10000.0, 600.0) << outcome;
        total += count;
    }
    EXPECT_EQ(total, 40000u);
}

TEST(Sampling, SameSeedSameCounts) {
    auto s = qsim::base_prepared_state();
    Rng a(77), b(77);
    EXPECT_EQ(qsim::sample_measurements(s, 500, a), qsim::sample_measurements(s, 500, b));
}

TEST(Sampling, ZeroShotsRejected) {
    Rng rng(0);
    EXPECT_THROW(qsim::sample_measurements(qsim::new_zero_state(1), 0, rng), std::invalid_argument);
}

TEST(BasePreparation, GateCountAndOrder) {
    EXPECT_EQ(qsim::base_preparation_circuit(8).size(), 39u);

    const double pi = std::numbers::pi;
    const qsim::Circuit expected{{
        GateOp::h(0), GateOp::h(1),
        GateOp::ry(0, pi / 3), GateOp::rz(0, pi / 4), GateOp::rx(0, pi / 5),
        GateOp::ry(1, pi / 3), GateOp::rz(1, pi / 4), GateOp::rx(1, pi / 5),
        GateOp::cz(0, 1),
    }};
    EXPECT_EQ(qsim::base_preparation_circuit(2), expected);
    EXPECT_THROW(qsim::base_preparation_circuit(1), std::invalid_argument);
}

TEST(BasePreparation, TwoQubitStateMatchesOracle) {
    const auto circuit = qsim::base_preparation_circuit(2);
    auto s = qsim::new_zero_state(2);
    qsim::apply_circuit(s, circuit);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    expect_matches(s, oracle::run(circuit, 2), 1e-9);
}
