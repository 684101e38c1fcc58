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

// Data-parallel inner loops of the statevector simulator.
//
// Every kernel has a portable scalar reference implementation. On x86-64 an
// AVX2 variant is compiled into its own translation unit and chosen at
// runtime when the CPU supports it. Elementwise kernels perform the same
// floating-point operations in the same order as the scalar versions, so
// their outputs are bit-identical; the reductions use four partial sums and
// may differ from the scalar sum in the last few ulps.
//
// Set QTOKEN_KERNELS=scalar in the environment to force the reference path.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qtoken::qsim::kernels {

using Amplitude = std::complex<double>;

/// Row-major 2x2 complex matrix {u00, u01, u10, u11}.
using Mat2 = std::array<Amplitude, 4>;

struct KernelTable {
    std::string_view name;

    /// Applies `u` to qubit `qubit` of a dense register of `dim` amplitudes.
    void (*apply_single)(Amplitude* amps, std::size_t dim, unsigned qubit, const Mat2& u);

    /// Negates every amplitude whose index has all bits of `mask` set.
    void (*negate_where_all_set)(Amplitude* amps, std::size_t dim, std::uint64_t mask);

    /// Multiplies every amplitude whose index has bit `qubit` set by `phase`.
    void (*phase_where_set)(Amplitude* amps, std::size_t dim, unsigned qubit, Amplitude phase);

    /// out[i] = |amps[i]|^2.
    void (*probabilities)(const Amplitude* amps, std::size_t dim, double* out);

    /// Sum of |amps[i]|^2.
    double (*norm_squared)(const Amplitude* amps, std::size_t dim);

    /// Sum of (+1 if bit `qubit` clear else -1) * |amps[i]|^2.
    double (*z_expectation)(const Amplitude* amps, std::size_t dim, unsigned qubit);
};

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();

/// Table in use by the simulator (resolved once per process).
const KernelTable& active_kernels();

}  // namespace qtoken::qsim::kernels
