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

#include "qtoken/kernels.hpp"

namespace qtoken::qsim::kernels {
namespace {

// Complex arithmetic is spelled out so the operation order is fixed and the
// SIMD variants can reproduce it exactly.
inline void mul_add_pair(const Amplitude& u0, const Amplitude& a0, const Amplitude& u1,
                         const Amplitude& a1, double& re, double& im) {
    const double p_re = u0.real() * a0.real() - u0.imag() * a0.imag();
    const double p_im = u0.real() * a0.imag() + u0.imag() * a0.real();
    const double q_re = u1.real() * a1.real() - u1.imag() * a1.imag();
    const double q_im = u1.real() * a1.imag() + u1.imag() * a1.real();
    re = p_re + q_re;
    im = p_im + q_im;
}

void apply_single(Amplitude* amps, std::size_t dim, unsigned qubit, const Mat2& u) {
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
        for (std::size_t i = base; i < base + bit; ++i) {
            const Amplitude a0 = amps[i];
            const Amplitude a1 = amps[i + bit];
            double re0, im0, re1, im1;
            mul_add_pair(u[0], a0, u[1], a1, re0, im0);
            mul_add_pair(u[2], a0, u[3], a1, re1, im1);
            amps[i] = {re0, im0};
            amps[i + bit] = {re1, im1};
        }
    }
}

void negate_where_all_set(Amplitude* amps, std::size_t dim, std::uint64_t mask) {
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) {
            amps[i] = {-amps[i].real(), -amps[i].imag()};
        }
    }
}

void phase_where_set(Amplitude* amps, std::size_t dim, unsigned qubit, Amplitude phase) {
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) {
            const Amplitude a = amps[i];
            amps[i] = {phase.real() * a.real() - phase.imag() * a.imag(),
                       phase.real() * a.imag() + phase.imag() * a.real()};
        }
    }
}

void probabilities(const Amplitude* amps, std::size_t dim, double* out) {
    for (std::size_t i = 0; i < dim; ++i) {
        out[i] = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
    }
}

double norm_squared(const Amplitude* amps, std::size_t dim) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        sum += amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
    }
    return sum;
}

double z_expectation(const Amplitude* amps, std::size_t dim, unsigned qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        const double p = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
        sum += (i & bit) ? -p : p;
    }
    return sum;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        "scalar",      apply_single,  negate_where_all_set, phase_where_set,
        probabilities, norm_squared,  z_expectation,
    };
    return table;
}

}  // namespace qtoken::qsim::kernels
