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

// AVX2 variants of the statevector kernels. This file is compiled with -mavx2
// and must only be entered through avx2_kernels(), which checks the CPU.

#include "qtoken/kernels.hpp"

#include <immintrin.h>

namespace qtoken::qsim::kernels {
namespace {

// Two complex numbers per __m256d, interleaved [re0, im0, re1, im1].
inline __m256d load2(const Amplitude* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(Amplitude* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m128d load1(const Amplitude* p) { return _mm_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store1(Amplitude* p, __m128d v) { _mm_storeu_pd(reinterpret_cast<double*>(p), v); }

// u * a with the same operation order as the scalar kernels:
// re = ur*ar - ui*ai, im = ur*ai + ui*ar.
struct Broadcast {
    __m256d re, im;
    explicit Broadcast(const Amplitude& u) : re(_mm256_set1_pd(u.real())), im(_mm256_set1_pd(u.imag())) {}
};

inline __m256d cmul(const Broadcast& u, __m256d a) {
    const __m256d swapped = _mm256_permute_pd(a, 0b0101);
    return _mm256_addsub_pd(_mm256_mul_pd(u.re, a), _mm256_mul_pd(u.im, swapped));
}

inline __m128d cmul(const Amplitude& u, __m128d a) {
    const __m128d swapped = _mm_shuffle_pd(a, a, 0b01);
    return _mm_addsub_pd(_mm_mul_pd(_mm_set1_pd(u.real()), a), _mm_mul_pd(_mm_set1_pd(u.imag()), swapped));
}

void apply_single(Amplitude* amps, std::size_t dim, unsigned qubit, const Mat2& u) {
    const std::size_t bit = std::size_t{1} << qubit;
    if (bit == 1) {
        for (std::size_t i = 0; i < dim; i += 2) {
            const __m128d a0 = load1(amps + i);
            const __m128d a1 = load1(amps + i + 1);
            store1(amps + i, _mm_add_pd(cmul(u[0], a0), cmul(u[1], a1)));
            store1(amps + i + 1, _mm_add_pd(cmul(u[2], a0), cmul(u[3], a1)));
        }
        return;
    }
    const Broadcast u00(u[0]), u01(u[1]), u10(u[2]), u11(u[3]);
    for (std::size_t base = 0; base < dim; base += 2 * bit) {
        for (std::size_t i = base; i < base + bit; i += 2) {
            const __m256d a0 = load2(amps + i);
            const __m256d a1 = load2(amps + i + bit);
            store2(amps + i, _mm256_add_pd(cmul(u00, a0), cmul(u01, a1)));
            store2(amps + i + bit, _mm256_add_pd(cmul(u10, a0), cmul(u11, a1)));
        }
    }
}

void negate_where_all_set(Amplitude* amps, std::size_t dim, std::uint64_t mask) {
    const __m256d neg_lo = _mm256_set_pd(0.0, 0.0, -0.0, -0.0);
    const __m256d neg_hi = _mm256_set_pd(-0.0, -0.0, 0.0, 0.0);
    // dim is a power of two and at least 2.
    for (std::size_t i = 0; i < dim; i += 2) {
        const bool lo = (i & mask) == mask;
        const bool hi = ((i + 1) & mask) == mask;
        if (!lo && !hi) {
            continue;
        }
        __m256d sign = _mm256_setzero_pd();
        if (lo) sign = _mm256_or_pd(sign, neg_lo);
        if (hi) sign = _mm256_or_pd(sign, neg_hi);
        store2(amps + i, _mm256_xor_pd(load2(amps + i), sign));
    }
}

void phase_where_set(Amplitude* amps, std::size_t dim, unsigned qubit, Amplitude phase) {
    const std::size_t bit = std::size_t{1} << qubit;
    if (bit == 1) {
        for (std::size_t i = 1; i < dim; i += 2) {
            store1(amps + i, cmul(phase, load1(amps + i)));
        }
        return;
    }
    const Broadcast p(phase);
    for (std::size_t base = bit; base < dim; base += 2 * bit) {
        for (std::size_t i = base; i < base + bit; i += 2) {
            store2(amps + i, cmul(p, load2(amps + i)));
        }
    }
}

// [|a_i|^2, |a_i|^2, |a_{i+1}|^2, |a_{i+1}|^2] style pairing via hadd, then a
// lane permute restores index order: {p_i, p_{i+1}, p_{i+2}, p_{i+3}}.
inline __m256d probs4(const Amplitude* amps) {
    const __m256d lo = load2(amps);
    const __m256d hi = load2(amps + 2);
    const __m256d sums = _mm256_hadd_pd(_mm256_mul_pd(lo, lo), _mm256_mul_pd(hi, hi));
    return _mm256_permute4x64_pd(sums, 0xD8);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double prob1(const Amplitude& a) { return a.real() * a.real() + a.imag() * a.imag(); }

void probabilities(const Amplitude* amps, std::size_t dim, double* out) {
    std::size_t i = 0;
    for (; i + 4 <= dim; i += 4) {
        _mm256_storeu_pd(out + i, probs4(amps + i));
    }
    for (; i < dim; ++i) {
        out[i] = prob1(amps[i]);
    }
}

double norm_squared(const Amplitude* amps, std::size_t dim) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= dim; i += 4) {
        acc = _mm256_add_pd(acc, probs4(amps + i));
    }
    double sum = hsum(acc);
    for (; i < dim; ++i) {
        sum += prob1(amps[i]);
    }
    return sum;
}

double z_expectation(const Amplitude* amps, std::size_t dim, unsigned qubit) {
    const std::size_t bit = std::size_t{1} << qubit;
    const __m256d none = _mm256_setzero_pd();
    const __m256d all = _mm256_set1_pd(-0.0);
    // Sign pattern for four consecutive indices starting at a multiple of 4.
    const __m256d fixed = qubit == 0   ? _mm256_set_pd(-0.0, 0.0, -0.0, 0.0)
                          : qubit == 1 ? _mm256_set_pd(-0.0, -0.0, 0.0, 0.0)
                                       : none;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= dim; i += 4) {
        const __m256d sign = qubit < 2 ? fixed : ((i & bit) ? all : none);
        acc = _mm256_add_pd(acc, _mm256_xor_pd(probs4(amps + i), sign));
    }
    double sum = hsum(acc);
    for (; i < dim; ++i) {
        const double p = prob1(amps[i]);
        sum += (i & bit) ? -p : p;
    }
    return sum;
}

}  // namespace

const KernelTable& avx2_kernel_table() {
    static const KernelTable table{
        "avx2",        apply_single, negate_where_all_set, phase_where_set,
        probabilities, norm_squared, z_expectation,
    };
    return table;
}

}  // namespace qtoken::qsim::kernels
