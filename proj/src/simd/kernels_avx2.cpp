// Copyright 2026 The Boxforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "boxforge/simd/kernels.hpp"

namespace boxforge::simd::avx2 {

void panel_product(const double* rows, const double* panels, std::size_t count, double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    const double* panel = panels + k * kPanelSize;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    for (int s = 0; s < 16; ++s) {
      const __m256d p = _mm256_loadu_pd(panel + s * 4);
      acc0 = _mm256_fmadd_pd(_mm256_set1_pd(rows[s]), p, acc0);
      acc1 = _mm256_fmadd_pd(_mm256_set1_pd(rows[16 + s]), p, acc1);
      acc2 = _mm256_fmadd_pd(_mm256_set1_pd(rows[32 + s]), p, acc2);
      acc3 = _mm256_fmadd_pd(_mm256_set1_pd(rows[48 + s]), p, acc3);
    }
    double* child = out + k * kChildSize;
    _mm256_storeu_pd(child, acc0);
    _mm256_storeu_pd(child + 4, acc1);
    _mm256_storeu_pd(child + 8, acc2);
    _mm256_storeu_pd(child + 12, acc3);
  }
}

void weighted_sums16(const double* vectors, std::size_t count, const double* weights, std::size_t num_weights,
                     double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    const double* v = vectors + k * 16;
    const __m256d v0 = _mm256_loadu_pd(v);
    const __m256d v1 = _mm256_loadu_pd(v + 4);
    const __m256d v2 = _mm256_loadu_pd(v + 8);
    const __m256d v3 = _mm256_loadu_pd(v + 12);
    for (std::size_t j = 0; j < num_weights; ++j) {
      const double* w = weights + j * 16;
      __m256d acc = _mm256_mul_pd(v0, _mm256_loadu_pd(w));
      acc = _mm256_fmadd_pd(v1, _mm256_loadu_pd(w + 4), acc);
      acc = _mm256_fmadd_pd(v2, _mm256_loadu_pd(w + 8), acc);
      acc = _mm256_fmadd_pd(v3, _mm256_loadu_pd(w + 12), acc);
      const __m128d lo = _mm256_castpd256_pd128(acc);
      const __m128d hi = _mm256_extractf128_pd(acc, 1);
      const __m128d pair = _mm_add_pd(lo, hi);
      out[k * num_weights + j] = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    }
  }
}

}  // namespace boxforge::simd::avx2
