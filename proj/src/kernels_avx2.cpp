// Copyright 2026 The isp-limits Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiled with -mavx2; only reached through the dispatch table after a
// CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "isp/kernels.hpp"

namespace isp::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

void row_sums(std::span<const double> a, std::size_t cols, std::span<double> out) {
  const std::size_t vec_end = cols & ~std::size_t{3};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* row = a.data() + i * cols;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j < vec_end; j += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(row + j));
    double s = hsum(acc);
    for (; j < cols; ++j) s += row[j];
    out[i] = s;
  }
}

void col_sums(std::span<const double> a, std::size_t cols, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t rows = cols ? a.size() / cols : 0;
  const std::size_t vec_end = cols & ~std::size_t{3};
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a.data() + i * cols;
    std::size_t j = 0;
    for (; j < vec_end; j += 4) {
      __m256d s = _mm256_loadu_pd(out.data() + j);
      _mm256_storeu_pd(out.data() + j, _mm256_add_pd(s, _mm256_loadu_pd(row + j)));
    }
    for (; j < cols; ++j) out[j] += row[j];
  }
}

void scale_rows(std::span<double> a, std::size_t cols, std::span<const double> x) {
  const std::size_t vec_end = cols & ~std::size_t{3};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double* row = a.data() + i * cols;
    const __m256d f = _mm256_set1_pd(x[i]);
    std::size_t j = 0;
    for (; j < vec_end; j += 4) _mm256_storeu_pd(row + j, _mm256_mul_pd(_mm256_loadu_pd(row + j), f));
    for (; j < cols; ++j) row[j] *= x[i];
  }
}

void scale_cols(std::span<double> a, std::size_t cols, std::span<const double> y) {
  const std::size_t rows = cols ? a.size() / cols : 0;
  const std::size_t vec_end = cols & ~std::size_t{3};
  for (std::size_t i = 0; i < rows; ++i) {
    double* row = a.data() + i * cols;
    std::size_t j = 0;
    for (; j < vec_end; j += 4)
      _mm256_storeu_pd(row + j, _mm256_mul_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(y.data() + j)));
    for (; j < cols; ++j) row[j] *= y[j];
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const std::size_t n = a.size();
  const std::size_t vec_end = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k < vec_end; k += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + k), _mm256_loadu_pd(b.data() + k));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; k < n; ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  return m;
}

}  // namespace

const KernelTable kTable{row_sums, col_sums, scale_rows, scale_cols, max_abs_diff};

}  // namespace isp::kernels::avx2
