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

#include <algorithm>
#include <cmath>

#include "isp/kernels.hpp"

namespace isp::kernels::scalar {
namespace {

void row_sums(std::span<const double> a, std::size_t cols, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* row = a.data() + i * cols;
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += row[j];
    out[i] = s;
  }
}

void col_sums(std::span<const double> a, std::size_t cols, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t rows = cols ? a.size() / cols : 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) out[j] += row[j];
  }
}

void scale_rows(std::span<double> a, std::size_t cols, std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    double* row = a.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) row[j] *= x[i];
  }
}

void scale_cols(std::span<double> a, std::size_t cols, std::span<const double> y) {
  const std::size_t rows = cols ? a.size() / cols : 0;
  for (std::size_t i = 0; i < rows; ++i) {
    double* row = a.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) row[j] *= y[j];
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  return m;
}

}  // namespace

const KernelTable kTable{row_sums, col_sums, scale_rows, scale_cols, max_abs_diff};

}  // namespace isp::kernels::scalar
