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

#pragma once

#include <cstddef>
#include <span>

// Dense inner loops of the scaling procedure. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant; the variant is
// picked once at startup from CPUID and can be overridden for testing.
//
// Matrices are row-major spans of rows*cols doubles.
//
// Bitwise agreement with the scalar reference: col_sums, scale_rows,
// scale_cols and max_abs_diff. row_sums accumulates in four lanes and
// agrees to rounding only.

namespace isp::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  void (*row_sums)(std::span<const double> a, std::size_t cols, std::span<double> out);
  void (*col_sums)(std::span<const double> a, std::size_t cols, std::span<double> out);
  void (*scale_rows)(std::span<double> a, std::size_t cols, std::span<const double> x);
  void (*scale_cols)(std::span<double> a, std::size_t cols, std::span<const double> y);
  double (*max_abs_diff)(std::span<const double> a, std::span<const double> b);
};

const char* isa_name(Isa isa);
bool isa_available(Isa isa);

/// Best ISA supported by both the build and the running CPU.
Isa detected_isa();

Isa active_isa();

/// Throws std::invalid_argument if `isa` is not available.
void set_active_isa(Isa isa);

const KernelTable& table(Isa isa);
const KernelTable& active();

namespace scalar {
extern const KernelTable kTable;
}

#if defined(ISP_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

}  // namespace isp::kernels
