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

#include <atomic>
#include <stdexcept>
#include <string>

#include "isp/kernels.hpp"

namespace isp::kernels {
namespace {

Isa probe() {
#if defined(ISP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{probe()};
  return slot;
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
  return detected_isa() == Isa::Avx2;
}

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument(std::string("kernel ISA not available: ") + isa_name(isa));
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelTable& table(Isa isa) {
#if defined(ISP_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2::kTable;
#endif
  (void)isa;
  return scalar::kTable;
}

const KernelTable& active() { return table(active_isa()); }

}  // namespace isp::kernels
