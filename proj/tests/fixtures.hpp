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

#include <array>

namespace isp::fixture {

// Reference round-500 iterates of the 4x4 bordered example, rounded to
// three significant digits. Zero entries are exact zeros.
inline constexpr std::array<std::array<double, 4>, 4> kB500{{
    {6, 0, 0, 0},
    {0.171, 5.83, 0, 0},
    {0.00907, 0.309, 2.61, 1.08},
    {0.00132, 0.0447, 0.486, 0.468},
}};

inline constexpr std::array<std::array<double, 4>, 4> kC500{{
    {3.88, 0, 0, 0},
    {0.111, 3.77, 0, 0},
    {0.00587, 0.2, 1.69, 0.697},
    {0.000851, 0.0289, 0.314, 0.303},
}};

}  // namespace isp::fixture
