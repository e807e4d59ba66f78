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

#ifndef BOXFORGE_SIMD_KERNELS_HPP_
#define BOXFORGE_SIMD_KERNELS_HPP_

// Inner loops of the two-copy scan.  Each kernel has a portable scalar
// reference and an AVX2/FMA variant chosen at runtime.
//
//   panel_product:   out[k] (4 x 4) = rows (4 x 16) * panels[k] (16 x 4)
//   weighted_sums16: out[k * m + j] = <vectors[k], weights[j]> over 16 entries
//
// All matrices are dense row-major doubles.

#include <cstddef>
#include <optional>
#include <string_view>

namespace boxforge::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
/// Parses "scalar" / "avx2"; nullopt otherwise.
std::optional<Isa> parse_isa(std::string_view name);

/// True when the binary carries the AVX2 variants and the CPU runs them.
bool avx2_available();

/// Best available ISA, unless BOXFORGE_SIMD names another supported one.
Isa active_isa();

inline constexpr std::size_t kPanelSize = 64;   // 16 x 4
inline constexpr std::size_t kRowsSize = 64;    // 4 x 16
inline constexpr std::size_t kChildSize = 16;   // 4 x 4

void panel_product(Isa isa, const double* rows, const double* panels, std::size_t count, double* out);
void weighted_sums16(Isa isa, const double* vectors, std::size_t count, const double* weights, std::size_t num_weights,
                     double* out);

namespace scalar {
void panel_product(const double* rows, const double* panels, std::size_t count, double* out);
void weighted_sums16(const double* vectors, std::size_t count, const double* weights, std::size_t num_weights,
                     double* out);
}  // namespace scalar

namespace avx2 {
void panel_product(const double* rows, const double* panels, std::size_t count, double* out);
void weighted_sums16(const double* vectors, std::size_t count, const double* weights, std::size_t num_weights,
                     double* out);
}  // namespace avx2

}  // namespace boxforge::simd

#endif  // BOXFORGE_SIMD_KERNELS_HPP_
