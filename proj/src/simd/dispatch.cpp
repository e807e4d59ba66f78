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

#include <cstdlib>
#include <stdexcept>

#include "boxforge/simd/kernels.hpp"

namespace boxforge::simd {

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  return std::nullopt;
}

bool avx2_available() {
#if defined(BOXFORGE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  const Isa best = avx2_available() ? Isa::Avx2 : Isa::Scalar;
  if (const char* env = std::getenv("BOXFORGE_SIMD")) {
    if (const auto requested = parse_isa(env)) {
      if (*requested == Isa::Scalar || avx2_available()) return *requested;
    }
  }
  return best;
}

namespace {

void require(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_available()) throw std::runtime_error("AVX2 kernels are not available on this machine");
}

}  // namespace

void panel_product(Isa isa, const double* rows, const double* panels, std::size_t count, double* out) {
  require(isa);
#ifdef BOXFORGE_HAVE_AVX2
  if (isa == Isa::Avx2) return avx2::panel_product(rows, panels, count, out);
#endif
  scalar::panel_product(rows, panels, count, out);
}

void weighted_sums16(Isa isa, const double* vectors, std::size_t count, const double* weights, std::size_t num_weights,
                     double* out) {
  require(isa);
#ifdef BOXFORGE_HAVE_AVX2
  if (isa == Isa::Avx2) return avx2::weighted_sums16(vectors, count, weights, num_weights, out);
#endif
  scalar::weighted_sums16(vectors, count, weights, num_weights, out);
}

}  // namespace boxforge::simd
