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

#include "boxforge/simd/kernels.hpp"

namespace boxforge::simd::scalar {

void panel_product(const double* rows, const double* panels, std::size_t count, double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    const double* panel = panels + k * kPanelSize;
    double* child = out + k * kChildSize;
    for (int r = 0; r < 4; ++r) {
      double acc[4] = {0.0, 0.0, 0.0, 0.0};
      for (int s = 0; s < 16; ++s) {
        const double v = rows[r * 16 + s];
        for (int lane = 0; lane < 4; ++lane) acc[lane] += v * panel[s * 4 + lane];
      }
      for (int lane = 0; lane < 4; ++lane) child[r * 4 + lane] = acc[lane];
    }
  }
}

void weighted_sums16(const double* vectors, std::size_t count, const double* weights, std::size_t num_weights,
                     double* out) {
  for (std::size_t k = 0; k < count; ++k) {
    const double* v = vectors + k * 16;
    for (std::size_t j = 0; j < num_weights; ++j) {
      const double* w = weights + j * 16;
      double acc = 0.0;
      for (int i = 0; i < 16; ++i) acc += v[i] * w[i];
      out[k * num_weights + j] = acc;
    }
  }
}

}  // namespace boxforge::simd::scalar
