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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "boxforge/simd/kernels.hpp"

namespace boxforge::simd {
namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
  return m;
}

TEST(Isa, NamesRoundTrip) {
  EXPECT_EQ(parse_isa(isa_name(Isa::Scalar)), Isa::Scalar);
  EXPECT_EQ(parse_isa(isa_name(Isa::Avx2)), Isa::Avx2);
  EXPECT_FALSE(parse_isa("neon").has_value());
  if (!avx2_available()) EXPECT_EQ(active_isa(), Isa::Scalar);
}

TEST(Scalar, PanelProductMatchesNaiveProduct) {
  std::mt19937_64 rng(1);
  const auto rows = random_vector(kRowsSize, rng);
  const auto panels = random_vector(3 * kPanelSize, rng);
  std::vector<double> out(3 * kChildSize);
  scalar::panel_product(rows.data(), panels.data(), 3, out.data());
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        double s = 0.0;
        for (std::size_t t = 0; t < 16; ++t) s += rows[i * 16 + t] * panels[k * kPanelSize + t * 4 + j];
        EXPECT_NEAR(out[k * kChildSize + i * 4 + j], s, 1e-14);
      }
}

TEST(Scalar, WeightedSumsMatchDotProducts) {
  std::mt19937_64 rng(2);
  const auto vectors = random_vector(5 * 16, rng);
  const auto weights = random_vector(3 * 16, rng);
  std::vector<double> out(5 * 3);
  scalar::weighted_sums16(vectors.data(), 5, weights.data(), 3, out.data());
  for (std::size_t k = 0; k < 5; ++k)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < 16; ++t) s += vectors[k * 16 + t] * weights[j * 16 + t];
      EXPECT_NEAR(out[k * 3 + j], s, 1e-14);
    }
}

class Avx2Equivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!avx2_available()) GTEST_SKIP() << "AVX2/FMA not available on this build or CPU";
  }
};

TEST_F(Avx2Equivalence, PanelProduct) {
  std::mt19937_64 rng(3);
  for (std::size_t count : {1u, 2u, 7u, 82u, 333u}) {
    const auto rows = random_vector(kRowsSize, rng);
    const auto panels = random_vector(count * kPanelSize, rng);
    std::vector<double> a(count * kChildSize), b(count * kChildSize);
    scalar::panel_product(rows.data(), panels.data(), count, a.data());
    avx2::panel_product(rows.data(), panels.data(), count, b.data());
    EXPECT_LT(max_rel_diff(a, b), 1e-13) << count;
  }
}

TEST_F(Avx2Equivalence, WeightedSums) {
  std::mt19937_64 rng(4);
  for (std::size_t count : {1u, 3u, 64u, 1001u})
    for (std::size_t m : {1u, 2u, 5u}) {
      const auto vectors = random_vector(count * 16, rng);
      const auto weights = random_vector(m * 16, rng);
      std::vector<double> a(count * m), b(count * m);
      scalar::weighted_sums16(vectors.data(), count, weights.data(), m, a.data());
      avx2::weighted_sums16(vectors.data(), count, weights.data(), m, b.data());
      EXPECT_LT(max_rel_diff(a, b), 1e-13) << count << "x" << m;
    }
}

TEST_F(Avx2Equivalence, DispatchRoutesToRequestedIsa) {
  std::mt19937_64 rng(5);
  const auto rows = random_vector(kRowsSize, rng);
  const auto panels = random_vector(4 * kPanelSize, rng);
  std::vector<double> a(4 * kChildSize), b(4 * kChildSize);
  panel_product(Isa::Scalar, rows.data(), panels.data(), 4, a.data());
  panel_product(Isa::Avx2, rows.data(), panels.data(), 4, b.data());
  EXPECT_LT(max_rel_diff(a, b), 1e-13);
}

}  // namespace
}  // namespace boxforge::simd
