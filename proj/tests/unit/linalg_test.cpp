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

#include <random>

#include "boxforge/linalg.hpp"

namespace boxforge {
namespace {

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const CMatrix g = random_ginibre(n, rng);
  CMatrix h = g + g.adjoint();
  h *= 0.5;
  return h;
}

TEST(Eigh, DecomposesRandomHermitianMatrices) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1u, 2u, 3u, 4u, 8u, 16u}) {
    const CMatrix h = random_hermitian(n, rng);
    const auto e = eigh(h);
    ASSERT_EQ(e.values.size(), n);
    EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
    const CMatrix rebuilt = e.vectors * CMatrix::diagonal(e.values) * e.vectors.adjoint();
    EXPECT_LT((rebuilt - h).max_abs(), 1e-12) << n;
    EXPECT_LT((e.vectors.adjoint() * e.vectors - CMatrix::identity(n)).max_abs(), 1e-12);
  }
}

TEST(Eigh, DegenerateSpectrum) {
  const auto e = eigh(CMatrix::identity(4));
  for (double v : e.values) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Eigh, KnownTwoByTwo) {
  // Pauli Y has eigenvalues -1, +1.
  const auto e = eigh(CMatrix::from_rows({{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}));
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
}

TEST(HaarUnitary, IsUnitary) {
  std::mt19937_64 rng(9);
  for (std::size_t n : {2u, 5u, 8u}) {
    const CMatrix u = haar_unitary(n, rng);
    EXPECT_LT((u * u.adjoint() - CMatrix::identity(n)).max_abs(), 1e-12);
  }
}

TEST(SupportProjector, KeepsRangeOnly) {
  const CVector v{1.0, 1.0, 0.0};
  CMatrix psd = outer(v, v);
  const CMatrix p = support_projector(psd);
  EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
  EXPECT_LT((p * p - p).max_abs(), 1e-12);
  EXPECT_NEAR(p(0, 1).real(), 0.5, 1e-12);
}

TEST(Solve, GaussianElimination) {
  const CMatrix a = CMatrix::from_rows({{2.0, 1.0}, {1.0, 3.0}});
  const CVector x = solve(a, CVector{3.0, 5.0});
  EXPECT_NEAR(x[0].real(), 0.8, 1e-14);
  EXPECT_NEAR(x[1].real(), 1.4, 1e-14);
  EXPECT_THROW(solve(CMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}}), CVector{1.0, 1.0}), std::domain_error);
}

TEST(Kron, DimensionsAndEntries) {
  const CMatrix a = CMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const CMatrix k = kron(a, CMatrix::identity(2));
  ASSERT_EQ(k.rows(), 4u);
  EXPECT_EQ(k(2, 2), cplx(4.0));
  EXPECT_EQ(k(0, 2), cplx(2.0));
  EXPECT_EQ(k(0, 1), cplx(0.0));
}

}  // namespace
}  // namespace boxforge
