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

#ifndef BOXFORGE_LP_HPP_
#define BOXFORGE_LP_HPP_

// Dense two-phase simplex for the small programs that show up here
// (tens of rows and columns).  Bland's rule throughout, so no cycling.

#include <cstddef>
#include <span>
#include <vector>

namespace boxforge::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Problem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major rows x cols
  std::vector<double> b;
  std::vector<double> c;  // maximize c . x ; empty means pure feasibility

  double& at(std::size_t r, std::size_t k) { return a[r * cols + k]; }
  double at(std::size_t r, std::size_t k) const { return a[r * cols + k]; }
};

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  /// Infeasible: Farkas vector y with y.A_k <= 0 for every column and y.b > 0.
  std::vector<double> farkas;
  double phase_one_residual = 0.0;
};

/// maximize c.x subject to A x = b, x >= 0.  `feasibility_tol` bounds the
/// phase-one residual accepted as feasible.
Solution solve(const Problem& problem, double feasibility_tol = 1e-10);

}  // namespace boxforge::lp

#endif  // BOXFORGE_LP_HPP_
