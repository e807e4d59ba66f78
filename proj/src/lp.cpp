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

#include "boxforge/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace boxforge::lp {
namespace {

constexpr double kPivotEps = 1e-12;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), width_(cols + rows + 1), t_(rows * width_, 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t k) { return t_[r * width_ + k]; }
  double at(std::size_t r, std::size_t k) const { return t_[r * width_ + k]; }
  double& rhs(std::size_t r) { return at(r, width_ - 1); }
  double rhs(std::size_t r) const { return at(r, width_ - 1); }
  std::size_t artificial(std::size_t r) const { return cols_ + r; }
  bool is_artificial(std::size_t k) const { return k >= cols_ && k < cols_ + rows_; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t basis(std::size_t r) const { return basis_[r]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double inv = 1.0 / at(pr, pc);
    for (std::size_t k = 0; k < width_; ++k) at(pr, k) *= inv;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t k = 0; k < width_; ++k) at(r, k) -= factor * at(pr, k);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Minimizes cost . x over the current basis with Bland's rule.  Columns
  // for which `allowed` is false never enter.  Returns false if unbounded.
  template <typename CostFn, typename AllowedFn>
  bool minimize(CostFn cost, AllowedFn allowed) {
    const std::size_t max_pivots = 50 * (rows_ + cols_ + 10);
    for (std::size_t iter = 0; iter < max_pivots; ++iter) {
      std::size_t entering = width_;
      for (std::size_t k = 0; k + 1 < width_; ++k) {
        if (!allowed(k)) continue;
        double reduced = cost(k);
        for (std::size_t r = 0; r < rows_; ++r) reduced -= cost(basis_[r]) * at(r, k);
        if (reduced < -kPivotEps) {
          entering = k;
          break;
        }
      }
      if (entering == width_) return true;
      std::size_t leaving = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        const double coef = at(r, entering);
        if (coef <= kPivotEps) continue;
        const double ratio = rhs(r) / coef;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leaving < rows_ && basis_[r] < basis_[leaving])) {
          best = ratio;
          leaving = r;
        }
      }
      if (leaving == rows_) return false;
      pivot(leaving, entering);
    }
    throw std::runtime_error("simplex: pivot limit exceeded");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& problem, double feasibility_tol) {
  const std::size_t m = problem.rows;
  const std::size_t n = problem.cols;
  if (problem.a.size() != m * n || problem.b.size() != m ||
      (!problem.c.empty() && problem.c.size() != n)) {
    throw std::invalid_argument("lp::solve: inconsistent problem dimensions");
  }

  Tableau tab(m, n);
  std::vector<double> sign(m, 1.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (problem.b[r] < 0.0) sign[r] = -1.0;
    for (std::size_t k = 0; k < n; ++k) tab.at(r, k) = sign[r] * problem.at(r, k);
    tab.at(r, tab.artificial(r)) = 1.0;
    tab.rhs(r) = sign[r] * problem.b[r];
    tab.basis(r) = tab.artificial(r);
  }

  auto phase_one_cost = [&](std::size_t k) { return tab.is_artificial(k) ? 1.0 : 0.0; };
  tab.minimize(phase_one_cost, [](std::size_t) { return true; });

  Solution sol;
  double residual = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.is_artificial(tab.basis(r))) residual += tab.rhs(r);
  }
  sol.phase_one_residual = residual;

  if (residual > feasibility_tol) {
    sol.status = Status::Infeasible;
    sol.farkas.assign(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      double y = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (tab.is_artificial(tab.basis(i))) y += tab.at(i, tab.artificial(r));
      }
      sol.farkas[r] = sign[r] * y;
    }
    return sol;
  }

  // Drive zero-level artificials out of the basis; rows left behind are redundant.
  for (std::size_t r = 0; r < m; ++r) {
    if (!tab.is_artificial(tab.basis(r))) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(tab.at(r, k)) > 1e-9) {
        tab.pivot(r, k);
        break;
      }
    }
  }

  if (!problem.c.empty()) {
    auto phase_two_cost = [&](std::size_t k) { return k < n ? -problem.c[k] : 0.0; };
    const bool bounded =
        tab.minimize(phase_two_cost, [&](std::size_t k) { return !tab.is_artificial(k); });
    if (!bounded) {
      sol.status = Status::Unbounded;
      return sol;
    }
  }

  sol.status = Status::Optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis(r) < n) sol.x[tab.basis(r)] = std::max(0.0, tab.rhs(r));
  }
  if (!problem.c.empty()) {
    for (std::size_t k = 0; k < n; ++k) sol.objective += problem.c[k] * sol.x[k];
  }
  return sol;
}

}  // namespace boxforge::lp
