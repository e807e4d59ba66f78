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

#ifndef BOXFORGE_QUANTUM_HPP_
#define BOXFORGE_QUANTUM_HPP_

// Quantum realizations of boxes: pure bipartite states with two dichotomic
// projective measurements per party, evaluated through the Born rule.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "boxforge/box.hpp"
#include "boxforge/linalg.hpp"

namespace boxforge {

class PureState {
 public:
  /// Amplitudes in the |i>_A |j>_B basis at index i * dim_b + j.
  /// Throws std::invalid_argument unless the vector has unit norm (1e-12).
  static PureState from_amplitudes(std::size_t dim_a, std::size_t dim_b, CVector amplitudes);
  /// Rescales to unit norm first.
  static PureState normalized(std::size_t dim_a, std::size_t dim_b, CVector amplitudes);
  /// (sum_i |ii>) / sqrt(d)
  static PureState maximally_entangled(std::size_t d);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  const CVector& amplitudes() const { return amps_; }
  /// dim_a x dim_b coefficient matrix Psi with |psi> = sum Psi_ij |i>|j>.
  CMatrix coefficients() const;

 private:
  PureState(std::size_t dim_a, std::size_t dim_b, CVector amps)
      : dim_a_(dim_a), dim_b_(dim_b), amps_(std::move(amps)) {}
  std::size_t dim_a_ = 0;
  std::size_t dim_b_ = 0;
  CVector amps_;
};

/// Copies of a bipartite state, regrouped as (A1 A2 ...)(B1 B2 ...).
PureState tensor_power(const PureState& state, int copies);

class ProjectiveMeasurement {
 public:
  /// Outcome-0 projector; outcome 1 gets the complement.  Validates
  /// Hermiticity and idempotence within 1e-10.
  static ProjectiveMeasurement from_projector(CMatrix outcome0);
  /// Outcome 0 on the +1 eigenspace of a +-1 observable.
  static ProjectiveMeasurement from_observable(const CMatrix& observable);

  std::size_t dim() const { return p0_.rows(); }
  const CMatrix& projector(int outcome) const { return outcome == 0 ? p0_ : p1_; }
  CMatrix observable() const { return p0_ - p1_; }
  std::size_t rank(int outcome) const;

 private:
  ProjectiveMeasurement(CMatrix p0, CMatrix p1) : p0_(std::move(p0)), p1_(std::move(p1)) {}
  CMatrix p0_;
  CMatrix p1_;
};

struct QuantumRealization {
  PureState state;
  std::array<ProjectiveMeasurement, 2> alice;
  std::array<ProjectiveMeasurement, 2> bob;

  /// Throws std::invalid_argument on inconsistent dimensions.
  void validate() const;
};

/// <psi| A (x) B |psi> for operators on the two local spaces.
cplx expectation(const PureState& state, const CMatrix& on_a, const CMatrix& on_b);

/// p(ab|xy) = <psi| Pi_x^a (x) Pi_y^b |psi>
Box222 realize_box(const QuantumRealization& realization);

namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
}  // namespace pauli

/// |phi+_2> with X0 = Z, X1 = X, Y_j = (Z + (-1)^j X)/sqrt 2.
QuantumRealization tsirelson_realization();

/// Max-norm difference of (X (x) Y)|phi~+_d> and (I (x) Y X^T)|phi~+_d>,
/// both built from the unnormalized sum_m |m>|m>.
double ricochet_check(const CMatrix& x, const CMatrix& y, std::size_t d);
/// Negative control: compares against (I (x) X^T Y)|phi~+_d> instead.
double ricochet_wrong_order(const CMatrix& x, const CMatrix& y, std::size_t d);

struct SchmidtData {
  std::vector<double> coefficients;  // nonincreasing, squares sum to 1

  /// Largest squared coefficient.
  double s() const { return coefficients.empty() ? 0.0 : coefficients.front() * coefficients.front(); }
};

SchmidtData schmidt(const PureState& state);
/// Eigenvalues of the reduced state on A (descending, dim_a entries).
std::vector<double> reduced_spectrum(const PureState& state);

/// Eigenvalues of rho^{(x) n} for a qubit reduced state with spectrum {s, 1-s}:
/// s^(n-j) (1-s)^j with multiplicity C(n, j), descending.
std::vector<double> tensor_power_spectrum(double s, int n);

/// True iff no j in 1..n satisfies s^n = s^(n-j) (1-s)^j, i.e. the n-fold
/// product spectrum cannot be evenly degenerate.  Throws std::domain_error
/// unless 0 < s < 1 and n >= 1.
bool spectrum_obstruction(double s, int n);

/// True iff the flat spectrum {2^-n x 2^n} cannot equal a product spectrum
/// {c, 1-c} (x) spec(zeta) for any zeta.  Throws std::domain_error unless 0 < c < 1.
bool flat_spectrum_obstruction(double c, int n);

struct SeesawOptions {
  double penalty = 1e3;
  int max_iterations = 4000;
  double tolerance = 1e-14;  // stop once an iteration gains less than this
  bool polish = true;        // exact-feasibility polish for two-qubit states
  bool record_trace = false;
  unsigned jobs = 1;
};

struct HardySeesawResult {
  /// Best q among iterates whose three zero cells are <= kTolZero; 0 if none.
  double best_q = 0.0;
  bool feasible = false;
  /// Best feasible realization, or the best penalized iterate when none is feasible.
  std::optional<QuantumRealization> realization;
  HardyStats stats;
  int best_restart = -1;
  /// Penalized objective over the iterations of the best restart, if recorded.
  std::vector<double> trace;
  bool converged = true;
  double best_penalized = 0.0;
};

/// Maximizes q - penalty * (z01 + z10 + z11) by alternating exact
/// maximization over each of the four measurements, scanning projector ranks
/// 1..dim-1.  Each restart is followed by a restoration pass that fixes the
/// outcome-1 supports of X1 and Y1 at their minimal feasible subspaces.
HardySeesawResult seesaw_hardy(const PureState& state, int restarts, std::uint64_t seed,
                               const SeesawOptions& options = {});

/// a (|01> + |10>) + sqrt(1 - 2a^2) |11>
PureState hardy_family_state(double a);

/// Closed-form Hardy realization for the state above, relabeled so that the
/// success event is p(00|X0 Y0).  Used as an independent check of the optimizer.
QuantumRealization hardy_closed_form_realization(double a);

struct HardyOptimum {
  QuantumRealization realization;
  double a = 0.0;
  double q = 0.0;
  HardyStats stats;
};

/// Searches the one-parameter state family by golden section on a^2, running
/// seesaw_hardy at every probe, then re-runs the full seesaw at the optimum.
HardyOptimum hardy_optimal_realization(int restarts = 200, std::uint64_t seed = 0, unsigned jobs = 1);

struct TiltedRealization {
  QuantumRealization realization;
  double alpha = 0.0;          // 2 / sqrt(1 + 2 tan^2(2 theta))
  double printed_alpha = 0.0;  // 2 / sqrt(1 + tan^2(2 theta))
};

/// cos t |00> + sin t |11>, X0 = Z, X1 = X, Y_j = cos mu Z + (-1)^j sin mu X
/// with tan mu = sin 2t.  t = pi/4 returns the Tsirelson realization with
/// alpha = 0.  Throws std::domain_error outside (0, pi/4].
TiltedRealization tilted_realization(double theta);

/// sqrt(8 + 2 alpha^2): value attained by tilted_realization at its alpha.
double tilted_chsh_analytic_max(double alpha);

struct BellSeesawResult {
  double value = 0.0;
  std::optional<QuantumRealization> realization;
  bool converged = true;
};

/// Maximizes a Bell functional over two-qubit pure states and +-1
/// observables by alternating: best state for fixed observables, then each
/// party's best observables for the fixed rest.
BellSeesawResult seesaw_bell(const BellFunctional& functional, int restarts, std::uint64_t seed,
                             unsigned jobs = 1);

/// Fractions with the tilted bound taken from seesaw_bell.
Fractions quantum_fractions(const Box222& box, double alpha, int restarts = 20, std::uint64_t seed = 0);

}  // namespace boxforge

#endif  // BOXFORGE_QUANTUM_HPP_
