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

#ifndef BOXFORGE_BOX_HPP_
#define BOXFORGE_BOX_HPP_

// Boxes of the two-party, two-input, two-output Bell scenario.
//
// Memory and file layout of a single-copy table is row-major over
// (x, y, a, b): entry p(ab|xy) lives at index 8x + 4y + 2a + b.  Party A's
// input is the slowest-varying coordinate and Bob's output the fastest.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace boxforge {

inline constexpr double kTolNorm = 1e-9;
inline constexpr double kTolNs = 1e-9;
inline constexpr double kTolZero = 1e-9;
inline constexpr double kTolLp = 1e-8;

inline constexpr double kTsirelsonBound = 2.8284271247461900976;  // 2*sqrt(2)
inline constexpr double kHardyMaximum = 0.090169943749474241023;  // (5*sqrt(5)-11)/2

constexpr std::size_t box_index(int x, int y, int a, int b) {
  return static_cast<std::size_t>(((x * 2 + y) * 2 + a) * 2 + b);
}

/// Thrown when a table violates normalization, positivity or no-signaling.
class InvalidBox : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TableDiagnostics {
  double min_entry = 0.0;
  double normalization = 0.0;  // max |sum_ab p(ab|xy) - 1|
  double signaling = 0.0;      // max marginal dependence on the remote input
};

TableDiagnostics diagnose(std::span<const double, 16> table);

class Box222 {
 public:
  using Table = std::array<double, 16>;

  /// Validates the table against kTolNorm / kTolNs; throws InvalidBox.
  static Box222 from_table(const Table& table);
  static Box222 uniform();

  /// p(ab|xy)
  double p(int a, int b, int x, int y) const { return table_[box_index(x, y, a, b)]; }
  const Table& table() const { return table_; }

  /// <X_x Y_y> = sum_ab (-1)^(a+b) p(ab|xy)
  double correlator(int x, int y) const;
  /// <X_x>, averaged over Bob's inputs (exact for no-signaling tables).
  double alice_marginal(int x) const;
  double bob_marginal(int y) const;

  bool operator==(const Box222&) const = default;

 private:
  explicit Box222(const Table& table) : table_(table) {}
  Table table_{};
};

/// weight * first + (1 - weight) * second
Box222 mix(const Box222& first, const Box222& second, double weight);

enum class VertexKind : std::uint8_t { Local, Nonlocal };

struct VertexLabel {
  VertexKind kind = VertexKind::Local;
  // (alpha, beta, gamma, eta) for local vertices; eta unused for nonlocal ones.
  std::array<std::uint8_t, 4> bits{};

  static VertexLabel local(int alpha, int beta, int gamma, int eta);
  static VertexLabel nonlocal(int alpha, int beta, int gamma);

  /// "L0110" / "NL101"
  std::string name() const;
  static VertexLabel parse(const std::string& name);

  bool operator==(const VertexLabel&) const = default;
};

/// The 16 deterministic vertices in (alpha, beta, gamma, eta) binary order.
std::vector<VertexLabel> local_labels();
/// The 8 nonlocal vertices in (alpha, beta, gamma) binary order.
std::vector<VertexLabel> nonlocal_labels();

Box222 make_vertex(const VertexLabel& label);

/// Linear functional in correlator form:
///   sum_xy c_xy <X_x Y_y> + sum_x m_x <X_x> + sum_y m'_y <Y_y> + offset.
struct BellFunctional {
  std::array<double, 4> correlators{};  // index 2x + y
  std::array<double, 2> alice{};
  std::array<double, 2> bob{};
  double offset = 0.0;

  static BellFunctional chsh();
  /// CHSH variant that attains 4 on the nonlocal vertex NL(alpha, beta, gamma).
  static BellFunctional chsh_variant(int alpha, int beta, int gamma);
  /// alpha <X_0> + CHSH
  static BellFunctional tilted_chsh(double alpha);

  /// Coefficients w with evaluate(f, box) == w . table + offset for every
  /// no-signaling table.  Marginal terms are spread evenly over the remote
  /// party's inputs.
  std::array<double, 16> table_weights() const;
  /// Inverse of table_weights() on no-signaling tables.
  static BellFunctional from_table_weights(std::span<const double, 16> weights, double constant);

  /// Euclidean norm of the 8 correlator and marginal coefficients.
  double coefficient_norm() const;
  bool is_finite() const;
};

/// The 8 sign-symmetry variants of CHSH in (alpha, beta, gamma) order.
std::vector<BellFunctional> chsh_variants();

double evaluate(const BellFunctional& functional, const Box222& box);
/// Maximum of the functional over the 16 deterministic vertices.
double local_bound(const BellFunctional& functional);

struct HardyStats {
  double q = 0.0;    // p(00|X0 Y0)
  double z01 = 0.0;  // p(00|X0 Y1)
  double z10 = 0.0;  // p(00|X1 Y0)
  double z11 = 0.0;  // p(11|X1 Y1)

  double max_zero() const;
  bool hardy_nonlocal(double tol_zero = kTolZero) const;
};

HardyStats hardy_stats(const Box222& box);

struct LocalWitness {
  std::array<double, 16> weights{};  // over local_labels()
};

struct NonlocalCertificate {
  BellFunctional functional;
  double local_bound = 0.0;
  double value = 0.0;
  std::string source;  // "chsh-variant" or "lp-dual"
};

class LocalityVerdict {
 public:
  explicit LocalityVerdict(LocalWitness witness) : outcome_(witness) {}
  explicit LocalityVerdict(NonlocalCertificate certificate) : outcome_(std::move(certificate)) {}

  bool is_local() const { return std::holds_alternative<LocalWitness>(outcome_); }
  const LocalWitness& witness() const { return std::get<LocalWitness>(outcome_); }
  const NonlocalCertificate& certificate() const { return std::get<NonlocalCertificate>(outcome_); }

 private:
  std::variant<LocalWitness, NonlocalCertificate> outcome_;
};

/// Decides membership in the local polytope.  Feasible boxes come back with
/// convex weights over the deterministic vertices; infeasible ones with a
/// separating functional, preferring a CHSH variant over the raw LP dual.
LocalityVerdict local_membership(const Box222& box);
/// Same, for an unvalidated table; throws InvalidBox on ill-conditioned input.
LocalityVerdict local_membership(std::span<const double, 16> table);

/// Joint table of n independent uses.  Input and output strings are n-bit
/// integers with copy k stored in bit k; the flat index is
/// ((xs * N + ys) * N + as) * N + bs with N = 2^n.
class NCopyBox {
 public:
  static NCopyBox from_table(int copies, std::vector<double> table);
  static NCopyBox from_box(const Box222& box);

  int copies() const { return copies_; }
  std::size_t strings() const { return std::size_t{1} << copies_; }
  const std::vector<double>& table() const { return table_; }
  double p(unsigned as, unsigned bs, unsigned xs, unsigned ys) const;

  /// Single-copy marginal of copy k (0-based), other inputs held at 0.
  Box222 marginal(int copy) const;
  /// Max dependence of any per-copy output marginal on the other inputs.
  /// Zero (within rounding) for products of no-signaling boxes.
  double sub_party_signaling() const;

 private:
  NCopyBox(int copies, std::vector<double> table) : copies_(copies), table_(std::move(table)) {}
  int copies_ = 1;
  std::vector<double> table_;
};

NCopyBox tensor(const NCopyBox& first, const NCopyBox& second);

struct Fractions {
  double tsirelson = 0.0;  // signed distance to the CHSH = 2 sqrt 2 hyperplane
  double tilted = 0.0;     // signed distance to the CHSH_alpha = bound hyperplane
};

/// Perpendicular distances in the 8-dimensional correlator/marginal space.
/// tilted_bound is the quantum maximum of alpha <X_0> + CHSH.
Fractions fractions(const Box222& box, double alpha, double tilted_bound);

}  // namespace boxforge

#endif  // BOXFORGE_BOX_HPP_
