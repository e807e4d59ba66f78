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

#ifndef BOXFORGE_ANALYSIS_HPP_
#define BOXFORGE_ANALYSIS_HPP_

// Verifiers for the incomparability claims.  Each returns a report whose
// verdict is one-sided for no-go statements: "supported" means no
// counterexample was found under the stated search budget.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxforge/quantum.hpp"
#include "boxforge/wiring.hpp"
#include "json.hpp"

namespace boxforge {

enum class ClaimId { Prop1, Prop2, Theorem1, Theorem2, Lemma1, AppendixA };
enum class Verdict { Supported, Refuted, Inconclusive };

std::string to_string(ClaimId claim);
std::string to_string(Verdict verdict);
ClaimId parse_claim(const std::string& name);
Verdict parse_verdict(const std::string& name);

struct VerificationReport {
  ClaimId claim = ClaimId::Prop1;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  Verdict verdict = Verdict::Inconclusive;
  nlohmann::ordered_json evidence = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  static VerificationReport from_json(const nlohmann::ordered_json& j);
  bool operator==(const VerificationReport&) const = default;
};

inline constexpr double kProp1QThreshold = 1e-6;
inline constexpr int kProp1MinRestarts = 100;
inline constexpr double kInclusionThreshold = 1e-8;

struct Prop1Options {
  int n_max = 2;
  int restarts = 200;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  /// Hardy-optimal state for the positive control; computed when absent.
  std::optional<PureState> control_state;
};

/// No Hardy correlation from copies of the maximally entangled box: the
/// seesaw over |phi+_{2^n}>, n = 1..n_max, must find q <= 1e-6.  Throws
/// std::invalid_argument unless 1 <= n_max <= 5 and restarts >= 1.
VerificationReport verify_prop1(const Prop1Options& options);

/// Result of replaying the support chain on one realization of a maximally
/// entangled state: Supp(X0^0 T) in Supp(Y1^1) in Supp(X1^0 T), orthogonal
/// to Supp(Y0^0).  Defects are squared sines of the largest principal angles.
struct SupportChain {
  double x0_in_y1 = 0.0;
  double y1_in_x1 = 0.0;
  double x1_perp_y0 = 0.0;
  /// (sqrt z01 + sqrt z10 + sqrt z11)^2 >= q for every maximally entangled realization.
  double q_bound = 0.0;
  bool holds(double threshold = kInclusionThreshold) const;
};
SupportChain support_chain(const QuantumRealization& realization);

/// The Hardy-optimal state cannot be turned into the maximally entangled
/// box: its Schmidt weight s must satisfy spectrum_obstruction(s, n) for
/// n = 1..n_max.
VerificationReport verify_prop2(int n_max, std::uint64_t seed = 0, int restarts = 200, unsigned jobs = 1,
                                const std::optional<HardyOptimum>& optimum = std::nullopt);

/// Finite-n evidence for incomparability in both directions: combines the
/// two reports above.
VerificationReport verify_theorem1(const VerificationReport& prop1, const VerificationReport& prop2);

/// For each theta in (0, pi/4): flat-versus-product and Schmidt-weight
/// obstructions for n <= n_max, plus a check that tilted_realization(theta)
/// attains sqrt(8 + 2 alpha^2).  Throws std::domain_error outside the range.
VerificationReport verify_theorem2(const std::vector<double>& theta_grid, int n_max);

/// Ricochet identity on random complex X, Y for each d.
VerificationReport verify_lemma1(int trials, const std::vector<std::size_t>& dims, std::uint64_t seed);

/// Single-copy wiring counts: 64 wirings, 8 fixing each nonlocal vertex,
/// every wiring permuting the nonlocal vertices.
VerificationReport verify_appendix_a();

/// Reference list of the 8 single-copy wirings fixing NL000, in the column
/// order (flip both, flip x, flip y, no flip) with the f1/f3 row first.
std::vector<SingleCopyWiring> published_nl000_fixers();

}  // namespace boxforge

#endif  // BOXFORGE_ANALYSIS_HPP_
