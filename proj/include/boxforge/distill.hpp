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

#ifndef BOXFORGE_DISTILL_HPP_
#define BOXFORGE_DISTILL_HPP_

// Exhaustive search over pairs of canonical two-copy wirings applied to
// parent (x) parent, with a Pareto frontier over CHSH, tilted CHSH and
// (optionally) the Hardy probability.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boxforge/box.hpp"
#include "boxforge/simd/kernels.hpp"

namespace boxforge {

struct ScanOptions {
  std::vector<double> alphas;
  int top_k = 10;
  bool include_hardy = false;
  unsigned jobs = 1;
  /// Alice classes per work unit; also the checkpoint granularity.
  std::size_t chunk_classes = 64;
  /// When set, each finished chunk is written there and reused on later runs
  /// with the same parent and options.
  std::string checkpoint_dir;
  std::optional<simd::Isa> isa;  // default: simd::active_isa()
};

struct MixtureTerm {
  double weight = 0.0;
  std::uint16_t wiring_a = 0;
  std::uint16_t wiring_b = 0;
};

struct SearchResult {
  std::uint16_t wiring_a = 0;  // representative raw indices
  std::uint16_t wiring_b = 0;
  Box222 child = Box222::uniform();
  double chsh = 0.0;
  std::vector<double> chsh_alpha;  // one per requested alpha
  std::optional<double> hardy_q;   // q when the three zero cells are <= kTolZero, else 0
  bool pareto = false;
  /// Nonempty for convex mixtures from scan_stochastic.
  std::vector<MixtureTerm> mixture;

  /// Objective vector in ScanReport::objectives order.
  std::vector<double> objectives() const;
};

struct ScanReport {
  std::vector<std::string> objectives;  // "chsh", "chsh_alpha=<a>", "hardy_q"
  std::size_t classes_per_party = 0;
  std::uint64_t pairs_evaluated = 0;
  std::vector<double> maxima;                   // per objective
  std::vector<SearchResult> frontier;           // Pareto set, lexicographic pair order
  std::vector<std::vector<SearchResult>> top;   // per objective, best first
  /// A frontier pair attaining every maximum at once, if one exists; when
  /// empty, exhaustion shows no single deterministic pair does.
  std::optional<SearchResult> gold;
  std::string isa;
  std::size_t chunks_total = 0;
  std::size_t chunks_resumed = 0;
};

/// Objective values rounded to this grid compare equal; ties go to the
/// lexicographically smaller (wiring_a, wiring_b).
inline constexpr double kObjectiveResolution = 1e-12;

ScanReport scan(const Box222& parent, const ScanOptions& options = {});

/// Convex mixtures of frontier children: for each tilted objective,
/// maximizes it subject to CHSH >= t for every frontier CHSH level t.
/// support = 1 returns the deterministic frontier.  Throws
/// std::invalid_argument for support < 1.
std::vector<SearchResult> scan_stochastic(const Box222& parent, const std::vector<double>& alphas, int support,
                                          const ScanOptions& options = {});

/// Re-evaluates a child against the objectives of a report.
SearchResult evaluate_child(std::uint16_t wiring_a, std::uint16_t wiring_b, const Box222& child,
                            const std::vector<double>& alphas, bool include_hardy);

}  // namespace boxforge

#endif  // BOXFORGE_DISTILL_HPP_
