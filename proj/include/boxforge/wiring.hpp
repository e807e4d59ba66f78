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

#ifndef BOXFORGE_WIRING_HPP_
#define BOXFORGE_WIRING_HPP_

// Deterministic local wirings: single-copy relabelings and two-copy
// adaptive protocols, stored as explicit truth tables.

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "boxforge/box.hpp"

namespace boxforge {

enum class InputMap : std::uint8_t { Identity = 0, Flip = 1 };

/// Output maps f(c, z) with c the box output and z the party's input:
/// F1 = c, F2 = not c, F3 = c xor z, F4 = not (c xor z).
enum class OutputMap : std::uint8_t { F1 = 0, F2 = 1, F3 = 2, F4 = 3 };

int apply_input_map(InputMap m, int z);
int apply_output_map(OutputMap f, int c, int z);

struct LocalRelabeling {
  InputMap input = InputMap::Identity;
  OutputMap output = OutputMap::F1;

  bool operator==(const LocalRelabeling&) const = default;
};

struct SingleCopyWiring {
  LocalRelabeling alice;
  LocalRelabeling bob;

  /// ((inA * 4 + fA) * 2 + inB) * 4 + fB; the identity wiring has index 0.
  int index() const;
  static SingleCopyWiring from_index(int index);
  /// e.g. "x'=x, y'=not y, a=a', b=b' xor y"
  std::string describe() const;

  bool operator==(const SingleCopyWiring&) const = default;
};

/// All 64 single-copy wirings in index order.
std::vector<SingleCopyWiring> enumerate_single_copy();

/// Child table p~(ab|xy) = sum [f_A(a',x) = a][f_B(b',y) = b] p(a'b'|x'(x) y'(y)).
Box222 apply_single_copy(const SingleCopyWiring& wiring, const Box222& box);

/// `second` applied after `first`; the result is again a single-copy wiring.
SingleCopyWiring compose(const SingleCopyWiring& second, const SingleCopyWiring& first);

/// Arbitrary local output table a = table[z][c] with the input left as is.
/// Lets maps outside the allowed set be examined.
struct OutputTable {
  std::array<std::array<std::uint8_t, 2>, 2> table{};  // [z][c]

  static OutputTable from_map(OutputMap f);
  /// c := z and (not c'): constant on z = 0.
  static OutputTable forbidden();
  /// c := z xor c'
  static OutputTable allowed();
};

/// Applies output tables on both parties with inputs passed through.
Box222 apply_output_tables(const OutputTable& alice, const OutputTable& bob, const Box222& box);

/// Applies OutputTable::forbidden() on A (B untouched) and returns the
/// child's locality verdict.
LocalityVerdict demonstrate_forbidden_map(const Box222& box);
LocalityVerdict demonstrate_allowed_map(const Box222& box);

/// One input branch of a two-copy local wiring.
struct TwoCopyBranch {
  std::uint8_t order = 0;        // 0: copy 1 first, 1: copy 2 first
  std::uint8_t first_input = 0;  // input fed to the first copy
  std::array<std::uint8_t, 2> second_input{};  // [a_first]
  std::array<std::uint8_t, 4> final_output{};  // [2 * a_first + a_second]

  /// Truth-table bits, most significant first: order, first_input,
  /// second_input[0..1], final_output[0..3].
  std::uint8_t bits() const;
  static TwoCopyBranch from_bits(std::uint8_t bits);

  bool operator==(const TwoCopyBranch&) const = default;
};

struct TwoCopyLocalWiring {
  std::array<TwoCopyBranch, 2> branch;  // [x]

  /// branch[0].bits() << 8 | branch[1].bits()
  std::uint16_t index() const;
  static TwoCopyLocalWiring from_index(std::uint16_t index);
  /// Copy 1 with input x, output a_1.
  static TwoCopyLocalWiring pass_through(int copy = 0);

  /// Final output for input x when copy k answers strategy[k][input].
  int respond(int x, const std::array<std::array<int, 2>, 2>& strategy) const;
  /// Outputs against all 16 deterministic per-copy strategies, per input:
  /// bit (16 x + 4 s1 + s2) with s_k = 2 g_k(1) + g_k(0).  Two wirings
  /// induce the same child on every no-signaling parent iff these agree.
  std::uint32_t fingerprint() const;
  /// R(a | x, s) for s = 4 xs + as (the two-bit input and output strings
  /// of the copies, copy k in bit k): 1 when the adaptive schedule is
  /// consistent with (xs, as) and ends in a.  Layout [(2x + a) * 16 + s].
  std::array<double, 64> response_rows() const;

  bool operator==(const TwoCopyLocalWiring&) const = default;
};

inline constexpr std::size_t kTwoCopyRawCount = 65536;

/// All 65536 tables in index order (lexicographic on truth-table bits).
std::vector<TwoCopyLocalWiring> enumerate_two_copy_raw();

struct TwoCopyClass {
  std::uint32_t fingerprint = 0;
  std::uint16_t representative = 0;  // lowest member index
  std::uint32_t size = 0;
};

/// Extensional equivalence classes, ordered by representative index.
std::vector<TwoCopyClass> canonicalize_two_copy(const std::vector<TwoCopyLocalWiring>& wirings);

/// Same protocol with the roles of the two copies exchanged.
TwoCopyLocalWiring swap_copies(const TwoCopyLocalWiring& wiring);

struct TwoCopyWiring {
  TwoCopyLocalWiring alice;
  TwoCopyLocalWiring bob;
};

/// Sums the parent over every outcome path consistent with both parties'
/// schedules.  Throws InvalidBox if the parent is not two-copy or signals
/// between copies beyond kTolNs.
Box222 apply_two_copy(const TwoCopyLocalWiring& alice, const TwoCopyLocalWiring& bob, const NCopyBox& parent);

struct StochasticWiring {
  using Component = std::variant<SingleCopyWiring, TwoCopyWiring>;

  std::vector<double> weights;
  std::vector<Component> components;

  /// Throws std::invalid_argument unless weights are nonnegative, sum to 1
  /// within 1e-12 and match the component count.
  void validate() const;
};

/// Convex combination of deterministic children.  Single-copy components
/// act on marginal(0) of a one-copy parent; two-copy components need n = 2.
Box222 apply_stochastic(const StochasticWiring& wiring, const NCopyBox& parent);
Box222 apply_stochastic(const StochasticWiring& wiring, const Box222& parent);

}  // namespace boxforge

#endif  // BOXFORGE_WIRING_HPP_
