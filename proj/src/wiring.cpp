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

#include "boxforge/wiring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace boxforge {

int apply_input_map(InputMap m, int z) { return z ^ static_cast<int>(m); }

int apply_output_map(OutputMap f, int c, int z) {
  const int u = static_cast<int>(f) & 1;
  const int v = static_cast<int>(f) >> 1;
  return c ^ u ^ (v & z);
}

int SingleCopyWiring::index() const {
  return ((static_cast<int>(alice.input) * 4 + static_cast<int>(alice.output)) * 2 + static_cast<int>(bob.input)) * 4 +
         static_cast<int>(bob.output);
}

SingleCopyWiring SingleCopyWiring::from_index(int index) {
  if (index < 0 || index >= 64) throw std::out_of_range("SingleCopyWiring: index must lie in [0, 64)");
  SingleCopyWiring w;
  w.bob.output = static_cast<OutputMap>(index & 3);
  w.bob.input = static_cast<InputMap>((index >> 2) & 1);
  w.alice.output = static_cast<OutputMap>((index >> 3) & 3);
  w.alice.input = static_cast<InputMap>((index >> 5) & 1);
  return w;
}

namespace {

std::string describe_party(const LocalRelabeling& r, char in, char out) {
  std::ostringstream os;
  const std::string z(1, in);
  const std::string c = std::string(1, out) + "'";
  os << in << "'=" << (r.input == InputMap::Flip ? "not " + z : z) << ", " << out << "=";
  switch (r.output) {
    case OutputMap::F1: os << c; break;
    case OutputMap::F2: os << "not " << c; break;
    case OutputMap::F3: os << c << " xor " << z; break;
    case OutputMap::F4: os << "not (" << c << " xor " << z << ")"; break;
  }
  return os.str();
}

LocalRelabeling compose_party(const LocalRelabeling& second, const LocalRelabeling& first) {
  const auto out = [&](int c, int z) {
    return apply_output_map(second.output, apply_output_map(first.output, c, apply_input_map(second.input, z)), z);
  };
  const int u = out(0, 0);
  const int v = out(0, 1) ^ u;
  return LocalRelabeling{static_cast<InputMap>(static_cast<int>(first.input) ^ static_cast<int>(second.input)),
                         static_cast<OutputMap>(u + 2 * v)};
}

}  // namespace

std::string SingleCopyWiring::describe() const {
  return describe_party(alice, 'x', 'a') + "; " + describe_party(bob, 'y', 'b');
}

std::vector<SingleCopyWiring> enumerate_single_copy() {
  std::vector<SingleCopyWiring> out;
  out.reserve(64);
  for (int i = 0; i < 64; ++i) out.push_back(SingleCopyWiring::from_index(i));
  return out;
}

Box222 apply_single_copy(const SingleCopyWiring& w, const Box222& box) {
  Box222::Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const int xp = apply_input_map(w.alice.input, x), yp = apply_input_map(w.bob.input, y);
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          const int a = apply_output_map(w.alice.output, ap, x), b = apply_output_map(w.bob.output, bp, y);
          t[box_index(x, y, a, b)] += box.p(ap, bp, xp, yp);
        }
    }
  return Box222::from_table(t);
}

SingleCopyWiring compose(const SingleCopyWiring& second, const SingleCopyWiring& first) {
  return SingleCopyWiring{compose_party(second.alice, first.alice), compose_party(second.bob, first.bob)};
}

OutputTable OutputTable::from_map(OutputMap f) {
  OutputTable t;
  for (int z = 0; z < 2; ++z)
    for (int c = 0; c < 2; ++c) t.table[z][c] = static_cast<std::uint8_t>(apply_output_map(f, c, z));
  return t;
}

OutputTable OutputTable::forbidden() {
  OutputTable t;
  for (int z = 0; z < 2; ++z)
    for (int c = 0; c < 2; ++c) t.table[z][c] = static_cast<std::uint8_t>(z & (c ^ 1));
  return t;
}

OutputTable OutputTable::allowed() { return from_map(OutputMap::F3); }

Box222 apply_output_tables(const OutputTable& alice, const OutputTable& bob, const Box222& box) {
  Box222::Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) t[box_index(x, y, alice.table[x][ap], bob.table[y][bp])] += box.p(ap, bp, x, y);
  return Box222::from_table(t);
}

LocalityVerdict demonstrate_forbidden_map(const Box222& box) {
  return local_membership(apply_output_tables(OutputTable::forbidden(), OutputTable::from_map(OutputMap::F1), box));
}

LocalityVerdict demonstrate_allowed_map(const Box222& box) {
  return local_membership(apply_output_tables(OutputTable::allowed(), OutputTable::from_map(OutputMap::F1), box));
}

std::uint8_t TwoCopyBranch::bits() const {
  int v = (order << 7) | (first_input << 6) | (second_input[0] << 5) | (second_input[1] << 4);
  for (int k = 0; k < 4; ++k) v |= final_output[k] << (3 - k);
  return static_cast<std::uint8_t>(v);
}

TwoCopyBranch TwoCopyBranch::from_bits(std::uint8_t bits) {
  TwoCopyBranch b;
  b.order = (bits >> 7) & 1;
  b.first_input = (bits >> 6) & 1;
  b.second_input = {static_cast<std::uint8_t>((bits >> 5) & 1), static_cast<std::uint8_t>((bits >> 4) & 1)};
  for (int k = 0; k < 4; ++k) b.final_output[k] = (bits >> (3 - k)) & 1;
  return b;
}

std::uint16_t TwoCopyLocalWiring::index() const {
  return static_cast<std::uint16_t>((branch[0].bits() << 8) | branch[1].bits());
}

TwoCopyLocalWiring TwoCopyLocalWiring::from_index(std::uint16_t index) {
  return TwoCopyLocalWiring{{TwoCopyBranch::from_bits(static_cast<std::uint8_t>(index >> 8)),
                             TwoCopyBranch::from_bits(static_cast<std::uint8_t>(index & 0xff))}};
}

TwoCopyLocalWiring TwoCopyLocalWiring::pass_through(int copy) {
  if (copy != 0 && copy != 1) throw std::out_of_range("pass_through: copy must be 0 or 1");
  TwoCopyLocalWiring w;
  for (int x = 0; x < 2; ++x) {
    auto& b = w.branch[x];
    b.order = static_cast<std::uint8_t>(copy);
    b.first_input = static_cast<std::uint8_t>(x);
    b.final_output = {0, 0, 1, 1};
  }
  return w;
}

int TwoCopyLocalWiring::respond(int x, const std::array<std::array<int, 2>, 2>& strategy) const {
  const auto& b = branch[x];
  const int first = b.order, second = 1 - b.order;
  const int a_first = strategy[first][b.first_input];
  const int a_second = strategy[second][b.second_input[a_first]];
  return b.final_output[2 * a_first + a_second];
}

std::uint32_t TwoCopyLocalWiring::fingerprint() const {
  std::uint32_t fp = 0;
  for (int x = 0; x < 2; ++x)
    for (int s1 = 0; s1 < 4; ++s1)
      for (int s2 = 0; s2 < 4; ++s2) {
        const std::array<std::array<int, 2>, 2> strategy{{{s1 & 1, s1 >> 1}, {s2 & 1, s2 >> 1}}};
        if (respond(x, strategy)) fp |= std::uint32_t{1} << (16 * x + 4 * s1 + s2);
      }
  return fp;
}

namespace {

struct PathStep {
  unsigned inputs;  // xs
  int output;       // final a
};

// The unique input string and final output consistent with output string `as`.
PathStep follow(const TwoCopyBranch& b, unsigned as) {
  const int first = b.order, second = 1 - b.order;
  const int a_first = static_cast<int>((as >> first) & 1u);
  const int a_second = static_cast<int>((as >> second) & 1u);
  const unsigned xs = (static_cast<unsigned>(b.first_input) << first) |
                      (static_cast<unsigned>(b.second_input[a_first]) << second);
  return PathStep{xs, b.final_output[2 * a_first + a_second]};
}

}  // namespace

std::array<double, 64> TwoCopyLocalWiring::response_rows() const {
  std::array<double, 64> rows{};
  for (int x = 0; x < 2; ++x)
    for (unsigned as = 0; as < 4; ++as) {
      const PathStep step = follow(branch[x], as);
      rows[(2 * x + step.output) * 16 + step.inputs * 4 + as] = 1.0;
    }
  return rows;
}

std::vector<TwoCopyLocalWiring> enumerate_two_copy_raw() {
  std::vector<TwoCopyLocalWiring> out;
  out.reserve(kTwoCopyRawCount);
  for (std::size_t i = 0; i < kTwoCopyRawCount; ++i) out.push_back(TwoCopyLocalWiring::from_index(static_cast<std::uint16_t>(i)));
  return out;
}

std::vector<TwoCopyClass> canonicalize_two_copy(const std::vector<TwoCopyLocalWiring>& wirings) {
  std::unordered_map<std::uint32_t, TwoCopyClass> classes;
  for (const auto& w : wirings) {
    const std::uint32_t fp = w.fingerprint();
    auto [it, inserted] = classes.try_emplace(fp, TwoCopyClass{fp, w.index(), 0});
    it->second.representative = std::min(it->second.representative, w.index());
    ++it->second.size;
  }
  std::vector<TwoCopyClass> out;
  out.reserve(classes.size());
  for (const auto& [fp, c] : classes) out.push_back(c);
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.representative < r.representative; });
  return out;
}

TwoCopyLocalWiring swap_copies(const TwoCopyLocalWiring& wiring) {
  TwoCopyLocalWiring out = wiring;
  for (auto& b : out.branch) b.order ^= 1;
  return out;
}

Box222 apply_two_copy(const TwoCopyLocalWiring& alice, const TwoCopyLocalWiring& bob, const NCopyBox& parent) {
  if (parent.copies() != 2) throw InvalidBox("apply_two_copy: parent must have two copies");
  if (parent.sub_party_signaling() > kTolNs) throw InvalidBox("apply_two_copy: parent signals between copies");
  Box222::Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (unsigned as = 0; as < 4; ++as) {
        const PathStep pa = follow(alice.branch[x], as);
        for (unsigned bs = 0; bs < 4; ++bs) {
          const PathStep pb = follow(bob.branch[y], bs);
          t[box_index(x, y, pa.output, pb.output)] += parent.p(as, bs, pa.inputs, pb.inputs);
        }
      }
  return Box222::from_table(t);
}

void StochasticWiring::validate() const {
  if (weights.empty() || weights.size() != components.size()) {
    throw std::invalid_argument("StochasticWiring: weights and components must be nonempty and of equal length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("StochasticWiring: weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("StochasticWiring: weights must sum to 1");
}

Box222 apply_stochastic(const StochasticWiring& wiring, const NCopyBox& parent) {
  wiring.validate();
  Box222::Table t{};
  for (std::size_t k = 0; k < wiring.components.size(); ++k) {
    const Box222 child = std::visit(
        [&](const auto& c) -> Box222 {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, SingleCopyWiring>) {
            if (parent.copies() != 1) throw std::invalid_argument("apply_stochastic: single-copy component needs n = 1");
            return apply_single_copy(c, parent.marginal(0));
          } else {
            return apply_two_copy(c.alice, c.bob, parent);
          }
        },
        wiring.components[k]);
    for (std::size_t i = 0; i < 16; ++i) t[i] += wiring.weights[k] * child.table()[i];
  }
  return Box222::from_table(t);
}

Box222 apply_stochastic(const StochasticWiring& wiring, const Box222& parent) {
  return apply_stochastic(wiring, NCopyBox::from_box(parent));
}

}  // namespace boxforge
