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

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "boxforge/wiring.hpp"

namespace boxforge {
namespace {

Box222 random_ns_box(std::mt19937_64& rng) {
  std::vector<Box222> vertices;
  for (const auto& l : local_labels()) vertices.push_back(make_vertex(l));
  for (const auto& l : nonlocal_labels()) vertices.push_back(make_vertex(l));
  std::exponential_distribution<double> dist(1.0);
  std::vector<double> w(vertices.size());
  double total = 0.0;
  for (double& v : w) total += (v = dist(rng));
  Box222::Table t{};
  for (std::size_t k = 0; k < vertices.size(); ++k)
    for (std::size_t i = 0; i < 16; ++i) t[i] += w[k] / total * vertices[k].table()[i];
  return Box222::from_table(t);
}

double max_diff(const Box222& a, const Box222& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 16; ++i) m = std::max(m, std::abs(a.table()[i] - b.table()[i]));
  return m;
}

TEST(SingleCopy, EnumerationAndIndexRoundTrip) {
  const auto all = enumerate_single_copy();
  ASSERT_EQ(all.size(), 64u);
  for (int i = 0; i < 64; ++i) {
    EXPECT_EQ(all[i].index(), i);
    EXPECT_EQ(SingleCopyWiring::from_index(i), all[i]);
  }
  EXPECT_THROW(SingleCopyWiring::from_index(64), std::out_of_range);
  EXPECT_EQ(all[0].describe(), "x'=x, a=a'; y'=y, b=b'");
}

TEST(SingleCopy, IdentityLeavesBoxUnchanged) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Box222 box = random_ns_box(rng);
    EXPECT_EQ(apply_single_copy(SingleCopyWiring{}, box), box);
  }
}

TEST(SingleCopy, MapsVerticesToVertices) {
  const auto nl = nonlocal_labels();
  const auto lo = local_labels();
  for (const auto& w : enumerate_single_copy()) {
    for (const auto& l : nl) {
      const Box222 child = apply_single_copy(w, make_vertex(l));
      EXPECT_TRUE(std::any_of(nl.begin(), nl.end(), [&](const VertexLabel& m) { return make_vertex(m) == child; }));
    }
    for (const auto& l : lo) {
      const Box222 child = apply_single_copy(w, make_vertex(l));
      EXPECT_TRUE(std::any_of(lo.begin(), lo.end(), [&](const VertexLabel& m) { return make_vertex(m) == child; }));
    }
  }
}

TEST(SingleCopy, EightWiringsFixEachNonlocalVertex) {
  const std::set<int> expected_nl000{0, 9, 20, 29, 34, 43, 55, 62};
  for (const auto& l : nonlocal_labels()) {
    const Box222 v = make_vertex(l);
    std::set<int> fixers;
    for (const auto& w : enumerate_single_copy())
      if (apply_single_copy(w, v) == v) fixers.insert(w.index());
    EXPECT_EQ(fixers.size(), 8u) << l.name();
    if (l.name() == "NL000") EXPECT_EQ(fixers, expected_nl000);
  }
}

TEST(SingleCopy, FixersOfPrBoxFormAGroup) {
  const Box222 pr = make_vertex(VertexLabel::nonlocal(0, 0, 0));
  std::vector<SingleCopyWiring> fixers;
  for (const auto& w : enumerate_single_copy())
    if (apply_single_copy(w, pr) == pr) fixers.push_back(w);
  for (const auto& a : fixers)
    for (const auto& b : fixers) {
      const SingleCopyWiring c = compose(a, b);
      EXPECT_TRUE(std::find(fixers.begin(), fixers.end(), c) != fixers.end()) << a.index() << "," << b.index();
    }
}

TEST(SingleCopy, ComposeMatchesSequentialApplication) {
  std::mt19937_64 rng(11);
  const Box222 box = random_ns_box(rng);
  for (int i = 0; i < 64; i += 5)
    for (int j = 0; j < 64; j += 7) {
      const auto a = SingleCopyWiring::from_index(i), b = SingleCopyWiring::from_index(j);
      EXPECT_LT(max_diff(apply_single_copy(compose(a, b), box), apply_single_copy(a, apply_single_copy(b, box))),
                1e-15);
    }
}

TEST(SingleCopy, PreservesNoSignalingAndLocality) {
  std::mt19937_64 rng(2024);
  const auto all = enumerate_single_copy();
  std::uniform_int_distribution<int> pick(0, 63);
  for (int t = 0; t < 1000; ++t) {
    const Box222 box = random_ns_box(rng);
    const Box222 child = apply_single_copy(all[pick(rng)], box);
    EXPECT_LE(diagnose(child.table()).signaling, kTolNs);
  }
  for (const auto& l : local_labels())
    for (int i = 0; i < 64; i += 3)
      EXPECT_TRUE(local_membership(apply_single_copy(all[i], make_vertex(l))).is_local());
}

TEST(OutputTables, ForbiddenMapLocalizesPrBoxAllowedMapDoesNot) {
  const Box222 pr = make_vertex(VertexLabel::nonlocal(0, 0, 0));
  const Box222 forbidden = apply_output_tables(OutputTable::forbidden(), OutputTable::from_map(OutputMap::F1), pr);
  EXPECT_LE(diagnose(forbidden.table()).signaling, kTolNs);
  EXPECT_LE(evaluate(BellFunctional::chsh(), forbidden), 2.0);
  const Box222 allowed = apply_output_tables(OutputTable::allowed(), OutputTable::from_map(OutputMap::F1), pr);
  EXPECT_LE(diagnose(allowed.table()).signaling, kTolNs);
  double best = 0.0;
  for (const auto& f : chsh_variants()) best = std::max(best, evaluate(f, allowed));
  EXPECT_NEAR(best, 4.0, 1e-12);
  EXPECT_FALSE(demonstrate_allowed_map(pr).is_local());
  EXPECT_TRUE(demonstrate_forbidden_map(pr).is_local());
}

TEST(OutputTables, FromMapAgreesWithSingleCopyWiring) {
  std::mt19937_64 rng(5);
  const Box222 box = random_ns_box(rng);
  for (int fa = 0; fa < 4; ++fa)
    for (int fb = 0; fb < 4; ++fb) {
      SingleCopyWiring w;
      w.alice.output = static_cast<OutputMap>(fa);
      w.bob.output = static_cast<OutputMap>(fb);
      const Box222 via_tables = apply_output_tables(OutputTable::from_map(w.alice.output),
                                                    OutputTable::from_map(w.bob.output), box);
      EXPECT_LT(max_diff(via_tables, apply_single_copy(w, box)), 1e-15);
    }
}

TEST(TwoCopy, RawEnumerationAndBits) {
  const auto raw = enumerate_two_copy_raw();
  ASSERT_EQ(raw.size(), kTwoCopyRawCount);
  for (std::size_t i = 0; i < raw.size(); i += 977) EXPECT_EQ(raw[i].index(), i);
  for (int b = 0; b < 256; ++b) EXPECT_EQ(TwoCopyBranch::from_bits(static_cast<std::uint8_t>(b)).bits(), b);
  EXPECT_EQ(TwoCopyLocalWiring::pass_through(0).index(), 835);
}

TEST(TwoCopy, PassThroughReturnsFirstCopy) {
  std::mt19937_64 rng(8);
  const Box222 first = random_ns_box(rng), second = random_ns_box(rng);
  const NCopyBox parent = tensor(NCopyBox::from_box(first), NCopyBox::from_box(second));
  const auto p0 = TwoCopyLocalWiring::pass_through(0);
  const auto p1 = TwoCopyLocalWiring::pass_through(1);
  EXPECT_LT(max_diff(apply_two_copy(p0, p0, parent), first), 1e-15);
  EXPECT_LT(max_diff(apply_two_copy(p1, p1, parent), second), 1e-15);
}

TEST(TwoCopy, EveryPairOnUniformParentGivesValidChild) {
  const NCopyBox parent = tensor(NCopyBox::from_box(Box222::uniform()), NCopyBox::from_box(Box222::uniform()));
  const auto raw = enumerate_two_copy_raw();
  for (std::size_t i = 0; i < raw.size(); i += 131)
    for (std::size_t j = 0; j < raw.size(); j += 4099) {
      const Box222 child = apply_two_copy(raw[i], raw[j], parent);
      const auto d = diagnose(child.table());
      EXPECT_LE(d.normalization, kTolNorm);
      EXPECT_LE(d.signaling, kTolNs);
    }
}

TEST(TwoCopy, RejectsWrongCopyCount) {
  const auto p = TwoCopyLocalWiring::pass_through();
  EXPECT_THROW(apply_two_copy(p, p, NCopyBox::from_box(Box222::uniform())), InvalidBox);
}

TEST(TwoCopy, CanonicalClassCount) {
  const auto classes = canonicalize_two_copy(enumerate_two_copy_raw());
  ASSERT_EQ(classes.size(), 6724u);
  std::uint64_t total = 0;
  std::set<std::uint32_t> prints;
  for (const auto& c : classes) {
    total += c.size;
    prints.insert(c.fingerprint);
    EXPECT_EQ(TwoCopyLocalWiring::from_index(c.representative).fingerprint(), c.fingerprint);
  }
  EXPECT_EQ(total, kTwoCopyRawCount);
  EXPECT_EQ(prints.size(), classes.size());
  EXPECT_TRUE(std::is_sorted(classes.begin(), classes.end(),
                             [](const auto& a, const auto& b) { return a.representative < b.representative; }));
}

TEST(TwoCopy, CanonicalizationIgnoresEnumerationOrder) {
  auto raw = enumerate_two_copy_raw();
  const auto reference = canonicalize_two_copy(raw);
  std::mt19937_64 rng(99);
  std::shuffle(raw.begin(), raw.end(), rng);
  const auto shuffled = canonicalize_two_copy(raw);
  ASSERT_EQ(shuffled.size(), reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    EXPECT_EQ(shuffled[i].fingerprint, reference[i].fingerprint);
    EXPECT_EQ(shuffled[i].representative, reference[i].representative);
  }
}

TEST(TwoCopy, SwapCopiesIsAnInvolutionAndPreservesClassCount) {
  const auto raw = enumerate_two_copy_raw();
  std::vector<TwoCopyLocalWiring> swapped;
  swapped.reserve(raw.size());
  for (const auto& w : raw) {
    EXPECT_EQ(swap_copies(swap_copies(w)), w);
    swapped.push_back(swap_copies(w));
  }
  EXPECT_EQ(canonicalize_two_copy(swapped).size(), 6724u);
}

TEST(TwoCopy, FingerprintEquivalenceImpliesEqualChildren) {
  std::mt19937_64 rng(17);
  const Box222 a = random_ns_box(rng), b = random_ns_box(rng);
  const NCopyBox parent = tensor(NCopyBox::from_box(a), NCopyBox::from_box(b));
  const auto raw = enumerate_two_copy_raw();
  std::map<std::uint32_t, std::uint16_t> first_seen;
  const auto bob = TwoCopyLocalWiring::from_index(12345);
  int compared = 0;
  for (const auto& w : raw) {
    auto [it, inserted] = first_seen.emplace(w.fingerprint(), w.index());
    if (inserted || (w.index() % 37) != 0) continue;
    const Box222 lhs = apply_two_copy(w, bob, parent);
    const Box222 rhs = apply_two_copy(TwoCopyLocalWiring::from_index(it->second), bob, parent);
    EXPECT_LT(max_diff(lhs, rhs), 1e-15);
    ++compared;
  }
  EXPECT_GT(compared, 100);
}

TEST(Stochastic, ValidationAndMixing) {
  StochasticWiring bad;
  bad.weights = {0.5, 0.6};
  bad.components = {SingleCopyWiring{}, SingleCopyWiring::from_index(1)};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad.weights = {1.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  const Box222 pr = make_vertex(VertexLabel::nonlocal(0, 0, 0));
  StochasticWiring half;
  half.weights = {0.5, 0.5};
  half.components = {SingleCopyWiring{}, SingleCopyWiring::from_index(1)};
  const Box222 expected = mix(pr, apply_single_copy(SingleCopyWiring::from_index(1), pr), 0.5);
  EXPECT_LT(max_diff(apply_stochastic(half, pr), expected), 1e-15);

  const NCopyBox parent = tensor(NCopyBox::from_box(pr), NCopyBox::from_box(pr));
  StochasticWiring two;
  two.weights = {1.0};
  const auto p = TwoCopyLocalWiring::pass_through();
  two.components = {TwoCopyWiring{p, p}};
  EXPECT_LT(max_diff(apply_stochastic(two, parent), pr), 1e-15);
}

}  // namespace
}  // namespace boxforge
