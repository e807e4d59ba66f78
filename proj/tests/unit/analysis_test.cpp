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

#include <cmath>
#include <numbers>

#include "boxforge/analysis.hpp"

namespace boxforge {
namespace {

TEST(Names, RoundTrip) {
  for (ClaimId c : {ClaimId::Prop1, ClaimId::Prop2, ClaimId::Theorem1, ClaimId::Theorem2, ClaimId::Lemma1,
                    ClaimId::AppendixA})
    EXPECT_EQ(parse_claim(to_string(c)), c);
  for (Verdict v : {Verdict::Supported, Verdict::Refuted, Verdict::Inconclusive})
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  EXPECT_THROW(parse_claim("nonsense"), std::invalid_argument);
}

TEST(Report, JsonRoundTrip) {
  VerificationReport r;
  r.claim = ClaimId::Lemma1;
  r.parameters = {{"trials", 3}, {"dims", {2, 3}}};
  r.verdict = Verdict::Supported;
  r.evidence = {{"max_error", 1.5e-16}};
  const auto j = r.to_json();
  EXPECT_EQ(j.at("schema"), "boxforge.report/1");
  EXPECT_EQ(VerificationReport::from_json(j), r);
}

TEST(RicochetVerifier, SupportedOnRandomOperators) {
  const auto r = verify_lemma1(20, {2, 3, 5}, 7);
  EXPECT_EQ(r.verdict, Verdict::Supported);
}

TEST(SingleCopyCountVerifier, CountsMatch) {
  const auto r = verify_appendix_a();
  EXPECT_EQ(r.verdict, Verdict::Supported);
  EXPECT_TRUE(r.evidence.at("nl000_fixers_match_reference").get<bool>());
  EXPECT_EQ(published_nl000_fixers().size(), 8u);
}

TEST(TiltedObstructionVerifier, SupportedOnGridAndRejectsEndpoints) {
  const auto r = verify_theorem2({0.1, std::numbers::pi / 8.0, 0.7}, 6);
  EXPECT_EQ(r.verdict, Verdict::Supported);
  EXPECT_THROW(verify_theorem2({std::numbers::pi / 4.0}, 3), std::domain_error);
  EXPECT_THROW(verify_theorem2({0.0}, 3), std::domain_error);
}

TEST(EntangledHardyVerifier, SmallBudgetIsInconclusiveNeverRefuted) {
  Prop1Options o;
  o.n_max = 1;
  o.restarts = 1;
  o.control_state = hardy_family_state(std::sqrt((3.0 - std::sqrt(5.0)) / 2.0));
  const auto r = verify_prop1(o);
  EXPECT_EQ(r.verdict, Verdict::Inconclusive);
}

TEST(EntangledHardyVerifier, SupportedForSingleCopy) {
  Prop1Options o;
  o.n_max = 1;
  o.restarts = kProp1MinRestarts;
  o.jobs = 4;
  o.control_state = hardy_family_state(std::sqrt((3.0 - std::sqrt(5.0)) / 2.0));
  const auto r = verify_prop1(o);
  EXPECT_EQ(r.verdict, Verdict::Supported);
}

TEST(EntangledHardyVerifier, RejectsBadOptions) {
  Prop1Options o;
  o.n_max = 0;
  EXPECT_THROW(verify_prop1(o), std::invalid_argument);
  o.n_max = 1;
  o.restarts = 0;
  EXPECT_THROW(verify_prop1(o), std::invalid_argument);
}

TEST(SupportChain, HoldsOnMaximallyEntangledRealizations) {
  const auto r = seesaw_hardy(PureState::maximally_entangled(2), 5, 9);
  ASSERT_TRUE(r.realization);
  const SupportChain chain = support_chain(*r.realization);
  EXPECT_GE(chain.q_bound + 1e-12, r.stats.q);
  const SupportChain tsirelson = support_chain(tsirelson_realization());
  EXPECT_GE(tsirelson.q_bound + 1e-12, hardy_stats(realize_box(tsirelson_realization())).q);
}

TEST(HardyStateObstructionVerifier, SupportedWithSuppliedOptimum) {
  const double a = std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);
  const QuantumRealization realization = hardy_closed_form_realization(a);
  const HardyStats stats = hardy_stats(realize_box(realization));
  const HardyOptimum opt{realization, a, stats.q, stats};
  const auto r = verify_prop2(10, 0, 1, 1, opt);
  EXPECT_EQ(r.verdict, Verdict::Supported);
}

TEST(CombinedVerifier, CombinesVerdicts) {
  VerificationReport yes, no;
  yes.verdict = Verdict::Supported;
  no.verdict = Verdict::Inconclusive;
  yes.claim = no.claim = ClaimId::Prop1;
  VerificationReport p2 = yes;
  p2.claim = ClaimId::Prop2;
  EXPECT_EQ(verify_theorem1(yes, p2).verdict, Verdict::Supported);
  EXPECT_EQ(verify_theorem1(no, p2).verdict, Verdict::Inconclusive);
}

}  // namespace
}  // namespace boxforge
