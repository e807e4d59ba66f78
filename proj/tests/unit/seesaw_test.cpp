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

#include "boxforge/quantum.hpp"

namespace boxforge {
namespace {

const double kHardyA = std::sqrt((3.0 - std::sqrt(5.0)) / 2.0);

TEST(SeesawHardy, ReachesMaximumOnOptimalState) {
  const auto r = seesaw_hardy(hardy_family_state(kHardyA), 10, 1);
  ASSERT_TRUE(r.feasible);
  EXPECT_NEAR(r.best_q, kHardyMaximum, 1e-9);
  const HardyStats s = hardy_stats(realize_box(*r.realization));
  EXPECT_LE(s.max_zero(), kTolZero);
  EXPECT_NEAR(s.q, r.best_q, 1e-12);
}

TEST(SeesawHardy, PenalizedObjectiveNeverDecreases) {
  SeesawOptions opt;
  opt.record_trace = true;
  opt.polish = false;
  opt.max_iterations = 500;
  const auto r = seesaw_hardy(hardy_family_state(0.5), 4, 7, opt);
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_GE(r.trace[i], r.trace[i - 1] - 1e-12) << i;
}

TEST(SeesawHardy, MaximallyEntangledStatesGiveNoHardyProbability) {
  for (std::size_t d : {2u, 4u}) {
    const auto r = seesaw_hardy(PureState::maximally_entangled(d), 20, 3);
    ASSERT_TRUE(r.feasible) << d;
    EXPECT_LE(r.best_q, 1e-9) << d;
  }
}

TEST(SeesawHardy, ProductStateGivesNoHardyProbability) {
  const auto r = seesaw_hardy(PureState::normalized(2, 2, CVector{1.0, 0.0, 0.0, 0.0}), 10, 3);
  EXPECT_LE(r.best_q, 1e-9);
}

TEST(SeesawHardy, DeterministicAndIndependentOfJobs) {
  const PureState state = hardy_family_state(0.45);
  const auto a = seesaw_hardy(state, 8, 42);
  SeesawOptions opt;
  opt.jobs = 3;
  const auto b = seesaw_hardy(state, 8, 42, opt);
  EXPECT_EQ(a.best_q, b.best_q);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(realize_box(*a.realization), realize_box(*b.realization));
}

TEST(SeesawHardy, RejectsBadArguments) {
  EXPECT_THROW(seesaw_hardy(PureState::maximally_entangled(2), 0, 1), std::invalid_argument);
  EXPECT_THROW(seesaw_hardy(PureState::normalized(1, 2, CVector{1.0, 0.0}), 1, 1), std::invalid_argument);
}

TEST(SeesawHardy, HigherDimensionalNonMaximalState) {
  // A two-qubit Hardy state embedded in qutrits still reaches its qubit value.
  CVector amps(9);
  const double b = std::sqrt(1.0 - 2.0 * kHardyA * kHardyA);
  amps[0 * 3 + 1] = kHardyA;
  amps[1 * 3 + 0] = kHardyA;
  amps[1 * 3 + 1] = b;
  const auto r = seesaw_hardy(PureState::normalized(3, 3, amps), 40, 5);
  ASSERT_TRUE(r.feasible);
  EXPECT_GT(r.best_q, 0.05);
  EXPECT_LE(r.best_q, kHardyMaximum + 1e-9);
}

TEST(HardyOptimum, GoldenSectionFindsOptimalFamilyMember) {
  const HardyOptimum opt = hardy_optimal_realization(20, 0);
  EXPECT_NEAR(opt.q, kHardyMaximum, 1e-6);
  EXPECT_NEAR(opt.a, (std::sqrt(5.0) - 1.0) / 2.0, 1e-3);
  EXPECT_LE(opt.stats.max_zero(), kTolZero);
  EXPECT_NEAR(schmidt(opt.realization.state).s(), reduced_spectrum(hardy_family_state(kHardyA))[0], 1e-4);
}

}  // namespace
}  // namespace boxforge
