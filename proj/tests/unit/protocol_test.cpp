// Copyright 2026 The qghz Authors
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

#include "qghz/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qghz/gates.hpp"
#include "qghz/ghz_catalog.hpp"
#include "test_oracles.hpp"

namespace qghz {
namespace {

StateVector after_parity(const SystemShape& shape, const GhzLabel& label) {
  return parity_stage(hyper_initial(shape, label));
}

TEST(MeasureRegister, ParityClassZeroOneOam) {
  const SystemShape shape(3, 3);
  const auto dist = measure_register(after_parity(shape, GhzLabel{{0, 1}, 2}), Register::oam);
  ASSERT_EQ(dist.size(), 3u);
  for (const Levels& o : {Levels{0, 0, 1}, Levels{1, 1, 2}, Levels{2, 2, 0}}) {
    EXPECT_NEAR(dist.probability(o), 1.0 / 3.0, 1e-12);
  }
  EXPECT_NEAR(dist.total(), 1.0, 1e-12);
}

TEST(MeasureRegister, BasisStateIsDeterministic) {
  const SystemShape shape(3, 2);
  const auto s = basis_state(shape, Levels{2, 1}, Levels{0, 2});
  for (Register r : {Register::spatial, Register::oam}) {
    const auto dist = measure_register(s, r);
    ASSERT_EQ(dist.size(), 1u);
    EXPECT_EQ(dist.probabilities().begin()->second, 1.0);
  }
  EXPECT_EQ(measure_register(s, Register::spatial).probabilities().begin()->first, (Levels{2, 1}));
  EXPECT_EQ(measure_register(s, Register::oam).probabilities().begin()->first, (Levels{0, 2}));
}

TEST(MeasureRegister, PostQftGhzSpatial) {
  const SystemShape shape(3, 3);
  const auto s = apply_qft_spatial_all(ghz_spatial(shape, GhzLabel{{0, 0}, 0}));
  const auto dist = measure_register(s, Register::spatial);
  ASSERT_EQ(dist.size(), 9u);
  for (const auto& [levels, p] : dist.probabilities()) EXPECT_NEAR(p, 1.0 / 9.0, 1e-12);
}

TEST(MeasureRegister, CollapseRenormalizes) {
  const SystemShape shape(3, 3);
  const GhzLabel label{{1, 2}, 1};
  const auto dist = measure_register(after_parity(shape, label), Register::oam);
  const auto collapsed = dist.collapsed(Levels{1, 2, 0});
  EXPECT_NEAR(collapsed.norm_squared(), 1.0, 1e-12);
  // The spatial register is untouched by the OAM projection.
  const auto factors = factor_across_registers(collapsed);
  ASSERT_TRUE(factors.has_value());
  EXPECT_GE(fidelity(factors->spatial, ghz_register(shape, label)), 1.0 - 1e-12);
  EXPECT_THROW(dist.collapsed(Levels{0, 0, 0}), InputError);
}

TEST(SampleRegister, DeterministicStateRepeats) {
  const SystemShape shape(3, 3);
  const auto s = basis_state(shape, Levels{1, 1, 0}, Levels{2, 0, 1});
  const auto shots = sample_register(s, Register::oam, 100, 42);
  ASSERT_EQ(shots.size(), 100u);
  for (const auto& o : shots) {
    EXPECT_EQ(o.reg, Register::oam);
    EXPECT_EQ(o.levels, (Levels{2, 0, 1}));
  }
}

TEST(SampleRegister, FrequenciesWithinFiveSigma) {
  const SystemShape shape(3, 3);
  const auto s = after_parity(shape, GhzLabel{{0, 1}, 0});
  const auto shots = sample_register(s, Register::oam, 9000, 2024);
  std::map<Levels, int> counts;
  for (const auto& o : shots) ++counts[o.levels];
  ASSERT_EQ(counts.size(), 3u);
  const double sigma = std::sqrt(9000.0 * (1.0 / 3.0) * (2.0 / 3.0));
  for (const Levels& o : {Levels{0, 0, 1}, Levels{1, 1, 2}, Levels{2, 2, 0}}) {
    EXPECT_LE(std::abs(counts[o] - 3000.0), 5.0 * sigma) << counts[o];
  }
}

TEST(SampleRegister, SameSeedSameSequence) {
  const SystemShape shape(3, 3);
  const auto s = apply_qft_spatial_all(ghz_spatial(shape, GhzLabel{{2, 1}, 1}));
  EXPECT_EQ(sample_register(s, Register::spatial, 500, 7),
            sample_register(s, Register::spatial, 500, 7));
  EXPECT_NE(sample_register(s, Register::spatial, 500, 7),
            sample_register(s, Register::spatial, 500, 8));
  EXPECT_THROW(sample_register(s, Register::spatial, 0, 7), InputError);
}

TEST(DecodeParity, TableRows) {
  EXPECT_EQ(decode_parity(Outcome{Register::oam, {0, 0, 1}}, 3), (Levels{0, 1}));
  EXPECT_EQ(decode_parity(Outcome{Register::oam, {2, 0, 2}}, 3), (Levels{1, 0}));
  for (int d : {2, 3, 7}) {
    for (int j = 0; j < d; ++j) {
      EXPECT_EQ(decode_parity(Outcome{Register::oam, {j, j, j, j}}, d), (Levels{0, 0, 0}));
    }
  }
}

TEST(DecodePhase, TableRows) {
  EXPECT_EQ(decode_phase(Outcome{Register::spatial, {0, 1, 2}}, 3), 0);
  EXPECT_EQ(decode_phase(Outcome{Register::spatial, {0, 0, 2}}, 3), 1);
  EXPECT_EQ(decode_phase(Outcome{Register::spatial, {1, 2, 3}}, 4), 2);
}

// Every d = 4, n = 3 readout with level sum = 2 (mod 4) only ever appears
// for k = 2 states, by direct evaluation of the post-QFT amplitudes.
TEST(DecodePhase, FourDimensionalOracle) {
  std::map<testing::Tuple, std::set<int>> phases_by_readout;
  for (const auto& x : testing::all_tuples(4, 2)) {
    for (int k = 0; k < 4; ++k) {
      for (const auto& [y, p] : testing::post_qft_support(4, 3, x, k)) phases_by_readout[y].insert(k);
    }
  }
  ASSERT_TRUE(phases_by_readout.count({1, 2, 3}));
  EXPECT_EQ(phases_by_readout.at({1, 2, 3}), (std::set<int>{2}));
  for (const auto& [y, phases] : phases_by_readout) {
    ASSERT_EQ(phases.size(), 1u);
    EXPECT_EQ(decode_phase(Outcome{Register::spatial, y}, 4), *phases.begin());
  }
}

TEST(Decode, WrongRegisterOrLevels) {
  EXPECT_THROW(decode_parity(Outcome{Register::spatial, {0, 0, 1}}, 3), InputError);
  EXPECT_THROW(decode_phase(Outcome{Register::oam, {0, 0, 1}}, 3), InputError);
  EXPECT_THROW(decode_phase(Outcome{Register::spatial, {0, 0, 3}}, 3), InputError);
  EXPECT_THROW(decode_label(Outcome{Register::oam, {0, 0}}, Outcome{Register::spatial, {0, 0, 0}}, 3),
               InputError);
}

TEST(RunProtocol, ExhaustiveThreeByThree) {
  const SystemShape shape(3, 3);
  const GhzLabel label{{1, 2}, 0};
  const auto records = run_protocol(shape, label, Exhaustive{});
  ASSERT_EQ(records.size(), 27u);
  std::set<Levels> oam;
  std::set<Levels> spatial;
  double total = 0.0;
  for (const auto& r : records) {
    EXPECT_EQ(r.record.decoded, label);
    EXPECT_NEAR(r.probability, 1.0 / 27.0, 1e-12);
    oam.insert(r.record.oam.levels);
    spatial.insert(r.record.spatial.levels);
    total += r.probability;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(oam, (std::set<Levels>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
  EXPECT_EQ(spatial.size(), 9u);
}

// The Bell basis, by brute force over the 16 readout pairs of each state.
TEST(RunProtocol, BellDiscrimination) {
  const SystemShape shape(2, 2);
  for (const auto& label : all_labels(shape)) {
    const auto records = run_exhaustive(shape, label);
    const auto spatial = testing::post_qft_support(2, 2, label.parity, label.phase);
    EXPECT_EQ(records.size(), 2u * spatial.size());
    for (const auto& r : records) {
      EXPECT_EQ(r.record.decoded, label);
      EXPECT_TRUE(spatial.count(r.record.spatial.levels));
      EXPECT_EQ((r.record.oam.levels[1] - r.record.oam.levels[0] + 2) % 2, label.parity[0]);
    }
  }
  const auto singlet = run_exhaustive(shape, GhzLabel{{1}, 1});
  for (const auto& r : singlet) EXPECT_EQ(r.record.decoded, (GhzLabel{{1}, 1}));
}

TEST(RunProtocol, SampledIsDeterministicAndCorrect) {
  const SystemShape shape(3, 3);
  for (const auto& label : all_labels(shape)) {
    const auto a = run_protocol(shape, label, Sampled{11});
    const auto b = run_protocol(shape, label, Sampled{11});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].record, b[0].record);
    EXPECT_EQ(a[0].record.decoded, label);
    EXPECT_NEAR(a[0].probability, 1.0 / 27.0, 1e-12);
  }
}

TEST(RunProtocol, InvalidLabelAndCaps) {
  const SystemShape shape(3, 3);
  EXPECT_THROW(run_protocol(shape, GhzLabel{{0, 3}, 0}, Exhaustive{}), InputError);
  EXPECT_THROW(run_protocol(shape, GhzLabel{{0, 0}, 3}, Sampled{1}), InputError);
  Limits tight;
  tight.label_enumeration = 10;
  EXPECT_THROW(run_exhaustive(shape, GhzLabel{{0, 0}, 0}, tight), ResourceError);
}

TEST(RunSampled, ShotSequence) {
  const SystemShape shape(4, 3);
  const GhzLabel label{{3, 1}, 2};
  const auto a = run_sampled(shape, label, 200, 5);
  EXPECT_EQ(a, run_sampled(shape, label, 200, 5));
  for (const auto& r : a) EXPECT_EQ(r.decoded, label);
  EXPECT_THROW(run_sampled(shape, label, 0, 5), InputError);
}

TEST(StageOrder, IndependentAtThreeByThree) {
  const SystemShape shape(3, 3);
  for (const auto& label : all_labels(shape)) {
    const auto s = after_parity(shape, label);
    const auto a = joint_distribution(s, StageOrder::oam_then_qft);
    const auto b = joint_distribution(s, StageOrder::qft_then_oam);
    ASSERT_EQ(a.size(), b.size());
    for (const auto& [key, p] : a) {
      ASSERT_TRUE(b.count(key));
      EXPECT_NEAR(p, b.at(key), 1e-12);
    }
    const auto records = run_exhaustive(shape, label);
    ASSERT_EQ(records.size(), a.size());
    for (const auto& r : records) {
      EXPECT_NEAR(r.probability, a.at({r.record.oam.levels, r.record.spatial.levels}), 1e-12);
    }
  }
}

TEST(PhaseImmunity, GlobalPhaseLeavesDistributionsUnchanged) {
  const SystemShape shape(3, 3);
  const GhzLabel label{{2, 0}, 1};
  const auto s = after_parity(shape, label);
  for (double angle : {0.3, 1.9, -2.5}) {
    SparseEntries rotated = s.nonzeros();
    for (auto& e : rotated) e.second *= std::polar(1.0, angle);
    const auto t = StateVector::from_sparse(shape, rotated, Representation::sparse);
    for (StageOrder order : {StageOrder::oam_then_qft, StageOrder::qft_then_oam}) {
      const auto a = joint_distribution(s, order);
      const auto b = joint_distribution(t, order);
      ASSERT_EQ(a.size(), b.size());
      for (const auto& [key, p] : a) EXPECT_NEAR(p, b.at(key), 1e-15);
    }
  }
}

TEST(PhaseConstraint, SupportSatisfiesSumRule) {
  for (auto [d, n] : {std::pair{2, 2}, {3, 3}, {4, 3}, {5, 3}}) {
    const SystemShape shape(d, n);
    for (const auto& label : all_labels(shape)) {
      for (const auto& r : run_exhaustive(shape, label)) {
        int sum = label.phase;
        for (Level l : r.record.spatial.levels) sum += l;
        EXPECT_EQ(sum % d, 0);
      }
    }
  }
}

}  // namespace
}  // namespace qghz
