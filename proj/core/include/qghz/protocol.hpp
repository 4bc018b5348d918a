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

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "qghz/ghz_catalog.hpp"
#include "qghz/qudit_state.hpp"

namespace qghz {

struct Outcome {
  Register reg = Register::spatial;
  Levels levels;

  friend auto operator<=>(const Outcome&, const Outcome&) = default;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Born-rule distribution of one register's readout. Outcomes below
/// kSupportThreshold are dropped.
class OutcomeDistribution {
 public:
  OutcomeDistribution(StateVector source, Register reg, std::map<Levels, double> probabilities);

  Register measured_register() const { return reg_; }
  const std::map<Levels, double>& probabilities() const { return probabilities_; }
  std::size_t size() const { return probabilities_.size(); }
  /// Zero for outcomes outside the support.
  double probability(const Levels& levels) const;
  double total() const;

  /// Renormalized projection of the measured state onto `levels`. Throws
  /// InputError when the outcome is outside the support.
  StateVector collapsed(const Levels& levels) const;

 private:
  StateVector source_;
  Register reg_;
  std::map<Levels, double> probabilities_;
};

OutcomeDistribution measure_register(const StateVector& s, Register reg);
/// Readout distribution of a standalone register state.
std::map<Levels, double> register_probabilities(const RegisterState& s);

/// mt19937_64 plus a portable 53-bit uniform draw, so sample sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();

 private:
  std::mt19937_64 engine_;
};

/// Draws from a finite distribution by inverse CDF over ascending outcomes.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::map<Levels, double>& probabilities);
  const Levels& draw(Rng& rng) const;
  double probability_of(std::size_t i) const { return weights_[i]; }

 private:
  std::vector<Levels> outcomes_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
};

std::vector<Outcome> sample_register(const StateVector& s, Register reg, std::size_t shots,
                                     std::uint64_t seed);

/// x_m = o_{m+1} - o_1 mod d.
Levels decode_parity(const Outcome& oam_outcome, int dim);
/// k = -(sum of levels) mod d.
Level decode_phase(const Outcome& spatial_outcome, int dim);
GhzLabel decode_label(const Outcome& oam_outcome, const Outcome& spatial_outcome, int dim);

struct MeasurementRecord {
  Outcome oam;
  Outcome spatial;
  GhzLabel decoded;

  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

struct WeightedRecord {
  MeasurementRecord record;
  double probability = 0.0;
};

/// Joint distribution keyed by (OAM levels, spatial levels).
using JointDistribution = std::map<std::pair<Levels, Levels>, double>;

enum class StageOrder {
  /// Read OAM, collapse, apply the spatial QFT, read spatial.
  oam_then_qft,
  /// Apply the spatial QFT to the whole state, then read both registers.
  qft_then_oam,
};

/// Path control on every photon.
StateVector parity_stage(const StateVector& s);
/// QFT on every spatial qudit.
StateVector phase_stage(const StateVector& s);

/// Exact joint readout distribution of a post-parity-stage state.
JointDistribution joint_distribution(const StateVector& after_parity, StageOrder order);

struct Exhaustive {};
struct Sampled {
  std::uint64_t seed = 0;
};
using RunMode = std::variant<Exhaustive, Sampled>;

/// Every (OAM, spatial) readout with nonzero probability, computed from the
/// register factorization of the post-parity state, ascending by outcomes.
std::vector<WeightedRecord> run_exhaustive(const SystemShape& shape, const GhzLabel& label,
                                           const Limits& limits = {});

/// Sequential shot simulation: OAM readout, collapse, QFT, spatial readout.
class ShotSampler {
 public:
  ShotSampler(const SystemShape& shape, const GhzLabel& label);

  /// One shot; the record's probability is that of the drawn outcome pair.
  WeightedRecord shot(Rng& rng);
  const SystemShape& shape() const { return shape_; }

 private:
  struct Branch {
    DiscreteSampler spatial;
    std::map<Levels, double> probabilities;
  };

  SystemShape shape_;
  StateVector after_parity_;
  OutcomeDistribution oam_;
  DiscreteSampler oam_sampler_;
  // Branch states are deterministic given the OAM outcome, so each one is
  // built once and reused.
  std::map<Levels, Branch> branches_;
};

std::vector<MeasurementRecord> run_sampled(const SystemShape& shape, const GhzLabel& label,
                                           std::size_t shots, std::uint64_t seed);

/// Exhaustive mode returns the full record set; sampled mode one record.
std::vector<WeightedRecord> run_protocol(const SystemShape& shape, const GhzLabel& label,
                                         const RunMode& mode, const Limits& limits = {});

}  // namespace qghz
