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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qghz/gates.hpp"

namespace qghz {

namespace {

void require_register(const Outcome& outcome, Register expected) {
  if (outcome.reg != expected) {
    throw InputError(std::string("expected a ") + to_string(expected) + " outcome, got " +
                     to_string(outcome.reg));
  }
}

void require_levels(const Outcome& outcome, int dim) {
  if (outcome.levels.empty()) throw InputError("outcome has no levels");
  for (Level l : outcome.levels) {
    if (l < 0 || l >= dim) {
      throw InputError("outcome level " + std::to_string(l) + " outside [0, " +
                       std::to_string(dim) + ")");
    }
  }
}

std::map<Levels, double> drop_unsupported(std::map<BasisIndex, double> by_index,
                                          const SystemShape& shape) {
  std::map<Levels, double> out;
  for (const auto& [index, p] : by_index) {
    if (p >= kSupportThreshold) out.emplace(shape.register_levels(index), p);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Measurement

OutcomeDistribution::OutcomeDistribution(StateVector source, Register reg,
                                         std::map<Levels, double> probabilities)
    : source_(std::move(source)), reg_(reg), probabilities_(std::move(probabilities)) {}

double OutcomeDistribution::probability(const Levels& levels) const {
  auto it = probabilities_.find(levels);
  return it == probabilities_.end() ? 0.0 : it->second;
}

double OutcomeDistribution::total() const {
  double sum = 0.0;
  for (const auto& e : probabilities_) sum += e.second;
  return sum;
}

StateVector OutcomeDistribution::collapsed(const Levels& levels) const {
  const double p = probability(levels);
  if (p <= 0.0) throw InputError("outcome is outside the support of the distribution");
  const SystemShape& shape = source_.shape();
  const BasisIndex target = shape.register_index(levels);
  const double scale = 1.0 / std::sqrt(p);
  SparseEntries kept;
  source_.for_each_nonzero([&](BasisIndex index, const Amplitude& a) {
    const BasisIndex part = reg_ == Register::spatial ? shape.spatial_part(index)
                                                      : shape.oam_part(index);
    if (part == target) kept.emplace_back(index, a * scale);
  });
  return StateVector::from_sparse(shape, std::move(kept), source_.representation());
}

OutcomeDistribution measure_register(const StateVector& s, Register reg) {
  const SystemShape& shape = s.shape();
  std::map<BasisIndex, double> by_index;
  s.for_each_nonzero([&](BasisIndex index, const Amplitude& a) {
    const BasisIndex part = reg == Register::spatial ? shape.spatial_part(index)
                                                     : shape.oam_part(index);
    by_index[part] += std::norm(a);
  });
  return OutcomeDistribution(s, reg, drop_unsupported(std::move(by_index), shape));
}

std::map<Levels, double> register_probabilities(const RegisterState& s) {
  std::map<BasisIndex, double> by_index;
  for (const auto& [index, a] : s.entries()) by_index[index] += std::norm(a);
  return drop_unsupported(std::move(by_index), s.shape());
}

// ---------------------------------------------------------------------------
// Sampling

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

DiscreteSampler::DiscreteSampler(const std::map<Levels, double>& probabilities) {
  if (probabilities.empty()) throw InputError("cannot sample from an empty distribution");
  double running = 0.0;
  for (const auto& [levels, p] : probabilities) {
    outcomes_.push_back(levels);
    weights_.push_back(p);
    running += p;
    cumulative_.push_back(running);
  }
  // Normalize so the last bucket always absorbs rounding.
  for (auto& c : cumulative_) c /= running;
  cumulative_.back() = 1.0;
}

const Levels& DiscreteSampler::draw(Rng& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return outcomes_[static_cast<std::size_t>(it - cumulative_.begin())];
}

std::vector<Outcome> sample_register(const StateVector& s, Register reg, std::size_t shots,
                                     std::uint64_t seed) {
  if (shots == 0) throw InputError("shots must be at least 1");
  const DiscreteSampler sampler(measure_register(s, reg).probabilities());
  Rng rng(seed);
  std::vector<Outcome> out;
  out.reserve(shots);
  for (std::size_t i = 0; i < shots; ++i) out.push_back(Outcome{reg, sampler.draw(rng)});
  return out;
}

// ---------------------------------------------------------------------------
// Decoding

Levels decode_parity(const Outcome& oam_outcome, int dim) {
  require_register(oam_outcome, Register::oam);
  require_levels(oam_outcome, dim);
  const auto& o = oam_outcome.levels;
  Levels parity;
  parity.reserve(o.size() - 1);
  for (std::size_t m = 1; m < o.size(); ++m) parity.push_back(((o[m] - o[0]) % dim + dim) % dim);
  return parity;
}

Level decode_phase(const Outcome& spatial_outcome, int dim) {
  require_register(spatial_outcome, Register::spatial);
  require_levels(spatial_outcome, dim);
  long long sum = 0;
  for (Level l : spatial_outcome.levels) sum += l;
  return static_cast<Level>((dim - sum % dim) % dim);
}

GhzLabel decode_label(const Outcome& oam_outcome, const Outcome& spatial_outcome, int dim) {
  if (oam_outcome.levels.size() != spatial_outcome.levels.size()) {
    throw InputError("OAM and spatial outcomes have different photon counts");
  }
  return GhzLabel{decode_parity(oam_outcome, dim), decode_phase(spatial_outcome, dim)};
}

// ---------------------------------------------------------------------------
// Pipeline

StateVector parity_stage(const StateVector& s) { return apply_path_control_all(s); }
StateVector phase_stage(const StateVector& s) { return apply_qft_spatial_all(s); }

JointDistribution joint_distribution(const StateVector& after_parity, StageOrder order) {
  const SystemShape& shape = after_parity.shape();
  JointDistribution joint;
  if (order == StageOrder::qft_then_oam) {
    std::map<BasisIndex, double> by_index;
    phase_stage(after_parity).for_each_nonzero(
        [&](BasisIndex index, const Amplitude& a) { by_index[index] += std::norm(a); });
    for (const auto& [index, p] : by_index) {
      if (p < kSupportThreshold) continue;
      joint.emplace(std::pair{shape.register_levels(shape.oam_part(index)),
                              shape.register_levels(shape.spatial_part(index))},
                    p);
    }
    return joint;
  }
  const auto oam = measure_register(after_parity, Register::oam);
  for (const auto& [oam_levels, p_oam] : oam.probabilities()) {
    const auto spatial = measure_register(phase_stage(oam.collapsed(oam_levels)), Register::spatial);
    for (const auto& [spatial_levels, p_spatial] : spatial.probabilities()) {
      const double p = p_oam * p_spatial;
      if (p >= kSupportThreshold) joint.emplace(std::pair{oam_levels, spatial_levels}, p);
    }
  }
  return joint;
}

std::vector<WeightedRecord> run_exhaustive(const SystemShape& shape, const GhzLabel& label,
                                           const Limits& limits) {
  validate_label(shape, label);
  // d OAM outcomes times d^(n-1) spatial outcomes.
  if (shape.register_size() > limits.label_enumeration) {
    throw ResourceError("exhaustive run needs " + std::to_string(shape.register_size()) +
                        " records, cap is " + std::to_string(limits.label_enumeration));
  }
  const StateVector after_parity = parity_stage(hyper_initial(shape, label));

  JointDistribution joint;
  if (auto factors = factor_across_registers(after_parity)) {
    const auto oam = register_probabilities(factors->oam);
    const auto spatial =
        register_probabilities(apply_to_every_qudit(factors->spatial, qft_matrix(shape.dim())));
    for (const auto& [o, po] : oam) {
      for (const auto& [s, ps] : spatial) {
        if (po * ps >= kSupportThreshold) joint.emplace(std::pair{o, s}, po * ps);
      }
    }
  } else {
    joint = joint_distribution(after_parity, StageOrder::oam_then_qft);
  }

  std::vector<WeightedRecord> records;
  records.reserve(joint.size());
  for (const auto& [key, p] : joint) {
    Outcome oam{Register::oam, key.first};
    Outcome spatial{Register::spatial, key.second};
    GhzLabel decoded = decode_label(oam, spatial, shape.dim());
    records.push_back(WeightedRecord{
        MeasurementRecord{std::move(oam), std::move(spatial), std::move(decoded)}, p});
  }
  return records;
}

ShotSampler::ShotSampler(const SystemShape& shape, const GhzLabel& label)
    : shape_(shape),
      after_parity_(parity_stage(hyper_initial(shape, label))),
      oam_(measure_register(after_parity_, Register::oam)),
      oam_sampler_(oam_.probabilities()) {}

WeightedRecord ShotSampler::shot(Rng& rng) {
  const Levels& oam_levels = oam_sampler_.draw(rng);
  auto it = branches_.find(oam_levels);
  if (it == branches_.end()) {
    auto spatial = measure_register(phase_stage(oam_.collapsed(oam_levels)), Register::spatial);
    auto probabilities = spatial.probabilities();
    it = branches_
             .emplace(oam_levels, Branch{DiscreteSampler(probabilities), std::move(probabilities)})
             .first;
  }
  const Levels& spatial_levels = it->second.spatial.draw(rng);
  Outcome oam{Register::oam, oam_levels};
  Outcome spatial{Register::spatial, spatial_levels};
  const double p = oam_.probability(oam_levels) * it->second.probabilities.at(spatial_levels);
  GhzLabel decoded = decode_label(oam, spatial, shape_.dim());
  return WeightedRecord{MeasurementRecord{std::move(oam), std::move(spatial), std::move(decoded)},
                        p};
}

std::vector<MeasurementRecord> run_sampled(const SystemShape& shape, const GhzLabel& label,
                                           std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw InputError("shots must be at least 1");
  ShotSampler sampler(shape, label);
  Rng rng(seed);
  std::vector<MeasurementRecord> out;
  out.reserve(shots);
  for (std::size_t i = 0; i < shots; ++i) out.push_back(sampler.shot(rng).record);
  return out;
}

std::vector<WeightedRecord> run_protocol(const SystemShape& shape, const GhzLabel& label,
                                         const RunMode& mode, const Limits& limits) {
  if (std::holds_alternative<Exhaustive>(mode)) return run_exhaustive(shape, label, limits);
  ShotSampler sampler(shape, label);
  Rng rng(std::get<Sampled>(mode).seed);
  return {sampler.shot(rng)};
}

}  // namespace qghz
