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

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qghz/dense_oracle.hpp"
#include "qghz/ghz_catalog.hpp"
#include "qghz/protocol.hpp"
#include "qghz/qudit_state.hpp"

namespace qghz {

/// Parity class -> OAM readouts that can occur for it.
struct ParityTable {
  SystemShape shape;
  std::map<Levels, std::set<Levels>> rows;
  /// Every phase index within a parity class produced the same row.
  bool consistent_across_phase = true;
  /// Worst |p - 1/d| over all readouts of all labels.
  double worst_probability_deviation = 0.0;
};

/// Phase index -> spatial readouts that can occur for it.
struct PhaseTable {
  SystemShape shape;
  std::map<Level, std::set<Levels>> rows;
  /// Every parity class within a phase index produced the same row.
  bool consistent_across_parity = true;
  /// Worst |p - d^-(n-1)| over all readouts of all labels.
  double worst_probability_deviation = 0.0;
};

ParityTable parity_table(const SystemShape& shape, const Limits& limits = {});
PhaseTable phase_table(const SystemShape& shape, const Limits& limits = {});

/// d = 3, n = 3 instances of the two tables above.
ParityTable reproduce_table1();
PhaseTable reproduce_table2();

struct CheckResult {
  std::string name;
  bool passed = true;
  bool skipped = false;
  double worst_deviation = 0.0;
  double tolerance = 0.0;
  double runtime_ms = 0.0;
  std::string detail;
};

struct LabelSummary {
  GhzLabel label;
  std::size_t oam_outcomes = 0;
  std::size_t spatial_outcomes = 0;
  std::size_t outcome_pairs = 0;
  std::size_t confusions = 0;
};

struct VerificationReport {
  SystemShape shape;
  std::vector<CheckResult> checks;
  std::vector<LabelSummary> labels;
  ParityTable parity;
  PhaseTable phase;
  bool dense_checks_skipped = false;

  /// True iff no check failed; skipped checks do not count as failures.
  bool passed() const;
  std::size_t labels_distinguished() const;
  const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
  Limits limits;
  /// Worker threads for label-level checks; 0 means hardware concurrency.
  unsigned jobs = 1;
};

/// Runs every invariant of the protocol for one shape: orthonormality,
/// factorization before and after the parity stage, spatial invariance,
/// the phase-readout constraint, completeness, outcome uniformity,
/// stage-order independence and (when a dense array fits the cap)
/// agreement with the brute-force oracle. Reports are deterministic apart
/// from runtime fields.
VerificationReport verify_shape(const SystemShape& shape, const VerifyOptions& options = {});

}  // namespace qghz
