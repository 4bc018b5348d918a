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

#include <cstdint>
#include <map>
#include <utility>

#include "qghz/ghz_catalog.hpp"
#include "qghz/qudit_state.hpp"

namespace qghz {

/// Readout statistics of the full protocol computed on an explicit
/// d^(2n) amplitude array.
struct OracleResult {
  std::map<Levels, double> oam;
  std::map<Levels, double> spatial;
  /// Keyed by (OAM levels, spatial levels).
  std::map<std::pair<Levels, Levels>, double> joint;
};

/// Naive reference simulation used to cross-check the sparse pipeline.
///
/// Everything is recomputed from scratch: the initial amplitudes straight
/// from the GHZ formula, each path-control gate as a d^2 x d^2 permutation
/// matrix on (spatial_i, oam_i), each QFT as a d x d matrix built with
/// std::exp, and every probability by direct summation over all basis
/// states. None of the StateVector/gates machinery is used.
///
/// Throws ResourceError when d^(2n) exceeds `dense_cap`.
OracleResult brute_force_oracle(const SystemShape& shape, const GhzLabel& label,
                                std::uint64_t dense_cap = kDefaultDenseCap);

}  // namespace qghz
