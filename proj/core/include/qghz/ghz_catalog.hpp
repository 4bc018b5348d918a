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
#include <string>
#include <vector>

#include "qghz/qudit_state.hpp"

namespace qghz {

/// Names one GHZ state: parity offsets x_1..x_{n-1} of photons 2..n relative
/// to photon 1, and the relative-phase index k.
struct GhzLabel {
  Levels parity;
  Level phase = 0;

  friend auto operator<=>(const GhzLabel&, const GhzLabel&) = default;
  friend bool operator==(const GhzLabel&, const GhzLabel&) = default;
};

void validate_label(const SystemShape& shape, const GhzLabel& label);

/// "x1,x2,...:k"
std::string to_string(const GhzLabel& label);

/// Basis tuples (j, j+x_1, ..., j+x_{n-1}) mod d for j = 0..d-1.
std::vector<Levels> ghz_support(const SystemShape& shape, const Levels& parity);

/// (1/sqrt d) sum_j exp(2 pi i j k / d) |j, j+x_1, ..., j+x_{n-1}> on one register.
RegisterState ghz_register(const SystemShape& shape, const GhzLabel& label);
/// (1/sqrt d) sum_j |j, j, ..., j> on one register.
RegisterState oam_auxiliary_register(const SystemShape& shape);
RegisterState all_zero_register(const SystemShape& shape);

/// GHZ state in the spatial register; OAM register held at |0...0>.
StateVector ghz_spatial(const SystemShape& shape, const GhzLabel& label);
/// Auxiliary OAM GHZ state; spatial register held at |0...0>.
StateVector oam_auxiliary(const SystemShape& shape);
/// ghz(label) in the spatial register (x) the auxiliary OAM GHZ state.
StateVector hyper_initial(const SystemShape& shape, const GhzLabel& label);

/// All d^n labels ordered by parity (lexicographic), then phase.
std::vector<GhzLabel> all_labels(const SystemShape& shape,
                                 std::uint64_t cap = kDefaultEnumerationCap);
/// All d^(n-1) parity tuples in lexicographic order.
std::vector<Levels> all_parities(const SystemShape& shape);

}  // namespace qghz
