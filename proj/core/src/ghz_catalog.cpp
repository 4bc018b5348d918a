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

#include "qghz/ghz_catalog.hpp"

#include <cmath>

#include "qghz/gates.hpp"

namespace qghz {

void validate_label(const SystemShape& shape, const GhzLabel& label) {
  const int d = shape.dim();
  if (label.parity.size() != static_cast<std::size_t>(shape.photons() - 1)) {
    throw InputError("label needs " + std::to_string(shape.photons() - 1) +
                     " parity entries, got " + std::to_string(label.parity.size()));
  }
  for (Level x : label.parity) {
    if (x < 0 || x >= d) {
      throw InputError("parity entry " + std::to_string(x) + " outside [0, " + std::to_string(d) +
                       ")");
    }
  }
  if (label.phase < 0 || label.phase >= d) {
    throw InputError("phase index " + std::to_string(label.phase) + " outside [0, " +
                     std::to_string(d) + ")");
  }
}

std::string to_string(const GhzLabel& label) {
  std::string out;
  for (std::size_t i = 0; i < label.parity.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(label.parity[i]);
  }
  out += ':';
  out += std::to_string(label.phase);
  return out;
}

std::vector<Levels> ghz_support(const SystemShape& shape, const Levels& parity) {
  const int d = shape.dim();
  std::vector<Levels> support;
  support.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    Levels tuple{j};
    for (Level x : parity) tuple.push_back((j + x) % d);
    support.push_back(std::move(tuple));
  }
  return support;
}

RegisterState ghz_register(const SystemShape& shape, const GhzLabel& label) {
  validate_label(shape, label);
  const int d = shape.dim();
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  SparseEntries entries;
  const auto support = ghz_support(shape, label.parity);
  for (int j = 0; j < d; ++j) {
    entries.emplace_back(shape.register_index(support[static_cast<std::size_t>(j)]),
                         amp * root_of_unity(static_cast<long long>(j) * label.phase, d));
  }
  return RegisterState(shape, std::move(entries));
}

RegisterState oam_auxiliary_register(const SystemShape& shape) {
  return ghz_register(shape, GhzLabel{Levels(static_cast<std::size_t>(shape.photons() - 1), 0), 0});
}

RegisterState all_zero_register(const SystemShape& shape) {
  return RegisterState(shape, {{0, Amplitude{1.0, 0.0}}});
}

StateVector ghz_spatial(const SystemShape& shape, const GhzLabel& label) {
  return tensor(ghz_register(shape, label), all_zero_register(shape));
}

StateVector oam_auxiliary(const SystemShape& shape) {
  return tensor(all_zero_register(shape), oam_auxiliary_register(shape));
}

StateVector hyper_initial(const SystemShape& shape, const GhzLabel& label) {
  return tensor(ghz_register(shape, label), oam_auxiliary_register(shape));
}

std::vector<Levels> all_parities(const SystemShape& shape) {
  const int d = shape.dim();
  const auto width = static_cast<std::size_t>(shape.photons() - 1);
  std::vector<Levels> out;
  Levels current(width, 0);
  while (true) {
    out.push_back(current);
    std::size_t pos = width;
    while (pos > 0) {
      --pos;
      if (++current[pos] < d) break;
      current[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

std::vector<GhzLabel> all_labels(const SystemShape& shape, std::uint64_t cap) {
  if (shape.register_size() > cap) {
    throw ResourceError("d^n = " + std::to_string(shape.register_size()) +
                        " labels exceeds the enumeration cap " + std::to_string(cap));
  }
  std::vector<GhzLabel> labels;
  labels.reserve(shape.register_size());
  for (auto& parity : all_parities(shape)) {
    for (Level k = 0; k < shape.dim(); ++k) labels.push_back(GhzLabel{parity, k});
  }
  return labels;
}

}  // namespace qghz
