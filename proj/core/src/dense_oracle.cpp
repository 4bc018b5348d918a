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

#include "qghz/dense_oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace qghz {

namespace {

using cplx = std::complex<double>;

// Little helper world with its own digit layout: position 0..n-1 are the
// spatial qudits of photons 1..n, positions n..2n-1 the OAM qudits. Digit 0
// is the most significant.
struct Layout {
  int d;
  int n;
  std::size_t size;

  std::vector<int> digits(std::size_t index) const {
    std::vector<int> out(static_cast<std::size_t>(2 * n));
    for (int pos = 2 * n - 1; pos >= 0; --pos) {
      out[static_cast<std::size_t>(pos)] = static_cast<int>(index % static_cast<std::size_t>(d));
      index /= static_cast<std::size_t>(d);
    }
    return out;
  }

  std::size_t index(const std::vector<int>& digits) const {
    std::size_t out = 0;
    for (int v : digits) out = out * static_cast<std::size_t>(d) + static_cast<std::size_t>(v);
    return out;
  }
};

// Generic gate on an arbitrary set of digit positions: out[i] = sum_a
// G[row(i), a] * in[i with those digits replaced by a].
std::vector<cplx> apply_gate(const Layout& layout, const std::vector<cplx>& in,
                             const std::vector<std::vector<cplx>>& gate,
                             const std::vector<int>& positions) {
  const std::size_t local_dim = gate.size();
  std::vector<cplx> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    std::vector<int> dig = layout.digits(i);
    std::size_t row = 0;
    for (int pos : positions) {
      row = row * static_cast<std::size_t>(layout.d) + static_cast<std::size_t>(dig[static_cast<std::size_t>(pos)]);
    }
    cplx acc = 0.0;
    for (std::size_t col = 0; col < local_dim; ++col) {
      const cplx g = gate[row][col];
      if (g == cplx(0.0)) continue;
      std::size_t rem = col;
      for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
        dig[static_cast<std::size_t>(*it)] = static_cast<int>(rem % static_cast<std::size_t>(layout.d));
        rem /= static_cast<std::size_t>(layout.d);
      }
      acc += g * in[layout.index(dig)];
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace

OracleResult brute_force_oracle(const SystemShape& shape, const GhzLabel& label,
                                std::uint64_t dense_cap) {
  validate_label(shape, label);
  shape.require_dense(dense_cap);

  const int d = shape.dim();
  const int n = shape.photons();
  std::size_t size = 1;
  for (int i = 0; i < 2 * n; ++i) size *= static_cast<std::size_t>(d);
  const Layout layout{d, n, size};
  const double two_pi = 2.0 * std::numbers::pi;

  // Initial state: GHZ(label) on spatial digits, uniform GHZ on OAM digits.
  std::vector<cplx> psi(size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    const auto dig = layout.digits(i);
    const int j = dig[0];
    bool in_spatial = true;
    for (int m = 1; m < n; ++m) {
      if (dig[static_cast<std::size_t>(m)] != (j + label.parity[static_cast<std::size_t>(m - 1)]) % d) {
        in_spatial = false;
      }
    }
    bool in_oam = true;
    for (int m = 1; m < n; ++m) {
      if (dig[static_cast<std::size_t>(n + m)] != dig[static_cast<std::size_t>(n)]) in_oam = false;
    }
    if (in_spatial && in_oam) {
      psi[i] = std::exp(cplx(0.0, two_pi * j * label.phase / d)) / static_cast<double>(d);
    }
  }

  // Path control on photon p: permutation matrix on (spatial_p, oam_p).
  std::vector<std::vector<cplx>> controlled_shift(static_cast<std::size_t>(d * d),
                                                  std::vector<cplx>(static_cast<std::size_t>(d * d), 0.0));
  for (int s = 0; s < d; ++s) {
    for (int o = 0; o < d; ++o) {
      controlled_shift[static_cast<std::size_t>(s * d + (s + o) % d)][static_cast<std::size_t>(s * d + o)] = 1.0;
    }
  }
  for (int p = 0; p < n; ++p) psi = apply_gate(layout, psi, controlled_shift, {p, n + p});

  std::vector<std::vector<cplx>> fourier(static_cast<std::size_t>(d), std::vector<cplx>(static_cast<std::size_t>(d)));
  for (int j = 0; j < d; ++j) {
    for (int z = 0; z < d; ++z) {
      fourier[static_cast<std::size_t>(j)][static_cast<std::size_t>(z)] =
          std::exp(cplx(0.0, two_pi * z * j / d)) / std::sqrt(static_cast<double>(d));
    }
  }
  for (int p = 0; p < n; ++p) psi = apply_gate(layout, psi, fourier, {p});

  std::map<std::pair<Levels, Levels>, double> joint;
  for (std::size_t i = 0; i < size; ++i) {
    const double prob = std::norm(psi[i]);
    if (prob == 0.0) continue;
    const auto dig = layout.digits(i);
    Levels spatial(dig.begin(), dig.begin() + n);
    Levels oam(dig.begin() + n, dig.end());
    joint[{std::move(oam), std::move(spatial)}] += prob;
  }

  OracleResult result;
  std::map<Levels, double> oam_marginal;
  std::map<Levels, double> spatial_marginal;
  for (const auto& [key, prob] : joint) {
    oam_marginal[key.first] += prob;
    spatial_marginal[key.second] += prob;
  }
  for (const auto& [key, prob] : joint) {
    if (prob > kSupportThreshold) result.joint.emplace(key, prob);
  }
  for (const auto& [key, prob] : oam_marginal) {
    if (prob > kSupportThreshold) result.oam.emplace(key, prob);
  }
  for (const auto& [key, prob] : spatial_marginal) {
    if (prob > kSupportThreshold) result.spatial.emplace(key, prob);
  }
  return result;
}

}  // namespace qghz
