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

#include "qghz/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

namespace qghz {

namespace {

Level digit_at(BasisIndex register_index, BasisIndex stride, int dim) {
  return static_cast<Level>((register_index / stride) % static_cast<BasisIndex>(dim));
}

// Stride of (reg, photon) inside a full basis index.
BasisIndex full_stride(const SystemShape& shape, Register reg, int photon) {
  const BasisIndex s = shape.stride(photon);
  return reg == Register::spatial ? s * shape.register_size() : s;
}

StateVector apply_dense(const StateVector& s, BasisIndex stride, const QuditMatrix& op) {
  const auto in = s.dense_amplitudes();
  const auto d = static_cast<BasisIndex>(op.dim());
  std::vector<Amplitude> out(in.size());
  std::vector<Amplitude> column(d);
  const BasisIndex block = stride * d;
  for (BasisIndex hi = 0; hi < in.size(); hi += block) {
    for (BasisIndex lo = 0; lo < stride; ++lo) {
      const BasisIndex base = hi + lo;
      for (BasisIndex z = 0; z < d; ++z) column[z] = in[base + z * stride];
      for (BasisIndex j = 0; j < d; ++j) {
        Amplitude acc{};
        for (BasisIndex z = 0; z < d; ++z) {
          acc += op(static_cast<int>(j), static_cast<int>(z)) * column[z];
        }
        out[base + j * stride] = acc;
      }
    }
  }
  return StateVector::from_dense(s.shape(), std::move(out), Representation::dense);
}

SparseEntries apply_sparse_entries(std::span<const std::pair<BasisIndex, Amplitude>> in,
                                   BasisIndex stride, const QuditMatrix& op) {
  const int d = op.dim();
  std::unordered_map<BasisIndex, Amplitude> acc;
  acc.reserve(in.size() * static_cast<std::size_t>(d));
  for (const auto& [index, amp] : in) {
    const Level z = digit_at(index, stride, d);
    const BasisIndex base = index - static_cast<BasisIndex>(z) * stride;
    for (int j = 0; j < d; ++j) {
      acc[base + static_cast<BasisIndex>(j) * stride] += op(j, z) * amp;
    }
  }
  SparseEntries out;
  out.reserve(acc.size());
  for (const auto& e : acc) {
    if (std::abs(e.second) >= kZeroThreshold) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

QuditMatrix::QuditMatrix(int dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim < 2) throw InputError("qudit dimension must be at least 2, got " + std::to_string(dim));
  if (entries_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
    throw InputError("qudit matrix needs d*d entries");
  }
}

QuditMatrix QuditMatrix::adjoint() const {
  std::vector<Amplitude> out(entries_.size());
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      out[static_cast<std::size_t>(c * dim_ + r)] = std::conj((*this)(r, c));
    }
  }
  return QuditMatrix(dim_, std::move(out));
}

double QuditMatrix::unitarity_deviation() const {
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      Amplitude acc{};
      for (int k = 0; k < dim_; ++k) acc += std::conj((*this)(k, r)) * (*this)(k, c);
      const Amplitude expected = r == c ? Amplitude{1.0, 0.0} : Amplitude{};
      worst = std::max(worst, std::abs(acc - expected));
    }
  }
  return worst;
}

Amplitude root_of_unity(long long m, int dim) {
  const long long reduced = ((m % dim) + dim) % dim;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(reduced) / dim);
}

QuditMatrix qft_matrix(int dim) {
  if (dim < 2) throw InputError("QFT dimension must be at least 2, got " + std::to_string(dim));
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Amplitude> entries(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    for (int z = 0; z < dim; ++z) {
      entries[static_cast<std::size_t>(j * dim + z)] =
          scale * root_of_unity(static_cast<long long>(j) * z, dim);
    }
  }
  return QuditMatrix(dim, std::move(entries));
}

StateVector apply_single_qudit(const StateVector& s, Register reg, int photon,
                               const QuditMatrix& op) {
  const SystemShape& shape = s.shape();
  if (op.dim() != shape.dim()) throw InputError("operator dimension does not match state");
  const BasisIndex stride = full_stride(shape, reg, photon);
  if (s.representation() == Representation::dense) return apply_dense(s, stride, op);
  return StateVector::from_sparse(shape, apply_sparse_entries(s.sparse_entries(), stride, op),
                                  Representation::sparse);
}

RegisterState apply_to_every_qudit(const RegisterState& s, const QuditMatrix& op) {
  const SystemShape& shape = s.shape();
  if (op.dim() != shape.dim()) throw InputError("operator dimension does not match state");
  SparseEntries entries = s.entries();
  for (int p = 0; p < shape.photons(); ++p) {
    entries = apply_sparse_entries(entries, shape.stride(p), op);
  }
  return RegisterState(shape, std::move(entries));
}

StateVector apply_qft_spatial_all(const StateVector& s) {
  const QuditMatrix qft = qft_matrix(s.shape().dim());
  StateVector out = s;
  for (int p = 0; p < s.shape().photons(); ++p) out = apply_single_qudit(out, Register::spatial, p, qft);
  return out;
}

StateVector apply_inverse_qft_spatial_all(const StateVector& s) {
  const QuditMatrix inverse = qft_matrix(s.shape().dim()).adjoint();
  StateVector out = s;
  for (int p = 0; p < s.shape().photons(); ++p) {
    out = apply_single_qudit(out, Register::spatial, p, inverse);
  }
  return out;
}

StateVector path_control(const StateVector& s, int photon) {
  const SystemShape& shape = s.shape();
  const BasisIndex reg_stride = shape.stride(photon);
  const BasisIndex spatial_stride = reg_stride * shape.register_size();
  const int d = shape.dim();

  auto target_of = [&](BasisIndex index) {
    const Level control = digit_at(index, spatial_stride, d);
    const Level old_level = digit_at(index, reg_stride, d);
    const Level new_level = (control + old_level) % d;
    return index - static_cast<BasisIndex>(old_level) * reg_stride +
           static_cast<BasisIndex>(new_level) * reg_stride;
  };

  if (s.representation() == Representation::dense) {
    const auto in = s.dense_amplitudes();
    std::vector<Amplitude> out(in.size());
    for (BasisIndex i = 0; i < in.size(); ++i) out[target_of(i)] = in[i];
    return StateVector::from_dense(shape, std::move(out), Representation::dense);
  }
  SparseEntries out;
  out.reserve(s.nonzero_count());
  for (const auto& [index, amp] : s.sparse_entries()) out.emplace_back(target_of(index), amp);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return StateVector::from_sparse(shape, std::move(out), Representation::sparse);
}

StateVector apply_path_control_all(const StateVector& s) {
  StateVector out = s;
  for (int p = 0; p < s.shape().photons(); ++p) out = path_control(out, p);
  return out;
}

StateVector apply_path_control_all(const StateVector& s, std::span<const int> order) {
  std::vector<int> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (int p = 0; p < s.shape().photons(); ++p) {
    if (sorted.size() != static_cast<std::size_t>(s.shape().photons()) ||
        sorted[static_cast<std::size_t>(p)] != p) {
      throw InputError("path-control order must be a permutation of the photons");
    }
  }
  StateVector out = s;
  for (int p : order) out = path_control(out, p);
  return out;
}

}  // namespace qghz
