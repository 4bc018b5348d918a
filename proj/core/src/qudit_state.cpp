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

#include "qghz/qudit_state.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace qghz {

namespace {

// Register sizes are capped so that d^(2n) still fits in a BasisIndex.
constexpr BasisIndex kMaxRegisterSize = std::numeric_limits<std::uint32_t>::max();

void prune_and_sort(SparseEntries& entries) {
  std::erase_if(entries, [](const auto& e) { return std::abs(e.second) < kZeroThreshold; });
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

SparseEntries merge_duplicates(SparseEntries entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseEntries merged;
  merged.reserve(entries.size());
  for (const auto& [index, amp] : entries) {
    if (!merged.empty() && merged.back().first == index) {
      merged.back().second += amp;
    } else {
      merged.emplace_back(index, amp);
    }
  }
  return merged;
}

}  // namespace

const char* to_string(Register reg) {
  return reg == Register::spatial ? "spatial" : "oam";
}

const char* to_string(Representation rep) {
  return rep == Representation::dense ? "dense" : "sparse";
}

// ---------------------------------------------------------------------------
// SystemShape

SystemShape::SystemShape(int dim, int photons) : dim_(dim), photons_(photons), register_size_(1) {
  if (dim < 2) {
    throw InputError("qudit dimension must be at least 2, got " + std::to_string(dim));
  }
  if (photons < 2) {
    throw InputError("photon count must be at least 2, got " + std::to_string(photons));
  }
  for (int i = 0; i < photons; ++i) {
    if (register_size_ > kMaxRegisterSize / static_cast<BasisIndex>(dim)) {
      throw ResourceError("d^n = " + std::to_string(dim) + "^" + std::to_string(photons) +
                          " exceeds the addressable register size");
    }
    register_size_ *= static_cast<BasisIndex>(dim);
  }
}

BasisIndex SystemShape::stride(int photon) const {
  if (photon < 0 || photon >= photons_) {
    throw InputError("photon index " + std::to_string(photon) + " out of range [0, " +
                     std::to_string(photons_) + ")");
  }
  BasisIndex s = 1;
  for (int i = photon + 1; i < photons_; ++i) s *= static_cast<BasisIndex>(dim_);
  return s;
}

void SystemShape::validate_levels(std::span<const Level> levels) const {
  if (levels.size() != static_cast<std::size_t>(photons_)) {
    throw InputError("expected " + std::to_string(photons_) + " levels, got " +
                     std::to_string(levels.size()));
  }
  for (Level l : levels) {
    if (l < 0 || l >= dim_) {
      throw InputError("level " + std::to_string(l) + " outside [0, " + std::to_string(dim_) +
                       ")");
    }
  }
}

BasisIndex SystemShape::register_index(std::span<const Level> levels) const {
  validate_levels(levels);
  BasisIndex index = 0;
  for (Level l : levels) index = index * static_cast<BasisIndex>(dim_) + static_cast<BasisIndex>(l);
  return index;
}

Levels SystemShape::register_levels(BasisIndex register_index) const {
  if (register_index >= register_size_) {
    throw InputError("register index " + std::to_string(register_index) + " out of range");
  }
  Levels levels(static_cast<std::size_t>(photons_));
  const auto d = static_cast<BasisIndex>(dim_);
  for (int p = photons_ - 1; p >= 0; --p) {
    levels[static_cast<std::size_t>(p)] = static_cast<Level>(register_index % d);
    register_index /= d;
  }
  return levels;
}

BasisIndex SystemShape::index_of(std::span<const Level> spatial,
                                 std::span<const Level> oam) const {
  return compose(register_index(spatial), register_index(oam));
}

void SystemShape::require_dense(std::uint64_t cap) const {
  if (total_size() > cap) {
    throw ResourceError("dense state for d=" + std::to_string(dim_) +
                        ", n=" + std::to_string(photons_) + " needs " +
                        std::to_string(total_size()) + " amplitudes, cap is " +
                        std::to_string(cap));
  }
}

// ---------------------------------------------------------------------------
// StateVector

StateVector StateVector::from_sparse(const SystemShape& shape, SparseEntries entries,
                                     Representation target) {
  for (const auto& e : entries) {
    if (e.first >= shape.total_size()) throw InputError("basis index out of range");
  }
  Storage storage{shape, target, {}, {}};
  if (target == Representation::sparse) {
    prune_and_sort(entries);
    storage.sparse = std::move(entries);
  } else {
    storage.dense.assign(shape.total_size(), Amplitude{});
    for (const auto& [index, amp] : entries) {
      if (std::abs(amp) >= kZeroThreshold) storage.dense[index] = amp;
    }
  }
  return StateVector(std::make_shared<const Storage>(std::move(storage)));
}

StateVector StateVector::from_dense(const SystemShape& shape, std::vector<Amplitude> amplitudes,
                                    Representation target) {
  if (amplitudes.size() != shape.total_size()) {
    throw InputError("dense amplitude array has wrong length");
  }
  Storage storage{shape, target, {}, {}};
  if (target == Representation::dense) {
    for (auto& a : amplitudes) {
      if (std::abs(a) < kZeroThreshold) a = Amplitude{};
    }
    storage.dense = std::move(amplitudes);
  } else {
    for (BasisIndex i = 0; i < amplitudes.size(); ++i) {
      if (std::abs(amplitudes[i]) >= kZeroThreshold) storage.sparse.emplace_back(i, amplitudes[i]);
    }
  }
  return StateVector(std::make_shared<const Storage>(std::move(storage)));
}

std::size_t StateVector::nonzero_count() const {
  if (representation() == Representation::sparse) return storage_->sparse.size();
  return static_cast<std::size_t>(std::count_if(
      storage_->dense.begin(), storage_->dense.end(),
      [](const Amplitude& a) { return std::abs(a) >= kZeroThreshold; }));
}

Amplitude StateVector::amplitude(BasisIndex index) const {
  if (index >= shape().total_size()) throw InputError("basis index out of range");
  if (representation() == Representation::dense) return storage_->dense[index];
  const auto& sp = storage_->sparse;
  auto it = std::lower_bound(sp.begin(), sp.end(), index,
                             [](const auto& e, BasisIndex i) { return e.first < i; });
  return (it != sp.end() && it->first == index) ? it->second : Amplitude{};
}

Amplitude StateVector::amplitude(std::span<const Level> spatial,
                                 std::span<const Level> oam) const {
  return amplitude(shape().index_of(spatial, oam));
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for_each_nonzero([&](BasisIndex, const Amplitude& a) { sum += std::norm(a); });
  return sum;
}

SparseEntries StateVector::nonzeros() const {
  if (representation() == Representation::sparse) return storage_->sparse;
  SparseEntries out;
  for_each_nonzero([&](BasisIndex i, const Amplitude& a) { out.emplace_back(i, a); });
  return out;
}

std::span<const Amplitude> StateVector::dense_amplitudes() const {
  if (representation() != Representation::dense) throw InputError("state is not dense");
  return storage_->dense;
}

std::span<const std::pair<BasisIndex, Amplitude>> StateVector::sparse_entries() const {
  if (representation() != Representation::sparse) throw InputError("state is not sparse");
  return storage_->sparse;
}

// ---------------------------------------------------------------------------
// RegisterState

RegisterState::RegisterState(const SystemShape& shape, SparseEntries entries)
    : shape_(shape), entries_(merge_duplicates(std::move(entries))) {
  for (const auto& e : entries_) {
    if (e.first >= shape_.register_size()) throw InputError("register index out of range");
  }
  prune_and_sort(entries_);
}

Amplitude RegisterState::amplitude(BasisIndex register_index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), register_index,
                             [](const auto& e, BasisIndex i) { return e.first < i; });
  return (it != entries_.end() && it->first == register_index) ? it->second : Amplitude{};
}

double RegisterState::norm_squared() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += std::norm(e.second);
  return sum;
}

// ---------------------------------------------------------------------------
// Construction and comparison

Representation auto_representation(const SystemShape& shape, std::size_t nonzeros,
                                   std::uint64_t dense_cap) {
  const auto n = static_cast<std::uint64_t>(shape.photons());
  const auto threshold = static_cast<std::uint64_t>(shape.dim()) * n * n;
  if (nonzeros <= threshold || shape.total_size() > dense_cap) return Representation::sparse;
  return Representation::dense;
}

StateVector basis_state(const SystemShape& shape, std::span<const Level> spatial,
                        std::span<const Level> oam, std::optional<Representation> rep,
                        std::uint64_t dense_cap) {
  const BasisIndex index = shape.index_of(spatial, oam);
  const Representation target = rep.value_or(auto_representation(shape, 1, dense_cap));
  if (target == Representation::dense) shape.require_dense(dense_cap);
  return StateVector::from_sparse(shape, {{index, Amplitude{1.0, 0.0}}}, target);
}

StateVector superpose(const SystemShape& shape, std::span<const BasisTerm> terms,
                      std::optional<Representation> rep, std::uint64_t dense_cap) {
  if (terms.empty()) throw InputError("superposition needs at least one term");
  SparseEntries entries;
  entries.reserve(terms.size());
  for (const auto& t : terms) entries.emplace_back(shape.index_of(t.spatial, t.oam), t.amplitude);
  entries = merge_duplicates(std::move(entries));

  double norm2 = 0.0;
  for (const auto& e : entries) norm2 += std::norm(e.second);
  const double norm = std::sqrt(norm2);
  if (norm < kZeroThreshold) throw DegenerateStateError("superposition is the zero vector");
  for (auto& e : entries) e.second /= norm;
  prune_and_sort(entries);

  const Representation target = rep.value_or(auto_representation(shape, entries.size(), dense_cap));
  if (target == Representation::dense) shape.require_dense(dense_cap);
  return StateVector::from_sparse(shape, std::move(entries), target);
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (!(a.shape() == b.shape())) throw InputError("inner product of states with different shapes");
  Amplitude sum{};
  if (a.representation() == Representation::dense && b.representation() == Representation::dense) {
    const auto da = a.dense_amplitudes();
    const auto db = b.dense_amplitudes();
    for (std::size_t i = 0; i < da.size(); ++i) sum += std::conj(da[i]) * db[i];
    return sum;
  }
  if (a.representation() == Representation::sparse) {
    for (const auto& [i, amp] : a.sparse_entries()) sum += std::conj(amp) * b.amplitude(i);
    return sum;
  }
  for (const auto& [i, amp] : b.sparse_entries()) sum += std::conj(a.amplitude(i)) * amp;
  return sum;
}

Amplitude inner_product(const RegisterState& a, const RegisterState& b) {
  if (!(a.shape() == b.shape())) throw InputError("inner product of states with different shapes");
  Amplitude sum{};
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }
double fidelity(const RegisterState& a, const RegisterState& b) {
  return std::norm(inner_product(a, b));
}

StateVector convert_representation(const StateVector& s, Representation target,
                                   std::uint64_t dense_cap) {
  if (s.representation() == target) return s;
  if (target == Representation::dense) {
    s.shape().require_dense(dense_cap);
    return StateVector::from_sparse(s.shape(), s.nonzeros(), Representation::dense);
  }
  return StateVector::from_sparse(s.shape(), s.nonzeros(), Representation::sparse);
}

StateVector tensor(const RegisterState& spatial, const RegisterState& oam,
                   std::optional<Representation> rep, std::uint64_t dense_cap) {
  if (!(spatial.shape() == oam.shape())) throw InputError("register factors have different shapes");
  const SystemShape& shape = spatial.shape();
  SparseEntries entries;
  entries.reserve(spatial.entries().size() * oam.entries().size());
  // Spatial-major iteration keeps the output sorted.
  for (const auto& [si, sa] : spatial.entries()) {
    for (const auto& [oi, oa] : oam.entries()) entries.emplace_back(shape.compose(si, oi), sa * oa);
  }
  const Representation target = rep.value_or(auto_representation(shape, entries.size(), dense_cap));
  if (target == Representation::dense) shape.require_dense(dense_cap);
  return StateVector::from_sparse(shape, std::move(entries), target);
}

std::optional<RegisterFactors> factor_across_registers(const StateVector& s, double tolerance) {
  const SystemShape& shape = s.shape();
  const SparseEntries entries = s.nonzeros();
  if (entries.empty()) return std::nullopt;

  // Rows and columns outside the support are zero and do not change the rank.
  std::map<BasisIndex, Eigen::Index> rows;
  std::map<BasisIndex, Eigen::Index> cols;
  for (const auto& [index, amp] : entries) {
    rows.emplace(shape.spatial_part(index), 0);
    cols.emplace(shape.oam_part(index), 0);
  }
  Eigen::Index next = 0;
  for (auto& r : rows) r.second = next++;
  next = 0;
  for (auto& c : cols) c.second = next++;

  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                   static_cast<Eigen::Index>(cols.size()));
  for (const auto& [index, amp] : entries) {
    coeffs(rows.at(shape.spatial_part(index)), cols.at(shape.oam_part(index))) = amp;
  }

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  if (sigma.size() > 1 && sigma(1) > tolerance) return std::nullopt;

  // coeffs ~= sigma_0 * u v^H, so the OAM factor is conj(v).
  const Eigen::VectorXcd u = svd.matrixU().col(0);
  const Eigen::VectorXcd v = svd.matrixV().col(0).conjugate();

  SparseEntries oam_entries;
  for (const auto& [oi, col] : cols) oam_entries.emplace_back(oi, v(col));
  prune_and_sort(oam_entries);
  if (oam_entries.empty()) return std::nullopt;
  const Amplitude fix = std::polar(1.0, -std::arg(oam_entries.front().second));
  for (auto& e : oam_entries) e.second *= fix;

  SparseEntries spatial_entries;
  for (const auto& [si, row] : rows) spatial_entries.emplace_back(si, u(row) * std::conj(fix));
  double norm2 = 0.0;
  for (const auto& e : spatial_entries) norm2 += std::norm(e.second);
  const double norm = std::sqrt(norm2);
  for (auto& e : spatial_entries) e.second /= norm;

  return RegisterFactors{RegisterState(shape, std::move(spatial_entries)),
                         RegisterState(shape, std::move(oam_entries))};
}

}  // namespace qghz
