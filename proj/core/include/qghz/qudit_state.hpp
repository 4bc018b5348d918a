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

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qghz {

using Level = int;
using Levels = std::vector<Level>;
using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;
using SparseEntries = std::vector<std::pair<BasisIndex, Amplitude>>;

/// Amplitudes with magnitude below this are not stored in sparse form.
inline constexpr double kZeroThreshold = 1e-12;
/// Outcomes with probability below this are treated as impossible.
inline constexpr double kSupportThreshold = 1e-9;
inline constexpr std::uint64_t kDefaultDenseCap = std::uint64_t{1} << 26;
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Malformed arguments: bad levels, wrong tuple lengths, mismatched shapes.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A request that would exceed a configured size cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A superposition whose amplitudes cancel to the zero vector.
class DegenerateStateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Register { spatial, oam };
enum class Representation { dense, sparse };

const char* to_string(Register reg);
const char* to_string(Representation rep);

struct Limits {
  std::uint64_t dense_amplitudes = kDefaultDenseCap;
  std::uint64_t label_enumeration = kDefaultEnumerationCap;
};

/// Qudit dimension d and photon count n. Every photon carries one spatial
/// and one OAM qudit, so the composite space has d^(2n) basis states.
///
/// Basis indices are big-endian in the digit string
/// (s_1 .. s_n, o_1 .. o_n): photon 1's spatial level is the most
/// significant digit and photon n's OAM level the least significant.
/// A register index is the n-digit number formed by one register alone, so
///   index = spatial_index * d^n + oam_index.
class SystemShape {
 public:
  SystemShape(int dim, int photons);

  int dim() const { return dim_; }
  int photons() const { return photons_; }

  /// d^n
  BasisIndex register_size() const { return register_size_; }
  /// d^(2n)
  BasisIndex total_size() const { return register_size_ * register_size_; }

  /// Weight of photon `photon`'s digit inside a register index.
  BasisIndex stride(int photon) const;

  BasisIndex register_index(std::span<const Level> levels) const;
  Levels register_levels(BasisIndex register_index) const;
  BasisIndex index_of(std::span<const Level> spatial,
                      std::span<const Level> oam) const;

  BasisIndex compose(BasisIndex spatial, BasisIndex oam) const {
    return spatial * register_size_ + oam;
  }
  BasisIndex spatial_part(BasisIndex index) const { return index / register_size_; }
  BasisIndex oam_part(BasisIndex index) const { return index % register_size_; }

  void validate_levels(std::span<const Level> levels) const;
  /// Throws ResourceError when a dense array would exceed `cap` amplitudes.
  void require_dense(std::uint64_t cap) const;

  friend bool operator==(const SystemShape&, const SystemShape&) = default;

 private:
  int dim_;
  int photons_;
  BasisIndex register_size_;
};

/// Normalized pure state over both registers. Values are immutable; copies
/// share storage.
class StateVector {
 public:
  /// Builds a state from sorted, duplicate-free entries. Entries below
  /// kZeroThreshold are dropped. No renormalization is performed; gates
  /// use this to emit their (unitary) results.
  static StateVector from_sparse(const SystemShape& shape, SparseEntries entries,
                                 Representation target);
  /// Same contract as from_sparse, starting from a full amplitude array.
  static StateVector from_dense(const SystemShape& shape,
                                std::vector<Amplitude> amplitudes,
                                Representation target);

  const SystemShape& shape() const { return storage_->shape; }
  Representation representation() const { return storage_->representation; }

  std::size_t nonzero_count() const;
  Amplitude amplitude(BasisIndex index) const;
  Amplitude amplitude(std::span<const Level> spatial, std::span<const Level> oam) const;
  double norm_squared() const;

  /// Entries with magnitude >= kZeroThreshold in ascending index order.
  SparseEntries nonzeros() const;

  /// Calls fn(index, amplitude) for every stored amplitude at or above
  /// kZeroThreshold, in ascending index order.
  template <typename Fn>
  void for_each_nonzero(Fn&& fn) const {
    if (storage_->representation == Representation::sparse) {
      for (const auto& [index, amp] : storage_->sparse) fn(index, amp);
      return;
    }
    const auto& dense = storage_->dense;
    for (BasisIndex i = 0; i < dense.size(); ++i) {
      if (std::abs(dense[i]) >= kZeroThreshold) fn(i, dense[i]);
    }
  }

  /// Throws InputError for sparse states.
  std::span<const Amplitude> dense_amplitudes() const;
  /// Throws InputError for dense states.
  std::span<const std::pair<BasisIndex, Amplitude>> sparse_entries() const;

 private:
  struct Storage {
    SystemShape shape;
    Representation representation;
    std::vector<Amplitude> dense;
    SparseEntries sparse;
  };

  explicit StateVector(std::shared_ptr<const Storage> storage)
      : storage_(std::move(storage)) {}

  std::shared_ptr<const Storage> storage_;
};

/// Amplitudes of one register (n qudits) alone, sparse and sorted by
/// register index.
class RegisterState {
 public:
  RegisterState(const SystemShape& shape, SparseEntries entries);

  const SystemShape& shape() const { return shape_; }
  const SparseEntries& entries() const { return entries_; }
  Amplitude amplitude(BasisIndex register_index) const;
  double norm_squared() const;

 private:
  SystemShape shape_;
  SparseEntries entries_;
};

struct BasisTerm {
  Levels spatial;
  Levels oam;
  Amplitude amplitude;
};

/// Sparse when the nonzero count is at most d*n^2 or a dense array would
/// exceed the cap, dense otherwise.
Representation auto_representation(const SystemShape& shape, std::size_t nonzeros,
                                   std::uint64_t dense_cap = kDefaultDenseCap);

StateVector basis_state(const SystemShape& shape, std::span<const Level> spatial,
                        std::span<const Level> oam,
                        std::optional<Representation> rep = std::nullopt,
                        std::uint64_t dense_cap = kDefaultDenseCap);

/// Normalized sum of the terms. Repeated tuples add.
StateVector superpose(const SystemShape& shape, std::span<const BasisTerm> terms,
                      std::optional<Representation> rep = std::nullopt,
                      std::uint64_t dense_cap = kDefaultDenseCap);

/// <a|b>, conjugate-linear in a.
Amplitude inner_product(const StateVector& a, const StateVector& b);
Amplitude inner_product(const RegisterState& a, const RegisterState& b);

/// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);
double fidelity(const RegisterState& a, const RegisterState& b);

StateVector convert_representation(const StateVector& s, Representation target,
                                   std::uint64_t dense_cap = kDefaultDenseCap);

/// spatial (x) oam as a two-register state.
StateVector tensor(const RegisterState& spatial, const RegisterState& oam,
                   std::optional<Representation> rep = std::nullopt,
                   std::uint64_t dense_cap = kDefaultDenseCap);

struct RegisterFactors {
  RegisterState spatial;
  RegisterState oam;
};

/// Splits s into spatial (x) oam when its Schmidt rank across the register
/// bipartition is 1, i.e. the second singular value of the d^n x d^n
/// coefficient matrix is at most `tolerance`. The OAM factor's first nonzero
/// amplitude is made real-positive; the global phase lives in the spatial
/// factor.
std::optional<RegisterFactors> factor_across_registers(const StateVector& s,
                                                       double tolerance = 1e-9);

}  // namespace qghz
