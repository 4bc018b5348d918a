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

#include <span>
#include <vector>

#include "qghz/qudit_state.hpp"

namespace qghz {

/// Dense d x d operator acting on one qudit, stored row-major.
class QuditMatrix {
 public:
  QuditMatrix(int dim, std::vector<Amplitude> entries);

  int dim() const { return dim_; }
  Amplitude operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row * dim_ + col)];
  }

  QuditMatrix adjoint() const;
  /// Largest entrywise deviation of M^dagger M from the identity.
  double unitarity_deviation() const;

 private:
  int dim_;
  std::vector<Amplitude> entries_;
};

/// The d-dimensional Fourier transform, entry (j, z) = exp(+2 pi i z j / d) / sqrt(d).
QuditMatrix qft_matrix(int dim);

/// exp(2 pi i m / d) for m reduced mod d; avoids accumulating error in large
/// phase arguments.
Amplitude root_of_unity(long long m, int dim);

/// Applies `op` to photon `photon`'s qudit in register `reg`. The result
/// keeps the input's representation.
StateVector apply_single_qudit(const StateVector& s, Register reg, int photon,
                               const QuditMatrix& op);
/// Applies `op` to every qudit of a single-register state.
RegisterState apply_to_every_qudit(const RegisterState& s, const QuditMatrix& op);

StateVector apply_qft_spatial_all(const StateVector& s);
StateVector apply_inverse_qft_spatial_all(const StateVector& s);

/// |j1>_S |j2>_O -> |j1>_S |j1 + j2 mod d>_O on one photon.
StateVector path_control(const StateVector& s, int photon);
/// Path control on photons 0..n-1.
StateVector apply_path_control_all(const StateVector& s);
/// Path control on every photon, in the given order.
StateVector apply_path_control_all(const StateVector& s, std::span<const int> order);

}  // namespace qghz
