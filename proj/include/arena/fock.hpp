// Copyright 2026 The photon-arena Authors
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
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace arena {

using Complex = std::complex<double>;

/// Tolerance used by every unitarity / normalization validation check.
inline constexpr double kValidationTol = 1e-10;

/// Amplitudes with modulus below this are dropped after each element.
inline constexpr double kPruneTol = 1e-12;

/// Photon capacity the bundled circuits need; raise per call if required.
inline constexpr int kDefaultMaxPhotons = 4;

enum class Polarization : int { H = 0, V = 1 };

/// A polarized channel: (spatial path, H or V). Channels are ordered
/// spatial-major with H before V; that ordering is the canonical basis
/// order used everywhere (state terms, unitary rows/columns, JSON).
struct PolarizedMode {
  int spatial = 0;
  Polarization pol = Polarization::H;

  int channel() const { return 2 * spatial + static_cast<int>(pol); }
  static PolarizedMode from_channel(int channel) {
    return {channel / 2, static_cast<Polarization>(channel % 2)};
  }
  auto operator<=>(const PolarizedMode&) const = default;
};

/// Occupation numbers, one per polarized channel (length 2 * spatial
/// modes, canonical channel order). Comparison is lexicographic, which
/// fixes the basis order inside StateVector.
struct FockState {
  std::vector<int> occ;

  int total() const;
  int spatial_modes() const { return static_cast<int>(occ.size()) / 2; }
  /// Photons at one spatial mode, both polarizations summed.
  int photons_at(int spatial) const {
    return occ[2 * spatial] + occ[2 * spatial + 1];
  }
  auto operator<=>(const FockState&) const = default;
};

/// Sparse superposition over Fock basis states of a single system.
/// All terms share the same spatial mode count and total photon number.
/// An empty terms map is the flagged result of a zero-probability
/// projection, never a vacuum state.
struct StateVector {
  int modes = 0;  ///< spatial mode count; channel count is 2 * modes
  std::map<FockState, Complex> terms;

  bool empty() const { return terms.empty(); }
  double norm() const;
  bool is_normalized(double tol = kValidationTol) const;
  StateVector normalized() const;
  Complex amplitude(const FockState& basis) const;
  /// Total photon number, identical across terms; -1 when empty.
  int total_photons() const;
};

/// A unitary acting on polarized channels (dimension 2 * spatial modes).
/// Construction validates unitarity to kValidationTol. Column j holds the
/// image of creation operator j: a†_j -> sum_k matrix(k, j) a†_k.
class ModeUnitary {
 public:
  explicit ModeUnitary(Eigen::MatrixXcd matrix);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  int spatial_modes() const { return dim() / 2; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
};

/// One photon in the given spatial mode with polarization amplitudes
/// (amp_h, amp_v); all other modes empty. Amplitudes must be normalized
/// to kValidationTol.
StateVector single_photon(int mode_count, int spatial, Complex amp_h,
                          Complex amp_v);

/// Tensor product. Inputs act on disjoint systems and are re-indexed into
/// one combined system in argument order (first state keeps its spatial
/// indices, the next is shifted up, and so on). Throws if the combined
/// photon number exceeds max_photons.
StateVector tensor(const std::vector<StateVector>& states,
                   int max_photons = kDefaultMaxPhotons);

/// Second-quantized action of a channel unitary: every creation operator
/// is substituted per the matrix columns and the resulting operator
/// polynomial is re-expanded over Fock states with the bosonic sqrt(n!)
/// factors. Exact for any photon number; norm and photon number are
/// preserved. Amplitudes below kPruneTol are dropped from the result.
StateVector apply_unitary(const StateVector& state, const ModeUnitary& u);

struct PostSelection {
  StateVector state;     ///< renormalized kept branch; empty when probability 0
  double probability = 0.0;
};

/// Projects onto the subspace with exactly photons_per_mode[s] photons in
/// spatial mode s (polarizations summed) and renormalizes. The squared
/// norm of the kept branch is returned as the probability.
PostSelection post_select(const StateVector& state,
                          const std::vector<int>& photons_per_mode);

/// <a|b>; conjugation on the first argument.
Complex inner_product(const StateVector& a, const StateVector& b);

/// JSON form {"modes": m, "terms": [{"occ": [...], "re": r, "im": i}, ...]}
/// with terms in canonical basis order. Round-trips exactly.
nlohmann::json state_to_json(const StateVector& state);
StateVector state_from_json(const nlohmann::json& j);

}  // namespace arena
