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

#include <optional>
#include <vector>

#include "arena/devices.hpp"
#include "arena/fock.hpp"

namespace arena {

/// A player's polarization qubit: the two amplitudes their unitary sends
/// |H> to. Must be normalized to kValidationTol.
struct Strategy {
  Complex amp_h{1.0, 0.0};
  Complex amp_v{0.0, 0.0};

  bool is_normalized(double tol = kValidationTol) const;
  /// Real amplitudes (sqrt(p), sqrt(1-p)) for an H-probability p.
  static Strategy from_h_probability(double p);
  static Strategy balanced();
};

void validate_strategy(const Strategy& s);

/// SU(2) completion of the strategy: column 0 is (amp_h, amp_v), so the
/// unitary applied to |H> prepares exactly the strategy qubit.
Eigen::Matrix2cd strategy_unitary(const Strategy& s);

/// Ordered linear-optical elements on a fixed set of spatial modes, with
/// an optional photons-per-mode post-selection pattern at the end.
struct Circuit {
  int modes = 0;
  std::vector<DeviceSpec> elements;
  std::optional<std::vector<int>> post_pattern;
};

struct CircuitRun {
  StateVector output;  ///< post-selected when a pattern is attached
  double success_probability = 1.0;
  bool post_selected = false;
};

/// Output before and after post-selection; pre == run.output for circuits
/// without a pattern.
struct CircuitTrace {
  StateVector pre;
  CircuitRun run;
};

/// Applies the elements in order, then the pattern if attached. Loss
/// elements are rejected here; use loss_branch for trajectory sampling.
CircuitTrace run_circuit(const Circuit& circuit, const StateVector& input);

/// Dilemma network: each player's rotator acts on an |H> photon, then a
/// polarizing splitter routes the pair onto outputs 1 (Alice) and 2
/// (Bob). No post-selection: zero- and two-photon outputs carry payoffs.
Circuit pd_circuit(const Strategy& alice, const Strategy& bob);
StateVector pd_input();
CircuitRun run_pd(const Strategy& alice, const Strategy& bob);

/// Zero-sum fusion network on outputs 1-4. One splitter fuses player A's
/// photon with A's ancilla across outputs (1,3), another fuses player B's
/// photon with B's ancilla across outputs (2,4); the run post-selects one
/// photon in every output, and the squared norm of the kept branch is the
/// success probability.
Circuit zs_circuit(const Strategy& player_a, const Strategy& ancilla_a,
                   const Strategy& player_b, const Strategy& ancilla_b);
StateVector zs_input();
CircuitRun run_zs(const Strategy& player_a, const Strategy& ancilla_a,
                  const Strategy& player_b, const Strategy& ancilla_b);

/// Ideal two-pair target: ac|HHHH> + ad|HVHV> + bc|VHVH> + bd|VVVV> on
/// outputs ordered 1,2,3,4, with (a,b) = player A and (c,d) = player B.
/// Outputs (1,3) and (2,4) are the perfectly correlated pairs.
StateVector target_state(const Strategy& a_amps, const Strategy& b_amps);

}  // namespace arena
