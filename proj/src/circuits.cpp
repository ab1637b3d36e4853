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

#include "arena/circuits.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace arena {

bool Strategy::is_normalized(double tol) const {
  return std::abs(std::norm(amp_h) + std::norm(amp_v) - 1.0) <= tol;
}

Strategy Strategy::from_h_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("Strategy: probability must lie in [0, 1]");
  return {Complex{std::sqrt(p), 0.0}, Complex{std::sqrt(1.0 - p), 0.0}};
}

Strategy Strategy::balanced() { return from_h_probability(0.5); }

void validate_strategy(const Strategy& s) {
  if (!s.is_normalized())
    throw std::invalid_argument("Strategy: amplitudes are not normalized");
}

Eigen::Matrix2cd strategy_unitary(const Strategy& s) {
  validate_strategy(s);
  Eigen::Matrix2cd u;
  u << s.amp_h, -std::conj(s.amp_v),
       s.amp_v,  std::conj(s.amp_h);
  return u;
}

CircuitTrace run_circuit(const Circuit& circuit, const StateVector& input) {
  if (input.modes != circuit.modes)
    throw std::invalid_argument("run_circuit: input mode count mismatch");
  StateVector state = input;
  for (const DeviceSpec& spec : circuit.elements) {
    if (spec.kind == DeviceKind::Loss)
      throw std::invalid_argument(
          "run_circuit: Loss elements need trajectory sampling; see "
          "loss_branch");
    state = apply_unitary(state, device_unitary(spec, circuit.modes));
  }

  CircuitTrace trace;
  trace.pre = state;
  if (circuit.post_pattern) {
    PostSelection sel = post_select(state, *circuit.post_pattern);
    trace.run = {std::move(sel.state), sel.probability, true};
  } else {
    trace.run = {std::move(state), 1.0, false};
  }
  return trace;
}

namespace {

DeviceSpec rotator_spec(int port, const Strategy& s) {
  DeviceSpec spec;
  spec.kind = DeviceKind::Rotator;
  spec.ports = {port};
  spec.jones = strategy_unitary(s);
  return spec;
}

DeviceSpec pbs_spec(int port_p, int port_q) {
  DeviceSpec spec;
  spec.kind = DeviceKind::PBS;
  spec.ports = {port_p, port_q};
  return spec;
}

}  // namespace

Circuit pd_circuit(const Strategy& alice, const Strategy& bob) {
  // Spatial 0 is Alice's path (input I -> output 1), spatial 1 is Bob's.
  Circuit c;
  c.modes = 2;
  c.elements = {rotator_spec(0, alice), rotator_spec(1, bob), pbs_spec(0, 1)};
  return c;
}

StateVector pd_input() {
  return tensor({single_photon(1, 0, 1.0, 0.0), single_photon(1, 0, 1.0, 0.0)});
}

CircuitRun run_pd(const Strategy& alice, const Strategy& bob) {
  return run_circuit(pd_circuit(alice, bob), pd_input()).run;
}

Circuit zs_circuit(const Strategy& player_a, const Strategy& ancilla_a,
                   const Strategy& player_b, const Strategy& ancilla_b) {
  // Spatial modes are outputs 1-4 in order: A's photon enters 0, B's
  // photon enters 1, A's ancilla enters 2, B's ancilla enters 3. The
  // splitters fuse (0,2) and (1,3), so the entangled pairs span outputs
  // (1,3) and (2,4).
  Circuit c;
  c.modes = 4;
  c.elements = {rotator_spec(0, player_a), rotator_spec(1, player_b),
                rotator_spec(2, ancilla_a), rotator_spec(3, ancilla_b),
                pbs_spec(0, 2), pbs_spec(1, 3)};
  c.post_pattern = std::vector<int>{1, 1, 1, 1};
  return c;
}

StateVector zs_input() {
  const StateVector h = single_photon(1, 0, 1.0, 0.0);
  return tensor({h, h, h, h});
}

CircuitRun run_zs(const Strategy& player_a, const Strategy& ancilla_a,
                  const Strategy& player_b, const Strategy& ancilla_b) {
  return run_circuit(zs_circuit(player_a, ancilla_a, player_b, ancilla_b),
                     zs_input())
      .run;
}

StateVector target_state(const Strategy& a_amps, const Strategy& b_amps) {
  validate_strategy(a_amps);
  validate_strategy(b_amps);

  // Channel layout: outputs 1..4 are spatial modes 0..3.
  auto basis = [](Polarization q1, Polarization q2, Polarization q3,
                  Polarization q4) {
    FockState f{std::vector<int>(8, 0)};
    f.occ[PolarizedMode{0, q1}.channel()] = 1;
    f.occ[PolarizedMode{1, q2}.channel()] = 1;
    f.occ[PolarizedMode{2, q3}.channel()] = 1;
    f.occ[PolarizedMode{3, q4}.channel()] = 1;
    return f;
  };
  constexpr auto H = Polarization::H;
  constexpr auto V = Polarization::V;

  StateVector out{4, {}};
  const std::pair<FockState, Complex> entries[] = {
      {basis(H, H, H, H), a_amps.amp_h * b_amps.amp_h},
      {basis(H, V, H, V), a_amps.amp_h * b_amps.amp_v},
      {basis(V, H, V, H), a_amps.amp_v * b_amps.amp_h},
      {basis(V, V, V, V), a_amps.amp_v * b_amps.amp_v},
  };
  for (const auto& [f, amp] : entries)
    if (std::abs(amp) >= kPruneTol) out.terms.emplace(f, amp);
  return out;
}

}  // namespace arena
