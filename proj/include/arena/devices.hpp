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

#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "arena/fock.hpp"
#include "arena/rng.hpp"

namespace arena {

enum class DeviceKind { PBS, Rotator, Router, Loss };

/// Which polarization passes straight through the splitter. TransmitH is
/// the default: H keeps its port, V swaps between the two ports.
enum class PbsConvention { TransmitH, TransmitV };

/// Declarative element description, also the JSON circuit-file schema:
/// {"kind": "...", "ports": [...], "params": {...}}.
struct DeviceSpec {
  DeviceKind kind = DeviceKind::Router;
  std::vector<int> ports;  // PBS: 2 ports; Rotator/Loss: 1; Router: image list
  Eigen::Matrix2cd jones = Eigen::Matrix2cd::Identity();  // Rotator only
  double eta = 1.0;                                       // Loss only
  PbsConvention convention = PbsConvention::TransmitH;    // PBS only
};

void validate_device(const DeviceSpec& spec, int mode_count);

/// Polarizing beam splitter between two ports. One polarization is
/// transmitted (keeps its port), the other swaps ports; no polarization
/// label ever changes. Self-inverse.
ModeUnitary pbs(int mode_count, int port_p, int port_q,
                PbsConvention convention = PbsConvention::TransmitH);

/// 2x2 Jones unitary on one port's (H, V) amplitudes, identity elsewhere.
/// Column 0 is the image of |H>, column 1 the image of |V>.
ModeUnitary rotator(int mode_count, int port, const Eigen::Matrix2cd& jones);

/// Pure spatial rerouting (circulators, mirrors, fibers): permutation[s]
/// is the destination of spatial mode s; polarization is untouched.
ModeUnitary router(int mode_count, const std::vector<int>& permutation);

/// Unitary for a non-Loss spec. Throws for Loss, which is not a unitary.
ModeUnitary device_unitary(const DeviceSpec& spec, int mode_count);

struct LossResult {
  StateVector state;
  bool photon_lost = false;
};

/// One quantum-trajectory branch of a lossy port: for each polarized
/// channel at the port, the number of absorbed photons is drawn from the
/// exact beam-splitter statistics (survival probability eta per photon)
/// and the state is projected and renormalized accordingly. Deterministic
/// for a given rng state. eta = 1 keeps the state untouched.
LossResult loss_branch(const StateVector& state, int port, double eta,
                       SplitMix64& rng);

nlohmann::json device_to_json(const DeviceSpec& spec);
DeviceSpec device_from_json(const nlohmann::json& j);

}  // namespace arena
