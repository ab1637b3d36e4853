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

#include "arena/devices.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace arena {

namespace {

void check_port(int port, int mode_count, const char* what) {
  if (port < 0 || port >= mode_count)
    throw std::out_of_range(std::string(what) + ": port out of range");
}

void check_permutation(const std::vector<int>& perm, int mode_count) {
  if (static_cast<int>(perm.size()) != mode_count)
    throw std::invalid_argument("router: permutation size != mode count");
  std::vector<bool> seen(mode_count, false);
  for (int image : perm) {
    if (image < 0 || image >= mode_count || seen[image])
      throw std::invalid_argument("router: map is not a bijection");
    seen[image] = true;
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

}  // namespace

void validate_device(const DeviceSpec& spec, int mode_count) {
  switch (spec.kind) {
    case DeviceKind::PBS:
      if (spec.ports.size() != 2)
        throw std::invalid_argument("DeviceSpec: PBS needs exactly 2 ports");
      if (spec.ports[0] == spec.ports[1])
        throw std::invalid_argument("DeviceSpec: PBS ports must differ");
      for (int p : spec.ports) check_port(p, mode_count, "DeviceSpec");
      break;
    case DeviceKind::Rotator:
      if (spec.ports.size() != 1)
        throw std::invalid_argument("DeviceSpec: Rotator needs exactly 1 port");
      check_port(spec.ports[0], mode_count, "DeviceSpec");
      if ((spec.jones.adjoint() * spec.jones -
           Eigen::Matrix2cd::Identity())
              .cwiseAbs()
              .maxCoeff() > kValidationTol)
        throw std::invalid_argument("DeviceSpec: Jones matrix is not unitary");
      break;
    case DeviceKind::Router:
      check_permutation(spec.ports, mode_count);
      break;
    case DeviceKind::Loss:
      if (spec.ports.size() != 1)
        throw std::invalid_argument("DeviceSpec: Loss needs exactly 1 port");
      check_port(spec.ports[0], mode_count, "DeviceSpec");
      if (!(spec.eta >= 0.0 && spec.eta <= 1.0))
        throw std::invalid_argument("DeviceSpec: eta must lie in [0, 1]");
      break;
  }
}

ModeUnitary pbs(int mode_count, int port_p, int port_q,
                PbsConvention convention) {
  if (port_p == port_q)
    throw std::invalid_argument("pbs: ports must differ");
  check_port(port_p, mode_count, "pbs");
  check_port(port_q, mode_count, "pbs");

  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Identity(2 * mode_count, 2 * mode_count);
  const int swapped =
      convention == PbsConvention::TransmitH ? 1 : 0;  // polarization index
  const int cp = 2 * port_p + swapped;
  const int cq = 2 * port_q + swapped;
  m(cp, cp) = 0.0;
  m(cq, cq) = 0.0;
  m(cq, cp) = 1.0;
  m(cp, cq) = 1.0;
  return ModeUnitary(std::move(m));
}

ModeUnitary rotator(int mode_count, int port, const Eigen::Matrix2cd& jones) {
  check_port(port, mode_count, "rotator");
  if ((jones.adjoint() * jones - Eigen::Matrix2cd::Identity())
          .cwiseAbs()
          .maxCoeff() > kValidationTol)
    throw std::invalid_argument("rotator: Jones matrix is not unitary");

  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Identity(2 * mode_count, 2 * mode_count);
  m.block<2, 2>(2 * port, 2 * port) = jones;
  return ModeUnitary(std::move(m));
}

ModeUnitary router(int mode_count, const std::vector<int>& permutation) {
  check_permutation(permutation, mode_count);
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Zero(2 * mode_count, 2 * mode_count);
  for (int s = 0; s < mode_count; ++s)
    for (int pol = 0; pol < 2; ++pol)
      m(2 * permutation[s] + pol, 2 * s + pol) = 1.0;
  return ModeUnitary(std::move(m));
}

ModeUnitary device_unitary(const DeviceSpec& spec, int mode_count) {
  validate_device(spec, mode_count);
  switch (spec.kind) {
    case DeviceKind::PBS:
      return pbs(mode_count, spec.ports[0], spec.ports[1], spec.convention);
    case DeviceKind::Rotator:
      return rotator(mode_count, spec.ports[0], spec.jones);
    case DeviceKind::Router:
      return router(mode_count, spec.ports);
    case DeviceKind::Loss:
      break;
  }
  throw std::invalid_argument("device_unitary: Loss has no unitary action");
}

LossResult loss_branch(const StateVector& state, int port, double eta,
                       SplitMix64& rng) {
  check_port(port, state.modes, "loss_branch");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("loss_branch: eta must lie in [0, 1]");

  StateVector current = state;
  bool lost = false;
  for (int pol = 0; pol < 2; ++pol) {
    const int ch = 2 * port + pol;
    int max_n = 0;
    for (const auto& [basis, amp] : current.terms)
      max_n = std::max(max_n, basis.occ[ch]);
    if (max_n == 0) continue;

    // Exact absorbed-photon statistics for this channel over the current
    // superposition (branches may hold different photon numbers here).
    std::vector<double> weight(max_n + 1, 0.0);
    for (const auto& [basis, amp] : current.terms) {
      const int n = basis.occ[ch];
      for (int l = 0; l <= n; ++l)
        weight[l] += std::norm(amp) * binomial(n, l) *
                     std::pow(eta, n - l) * std::pow(1.0 - eta, l);
    }

    const double u = rng.uniform();
    int drawn = max_n;
    double cumulative = 0.0;
    for (int l = 0; l <= max_n; ++l) {
      cumulative += weight[l];
      if (u < cumulative) {
        drawn = l;
        break;
      }
    }
    if (drawn > 0) lost = true;

    StateVector next{current.modes, {}};
    for (const auto& [basis, amp] : current.terms) {
      const int n = basis.occ[ch];
      if (n < drawn) continue;
      const Complex branch_amp =
          amp * std::sqrt(binomial(n, drawn) * std::pow(eta, n - drawn) *
                          std::pow(1.0 - eta, drawn));
      if (std::abs(branch_amp) < kPruneTol) continue;
      FockState reduced = basis;
      reduced.occ[ch] -= drawn;
      next.terms.emplace(std::move(reduced), branch_amp);
    }
    current = next.empty() ? next : next.normalized();
  }
  return {std::move(current), lost};
}

namespace {

const char* kind_name(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::PBS: return "pbs";
    case DeviceKind::Rotator: return "rotator";
    case DeviceKind::Router: return "router";
    case DeviceKind::Loss: return "loss";
  }
  return "?";
}

DeviceKind kind_from_name(const std::string& name) {
  if (name == "pbs") return DeviceKind::PBS;
  if (name == "rotator") return DeviceKind::Rotator;
  if (name == "router") return DeviceKind::Router;
  if (name == "loss") return DeviceKind::Loss;
  throw std::invalid_argument("DeviceSpec: unknown kind '" + name + "'");
}

}  // namespace

nlohmann::json device_to_json(const DeviceSpec& spec) {
  nlohmann::json params = nlohmann::json::object();
  switch (spec.kind) {
    case DeviceKind::PBS:
      params["convention"] = spec.convention == PbsConvention::TransmitH
                                 ? "transmit_h"
                                 : "transmit_v";
      break;
    case DeviceKind::Rotator: {
      nlohmann::json rows = nlohmann::json::array();
      for (int r = 0; r < 2; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 2; ++c)
          row.push_back({spec.jones(r, c).real(), spec.jones(r, c).imag()});
        rows.push_back(std::move(row));
      }
      params["jones"] = std::move(rows);
      break;
    }
    case DeviceKind::Router:
      break;
    case DeviceKind::Loss:
      params["eta"] = spec.eta;
      break;
  }
  return {{"kind", kind_name(spec.kind)},
          {"ports", spec.ports},
          {"params", std::move(params)}};
}

DeviceSpec device_from_json(const nlohmann::json& j) {
  DeviceSpec spec;
  spec.kind = kind_from_name(j.at("kind").get<std::string>());
  spec.ports = j.at("ports").get<std::vector<int>>();
  const auto& params = j.at("params");
  switch (spec.kind) {
    case DeviceKind::PBS:
      if (params.contains("convention"))
        spec.convention =
            params.at("convention").get<std::string>() == "transmit_v"
                ? PbsConvention::TransmitV
                : PbsConvention::TransmitH;
      break;
    case DeviceKind::Rotator: {
      const auto& rows = params.at("jones");
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          spec.jones(r, c) = Complex{rows.at(r).at(c).at(0).get<double>(),
                                     rows.at(r).at(c).at(1).get<double>()};
      break;
    }
    case DeviceKind::Router:
      break;
    case DeviceKind::Loss:
      spec.eta = params.at("eta").get<double>();
      break;
  }
  return spec;
}

}  // namespace arena
