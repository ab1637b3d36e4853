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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arena/fock.hpp"

namespace arena {

struct ClickCount {
  int h = 0;
  int v = 0;
  auto operator<=>(const ClickCount&) const = default;
};

/// Polarization-resolving click record, one ClickCount per spatial output.
struct OutcomeRecord {
  std::vector<ClickCount> outputs;

  int total_clicks() const;
  auto operator<=>(const OutcomeRecord&) const = default;
};

/// Detector imperfections. Defaults reproduce ideal projective
/// measurement exactly. Efficiency erases each would-be click
/// independently; afterwards every detector (two per output) may fire a
/// dark count independently. Non-resolving detectors saturate at one
/// click.
struct DetectorModel {
  double efficiency = 1.0;
  double dark_count_prob = 0.0;
  bool number_resolving = true;
};

void validate_model(const DetectorModel& model);

OutcomeRecord record_from(const FockState& basis);

/// "1:H;2:HV" style: 1-based output index, sorted click letters, outputs
/// without clicks omitted; "-" for an all-zero record.
std::string pattern_string(const OutcomeRecord& record);

/// Exact click-pattern distribution of a normalized state, in canonical
/// record order. With number_resolving = false, counts >= 1 merge first.
std::vector<std::pair<OutcomeRecord, double>> outcome_distribution(
    const StateVector& state, bool number_resolving = true);

/// One detection run: draws a pattern from the exact distribution, then
/// applies efficiency erasure and dark counts. Bit-reproducible per seed.
OutcomeRecord sample(const StateVector& state, const DetectorModel& model,
                     std::uint64_t seed);

/// CSV with columns `pattern,probability`, probabilities at 12
/// significant digits.
std::string distribution_csv(
    const std::vector<std::pair<OutcomeRecord, double>>& distribution);

}  // namespace arena
