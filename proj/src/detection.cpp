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

#include "arena/detection.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "arena/io_util.hpp"
#include "arena/rng.hpp"

namespace arena {

int OutcomeRecord::total_clicks() const {
  int total = 0;
  for (const ClickCount& c : outputs) total += c.h + c.v;
  return total;
}

void validate_model(const DetectorModel& model) {
  if (!(model.efficiency >= 0.0 && model.efficiency <= 1.0))
    throw std::invalid_argument("DetectorModel: efficiency must be in [0, 1]");
  if (!(model.dark_count_prob >= 0.0 && model.dark_count_prob < 1.0))
    throw std::invalid_argument(
        "DetectorModel: dark count probability must be in [0, 1)");
}

OutcomeRecord record_from(const FockState& basis) {
  OutcomeRecord rec;
  rec.outputs.resize(basis.spatial_modes());
  for (int s = 0; s < basis.spatial_modes(); ++s)
    rec.outputs[s] = {basis.occ[2 * s], basis.occ[2 * s + 1]};
  return rec;
}

std::string pattern_string(const OutcomeRecord& record) {
  std::string out;
  for (int s = 0; s < static_cast<int>(record.outputs.size()); ++s) {
    const ClickCount& c = record.outputs[s];
    if (c.h == 0 && c.v == 0) continue;
    if (!out.empty()) out += ';';
    out += std::to_string(s + 1);
    out += ':';
    out.append(c.h, 'H');
    out.append(c.v, 'V');
  }
  return out.empty() ? "-" : out;
}

std::vector<std::pair<OutcomeRecord, double>> outcome_distribution(
    const StateVector& state, bool number_resolving) {
  std::map<OutcomeRecord, double> acc;
  for (const auto& [basis, amp] : state.terms) {
    OutcomeRecord rec = record_from(basis);
    if (!number_resolving)
      for (ClickCount& c : rec.outputs) {
        c.h = std::min(c.h, 1);
        c.v = std::min(c.v, 1);
      }
    acc[std::move(rec)] += std::norm(amp);
  }
  return {acc.begin(), acc.end()};
}

OutcomeRecord sample(const StateVector& state, const DetectorModel& model,
                     std::uint64_t seed) {
  validate_model(model);
  const auto dist = outcome_distribution(state, true);
  if (dist.empty())
    throw std::invalid_argument("sample: state has no terms");

  SplitMix64 rng(seed);
  const double u = rng.uniform();
  OutcomeRecord rec = dist.back().first;
  double cumulative = 0.0;
  for (const auto& [candidate, p] : dist) {
    cumulative += p;
    if (u < cumulative) {
      rec = candidate;
      break;
    }
  }

  if (model.efficiency < 1.0) {
    for (ClickCount& c : rec.outputs) {
      int kept_h = 0;
      for (int i = 0; i < c.h; ++i)
        if (rng.uniform() < model.efficiency) ++kept_h;
      int kept_v = 0;
      for (int i = 0; i < c.v; ++i)
        if (rng.uniform() < model.efficiency) ++kept_v;
      c = {kept_h, kept_v};
    }
  }
  if (model.dark_count_prob > 0.0) {
    for (ClickCount& c : rec.outputs) {
      if (rng.uniform() < model.dark_count_prob) ++c.h;
      if (rng.uniform() < model.dark_count_prob) ++c.v;
    }
  }
  if (!model.number_resolving) {
    for (ClickCount& c : rec.outputs) {
      c.h = std::min(c.h, 1);
      c.v = std::min(c.v, 1);
    }
  }
  return rec;
}

std::string distribution_csv(
    const std::vector<std::pair<OutcomeRecord, double>>& distribution) {
  std::string out = "pattern,probability\n";
  for (const auto& [rec, p] : distribution) {
    out += pattern_string(rec);
    out += ',';
    out += fmt12(p);
    out += '\n';
  }
  return out;
}

}  // namespace arena
