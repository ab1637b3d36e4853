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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "arena/circuits.hpp"
#include "arena/detection.hpp"

namespace arena {

/// 2x2 payoff table indexed by (Alice's pure choice, Bob's pure choice)
/// with 0 = H, 1 = V. The default is the dilemma table:
/// (H,H)->(2,2), (H,V)->(5,1), (V,H)->(1,5), (V,V)->(4,4).
struct PayoffTable {
  double alice[2][2];
  double bob[2][2];

  static PayoffTable prisoners_dilemma();
};

void validate_table(const PayoffTable& table);

enum class PdOutcome { HH, VV, BothAtAlice, BothAtBob };

struct GameResultPD {
  PdOutcome kind;
  double alice_payoff;
  double bob_payoff;
};

/// Maps an ideal dilemma record to its payoff cell. Both photons at
/// output 1 (Alice's port) pay table(H,V); both at output 2 pay
/// table(V,H). Any other record is inconclusive (nullopt) — losses and
/// dark counts land there and are tallied separately by Monte Carlo.
std::optional<GameResultPD> pd_classify(
    const OutcomeRecord& record,
    const PayoffTable& table = PayoffTable::prisoners_dilemma());

/// Exact average payoffs for H-probabilities x (Alice) and y (Bob),
/// summed over the four probability-weighted cells.
std::pair<double, double> pd_expected(
    double x, double y,
    const PayoffTable& table = PayoffTable::prisoners_dilemma());

enum class ZsWinner { A, B };

struct GameResultZS {
  ZsWinner winner;       ///< A iff a_equal
  bool a_equal;          ///< polarizations at outputs 1 and 2 agree
  bool b_equal;          ///< polarizations at outputs 3 and 4 agree
  bool pair_correlated;  ///< outputs (1,3) and (2,4) each agree
};

/// Requires exactly one photon at each of outputs 1-4; anything else is
/// inconclusive. On ideal post-selected runs a_equal == b_equal and
/// pair_correlated holds; violating records are still classified by the
/// rule but carry pair_correlated = false.
std::optional<GameResultZS> zs_classify(const OutcomeRecord& record);

/// Win probabilities for H-probabilities pa (player A's photon) and pc
/// (player B's), both pairs fused with balanced ancillas:
/// P_A = 1 - (pa - 2*pa*pc + pc), P_B = 1 - P_A.
std::pair<double, double> zs_win_probability(double pa, double pc);

struct MatchReport {
  std::string game;  // "pd" | "zs"
  long long trials = 0;
  std::uint64_t seed = 0;
  long long inconclusive = 0;
  std::map<std::string, long long> outcomes;
  // pd
  std::optional<std::pair<double, double>> mean_payoff;
  std::optional<std::array<double, 2>> ci99_alice;
  std::optional<std::array<double, 2>> ci99_bob;
  // zs
  std::optional<double> win_freq_a;
  std::optional<double> win_freq_b;
  std::optional<double> success_rate;  // post-selection pass rate
  std::optional<std::array<double, 2>> ci99_win_a;
  std::optional<std::array<double, 2>> ci99_success;

  nlohmann::ordered_json to_json() const;
};

/// Seeded match: per-run streams derive from seed ^ run_index, so reports
/// are bit-reproducible regardless of how runs would be scheduled.
MatchReport monte_carlo_pd(
    const Strategy& alice, const Strategy& bob, long long trials,
    std::uint64_t seed, const DetectorModel& model,
    const PayoffTable& table = PayoffTable::prisoners_dilemma());

/// Samples the pre-selection network output; runs failing the
/// one-photon-per-output pattern (or corrupted by the detector model)
/// count as inconclusive, and success_rate reports the observed pass
/// rate. Win frequencies are over conclusive runs.
MatchReport monte_carlo_zs(const Strategy& player_a, const Strategy& ancilla_a,
                           const Strategy& player_b, const Strategy& ancilla_b,
                           long long trials, std::uint64_t seed,
                           const DetectorModel& model);

}  // namespace arena
