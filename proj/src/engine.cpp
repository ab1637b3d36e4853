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

#include "arena/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace arena {

namespace {

// Two-sided 99% normal quantile.
constexpr double kZ99 = 2.5758293035489004;

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

std::array<double, 2> mean_ci99(double mean, double sample_var, long long n) {
  if (n <= 0) return {mean, mean};
  const double half = kZ99 * std::sqrt(sample_var / static_cast<double>(n));
  return {mean - half, mean + half};
}

std::array<double, 2> freq_ci99(double p, long long n) {
  if (n <= 0) return {p, p};
  const double half = kZ99 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {p - half, p + half};
}

}  // namespace

PayoffTable PayoffTable::prisoners_dilemma() {
  PayoffTable t;
  t.alice[0][0] = 2.0; t.bob[0][0] = 2.0;
  t.alice[0][1] = 5.0; t.bob[0][1] = 1.0;
  t.alice[1][0] = 1.0; t.bob[1][0] = 5.0;
  t.alice[1][1] = 4.0; t.bob[1][1] = 4.0;
  return t;
}

void validate_table(const PayoffTable& table) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (!std::isfinite(table.alice[r][c]) || !std::isfinite(table.bob[r][c]))
        throw std::invalid_argument("PayoffTable: entries must be finite");
}

std::optional<GameResultPD> pd_classify(const OutcomeRecord& record,
                                        const PayoffTable& table) {
  if (record.outputs.size() != 2) return std::nullopt;
  const ClickCount& a = record.outputs[0];
  const ClickCount& b = record.outputs[1];

  PdOutcome kind;
  int row, col;
  if (a == ClickCount{1, 0} && b == ClickCount{1, 0}) {
    kind = PdOutcome::HH; row = 0; col = 0;
  } else if (a == ClickCount{0, 1} && b == ClickCount{0, 1}) {
    kind = PdOutcome::VV; row = 1; col = 1;
  } else if (a == ClickCount{1, 1} && b == ClickCount{0, 0}) {
    kind = PdOutcome::BothAtAlice; row = 0; col = 1;
  } else if (a == ClickCount{0, 0} && b == ClickCount{1, 1}) {
    kind = PdOutcome::BothAtBob; row = 1; col = 0;
  } else {
    return std::nullopt;
  }
  return GameResultPD{kind, table.alice[row][col], table.bob[row][col]};
}

std::pair<double, double> pd_expected(double x, double y,
                                      const PayoffTable& table) {
  check_unit_interval(x, "pd_expected: x");
  check_unit_interval(y, "pd_expected: y");
  validate_table(table);

  double ea = 0.0, eb = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double w = (r == 0 ? x : 1.0 - x) * (c == 0 ? y : 1.0 - y);
      ea += w * table.alice[r][c];
      eb += w * table.bob[r][c];
    }
  }
  return {ea, eb};
}

std::optional<GameResultZS> zs_classify(const OutcomeRecord& record) {
  if (record.outputs.size() != 4) return std::nullopt;
  Polarization pol[4];
  for (int s = 0; s < 4; ++s) {
    const ClickCount& c = record.outputs[s];
    if (c.h + c.v != 1) return std::nullopt;
    pol[s] = c.h == 1 ? Polarization::H : Polarization::V;
  }
  GameResultZS result;
  result.a_equal = pol[0] == pol[1];
  result.b_equal = pol[2] == pol[3];
  result.pair_correlated = pol[0] == pol[2] && pol[1] == pol[3];
  result.winner = result.a_equal ? ZsWinner::A : ZsWinner::B;
  return result;
}

std::pair<double, double> zs_win_probability(double pa, double pc) {
  check_unit_interval(pa, "zs_win_probability: pa");
  check_unit_interval(pc, "zs_win_probability: pc");
  const double p_a = 1.0 - (pa - 2.0 * pa * pc + pc);
  return {p_a, 1.0 - p_a};
}

nlohmann::ordered_json MatchReport::to_json() const {
  nlohmann::ordered_json j;
  j["game"] = game;
  j["trials"] = trials;
  j["outcomes"] = outcomes;
  if (mean_payoff)
    j["mean_payoff"] = {mean_payoff->first, mean_payoff->second};
  if (win_freq_a) {
    j["win_freq"] = nlohmann::ordered_json::object();
    j["win_freq"]["A"] = *win_freq_a;
    j["win_freq"]["B"] = *win_freq_b;
  }
  if (success_rate) j["success_rate"] = *success_rate;
  j["inconclusive"] = inconclusive;
  nlohmann::ordered_json ci = nlohmann::ordered_json::object();
  if (ci99_alice) ci["alice"] = *ci99_alice;
  if (ci99_bob) ci["bob"] = *ci99_bob;
  if (ci99_win_a) ci["win_freq_a"] = *ci99_win_a;
  if (ci99_success) ci["success_rate"] = *ci99_success;
  j["ci99"] = std::move(ci);
  j["seed"] = seed;
  return j;
}

MatchReport monte_carlo_pd(const Strategy& alice, const Strategy& bob,
                           long long trials, std::uint64_t seed,
                           const DetectorModel& model,
                           const PayoffTable& table) {
  if (trials < 1)
    throw std::invalid_argument("monte_carlo: trials must be >= 1");
  validate_model(model);
  validate_table(table);

  const StateVector state = run_pd(alice, bob).output;

  MatchReport rep;
  rep.game = "pd";
  rep.trials = trials;
  rep.seed = seed;
  rep.outcomes = {{"HH", 0}, {"VV", 0}, {"both_at_alice", 0},
                  {"both_at_bob", 0}};

  long long conclusive = 0;
  double sum_a = 0.0, sum_b = 0.0, sq_a = 0.0, sq_b = 0.0;
  for (long long i = 0; i < trials; ++i) {
    const OutcomeRecord rec =
        sample(state, model, seed ^ static_cast<std::uint64_t>(i));
    const auto result = pd_classify(rec, table);
    if (!result) {
      ++rep.inconclusive;
      continue;
    }
    ++conclusive;
    switch (result->kind) {
      case PdOutcome::HH: ++rep.outcomes["HH"]; break;
      case PdOutcome::VV: ++rep.outcomes["VV"]; break;
      case PdOutcome::BothAtAlice: ++rep.outcomes["both_at_alice"]; break;
      case PdOutcome::BothAtBob: ++rep.outcomes["both_at_bob"]; break;
    }
    sum_a += result->alice_payoff;
    sum_b += result->bob_payoff;
    sq_a += result->alice_payoff * result->alice_payoff;
    sq_b += result->bob_payoff * result->bob_payoff;
  }

  if (conclusive > 0) {
    const double n = static_cast<double>(conclusive);
    const double mean_a = sum_a / n;
    const double mean_b = sum_b / n;
    rep.mean_payoff = {mean_a, mean_b};
    const double var_a =
        conclusive > 1 ? std::max(0.0, (sq_a - n * mean_a * mean_a) / (n - 1.0))
                       : 0.0;
    const double var_b =
        conclusive > 1 ? std::max(0.0, (sq_b - n * mean_b * mean_b) / (n - 1.0))
                       : 0.0;
    rep.ci99_alice = mean_ci99(mean_a, var_a, conclusive);
    rep.ci99_bob = mean_ci99(mean_b, var_b, conclusive);
  }
  return rep;
}

MatchReport monte_carlo_zs(const Strategy& player_a, const Strategy& ancilla_a,
                           const Strategy& player_b, const Strategy& ancilla_b,
                           long long trials, std::uint64_t seed,
                           const DetectorModel& model) {
  if (trials < 1)
    throw std::invalid_argument("monte_carlo: trials must be >= 1");
  validate_model(model);

  // Sample the full network output and let the detector record decide
  // whether the run passes the one-photon-per-output pattern.
  const StateVector pre =
      run_circuit(zs_circuit(player_a, ancilla_a, player_b, ancilla_b),
                  zs_input())
          .pre;

  MatchReport rep;
  rep.game = "zs";
  rep.trials = trials;
  rep.seed = seed;
  rep.outcomes = {{"a_wins", 0}, {"b_wins", 0}};

  long long conclusive = 0;
  long long a_wins = 0;
  for (long long i = 0; i < trials; ++i) {
    const OutcomeRecord rec =
        sample(pre, model, seed ^ static_cast<std::uint64_t>(i));
    const auto result = zs_classify(rec);
    if (!result) {
      ++rep.inconclusive;
      continue;
    }
    ++conclusive;
    if (result->winner == ZsWinner::A) {
      ++a_wins;
      ++rep.outcomes["a_wins"];
    } else {
      ++rep.outcomes["b_wins"];
    }
  }

  const double pass =
      static_cast<double>(conclusive) / static_cast<double>(trials);
  rep.success_rate = pass;
  rep.ci99_success = freq_ci99(pass, trials);
  if (conclusive > 0) {
    const double freq_a =
        static_cast<double>(a_wins) / static_cast<double>(conclusive);
    rep.win_freq_a = freq_a;
    rep.win_freq_b = 1.0 - freq_a;
    rep.ci99_win_a = freq_ci99(freq_a, conclusive);
  }
  return rep;
}

}  // namespace arena
