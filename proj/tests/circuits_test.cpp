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

#include <doctest.h>

#include <cmath>
#include <set>

#include "test_helpers.hpp"

using namespace arena;

namespace {

FockState occ(std::vector<int> v) { return FockState{std::move(v)}; }

// Independent route to the fusion network output: expand the four-photon
// product state, relabel channels through both splitter maps, and filter
// on one photon per mode. No ModeUnitary machinery involved.
std::pair<StateVector, double> zs_enumeration_oracle(const Strategy& a,
                                                     const Strategy& anc_a,
                                                     const Strategy& b,
                                                     const Strategy& anc_b) {
  const StateVector in =
      tensor({single_photon(1, 0, a.amp_h, a.amp_v),
              single_photon(1, 0, b.amp_h, b.amp_v),
              single_photon(1, 0, anc_a.amp_h, anc_a.amp_v),
              single_photon(1, 0, anc_b.amp_h, anc_b.amp_v)});
  StateVector routed =
      testutil::apply_channel_permutation(in, testutil::pbs_channel_map(4, 0, 2));
  routed = testutil::apply_channel_permutation(
      routed, testutil::pbs_channel_map(4, 1, 3));

  StateVector kept{4, {}};
  double prob = 0.0;
  for (const auto& [basis, amp] : routed.terms) {
    bool one_each = true;
    for (int s = 0; s < 4; ++s) one_each = one_each && basis.photons_at(s) == 1;
    if (one_each) {
      prob += std::norm(amp);
      kept.terms.emplace(basis, amp);
    }
  }
  if (!kept.empty()) kept = kept.normalized();
  return {kept, prob};
}

}  // namespace

TEST_CASE("strategy validation and helpers") {
  CHECK_THROWS_AS(validate_strategy(Strategy{1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Strategy::from_h_probability(1.5), std::invalid_argument);
  const Strategy s = Strategy::from_h_probability(0.25);
  CHECK(s.amp_h.real() == 0.5);
  CHECK(s.is_normalized());

  SplitMix64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const Strategy r = testutil::random_strategy(rng);
    const Eigen::Matrix2cd u = strategy_unitary(r);
    CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(u(0, 0) == r.amp_h);
    CHECK(u(1, 0) == r.amp_v);
  }
}

TEST_CASE("run_pd pure-strategy corners") {
  const CircuitRun all_h = run_pd(Strategy{1.0, 0.0}, Strategy{1.0, 0.0});
  CHECK(all_h.success_probability == 1.0);
  CHECK_FALSE(all_h.post_selected);
  CHECK(all_h.output.terms.size() == 1);
  CHECK(std::abs(all_h.output.amplitude(occ({1, 0, 1, 0})) -
                 Complex{1.0, 0.0}) < 1e-12);

  // Alice plays V, Bob plays H: both photons reach Bob's output.
  const CircuitRun crossed = run_pd(Strategy{0.0, 1.0}, Strategy{1.0, 0.0});
  CHECK(crossed.output.terms.size() == 1);
  CHECK(std::abs(crossed.output.amplitude(occ({0, 0, 1, 1})) -
                 Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("run_pd balanced strategies spread over all four outcomes") {
  const CircuitRun run = run_pd(Strategy::balanced(), Strategy::balanced());
  REQUIRE(run.output.terms.size() == 4);
  for (const auto& [basis, amp] : run.output.terms)
    CHECK(std::abs(amp - Complex{0.5, 0.0}) < 1e-12);
}

TEST_CASE("run_pd matches the closed-form output for random strategies") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Strategy a = testutil::random_strategy(rng);
    const Strategy b = testutil::random_strategy(rng);
    const StateVector expected = testutil::dilemma_output_oracle(a, b);
    const StateVector actual = run_pd(a, b).output;
    CHECK(std::abs(std::abs(inner_product(expected, actual)) - 1.0) <= 1e-12);
    for (const auto& [basis, amp] : expected.terms)
      CHECK(std::abs(actual.amplitude(basis) - amp) <= 1e-12);
  }
}

TEST_CASE("run_pd outcome probabilities ignore strategy phases") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    const Strategy plain_a = Strategy::from_h_probability(x);
    const Strategy plain_b = Strategy::from_h_probability(y);
    const Complex pa = std::polar(1.0, 2.0 * rng.uniform());
    const Complex pb = std::polar(1.0, 2.0 * rng.uniform());
    const Complex pc = std::polar(1.0, 2.0 * rng.uniform());
    const Complex pd = std::polar(1.0, 2.0 * rng.uniform());
    const Strategy phased_a{plain_a.amp_h * pa, plain_a.amp_v * pb};
    const Strategy phased_b{plain_b.amp_h * pc, plain_b.amp_v * pd};

    const StateVector s1 = run_pd(plain_a, plain_b).output;
    const StateVector s2 = run_pd(phased_a, phased_b).output;
    for (const auto& [basis, amp] : s1.terms)
      CHECK(std::abs(std::norm(amp) - std::norm(s2.amplitude(basis))) <=
            1e-12);
  }
}

TEST_CASE("run_pd rejects unnormalized strategies") {
  CHECK_THROWS_AS(run_pd(Strategy{1.0, 1.0}, Strategy{1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("run_zs trivial and balanced cases") {
  const Strategy h{1.0, 0.0};
  const CircuitRun all_h = run_zs(h, h, h, h);
  CHECK(all_h.post_selected);
  CHECK(std::abs(all_h.success_probability - 1.0) < 1e-12);
  CHECK(all_h.output.terms.size() == 1);
  CHECK(std::abs(all_h.output.amplitude(occ({1, 0, 1, 0, 1, 0, 1, 0})) -
                 Complex{1.0, 0.0}) < 1e-12);

  const Strategy bal = Strategy::balanced();
  const CircuitRun balanced = run_zs(bal, bal, bal, bal);
  CHECK(std::abs(balanced.success_probability - 0.25) < 1e-12);
  REQUIRE(balanced.output.terms.size() == 4);
  for (const auto& [basis, amp] : balanced.output.terms)
    CHECK(std::abs(amp - Complex{0.5, 0.0}) < 1e-12);
}

TEST_CASE("run_zs agrees with the direct enumeration oracle") {
  SplitMix64 rng(314);
  for (int trial = 0; trial < 60; ++trial) {
    const Strategy a = testutil::random_strategy(rng);
    const Strategy b = testutil::random_strategy(rng);
    const Strategy anc_a = trial % 2 == 0 ? Strategy::balanced()
                                          : testutil::random_strategy(rng);
    const Strategy anc_b = trial % 2 == 0 ? Strategy::balanced()
                                          : testutil::random_strategy(rng);

    const auto [oracle_state, oracle_prob] =
        zs_enumeration_oracle(a, anc_a, b, anc_b);
    const CircuitRun run = run_zs(a, anc_a, b, anc_b);
    CHECK(std::abs(run.success_probability - oracle_prob) <= 1e-12);
    if (!oracle_state.empty()) {
      CHECK(std::abs(std::abs(inner_product(oracle_state, run.output)) - 1.0) <=
            1e-12);
      for (const auto& [basis, amp] : oracle_state.terms)
        CHECK(std::abs(run.output.amplitude(basis) - amp) <= 1e-12);
    } else {
      CHECK(run.output.empty());
    }
  }
}

TEST_CASE("run_zs with balanced ancillas realizes the two-pair target") {
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const Strategy a = testutil::random_real_strategy(rng);
    const Strategy b = testutil::random_real_strategy(rng);
    const CircuitRun run =
        run_zs(a, Strategy::balanced(), b, Strategy::balanced());
    const StateVector target = target_state(a, b);
    CHECK(std::abs(std::abs(inner_product(target, run.output)) - 1.0) <=
          1e-12);
  }
}

TEST_CASE("run_zs post-selected support is the four correlated patterns") {
  const std::set<FockState> allowed = {
      occ({1, 0, 1, 0, 1, 0, 1, 0}),   // all H
      occ({1, 0, 0, 1, 1, 0, 0, 1}),   // outputs 2 and 4 flipped
      occ({0, 1, 1, 0, 0, 1, 1, 0}),   // outputs 1 and 3 flipped
      occ({0, 1, 0, 1, 0, 1, 0, 1}),   // all V
  };
  SplitMix64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const Strategy a = testutil::random_strategy(rng);
    const Strategy b = testutil::random_strategy(rng);
    const Strategy anc_a = testutil::random_strategy(rng);
    const Strategy anc_b = testutil::random_strategy(rng);
    const CircuitRun run = run_zs(a, anc_a, b, anc_b);
    for (const auto& [basis, amp] : run.output.terms) {
      CHECK(allowed.count(basis) == 1);
      // Outputs (1,3) and (2,4) agree in polarization on every term.
      CHECK(basis.occ[0] == basis.occ[4]);
      CHECK(basis.occ[2] == basis.occ[6]);
    }
  }
}

TEST_CASE("run_zs coefficients are products of one amplitude per input") {
  SplitMix64 rng(77);
  const Strategy a = testutil::random_strategy(rng);
  const Strategy b = testutil::random_strategy(rng);
  const Strategy anc_a = testutil::random_strategy(rng);
  const Strategy anc_b = testutil::random_strategy(rng);

  const CircuitTrace trace =
      run_circuit(zs_circuit(a, anc_a, b, anc_b), zs_input());
  const StateVector& pre = trace.pre;
  CHECK(std::abs(pre.amplitude(occ({1, 0, 1, 0, 1, 0, 1, 0})) -
                 a.amp_h * b.amp_h * anc_a.amp_h * anc_b.amp_h) <= 1e-12);
  CHECK(std::abs(pre.amplitude(occ({1, 0, 0, 1, 1, 0, 0, 1})) -
                 a.amp_h * b.amp_v * anc_a.amp_h * anc_b.amp_v) <= 1e-12);
  CHECK(std::abs(pre.amplitude(occ({0, 1, 1, 0, 0, 1, 1, 0})) -
                 a.amp_v * b.amp_h * anc_a.amp_v * anc_b.amp_h) <= 1e-12);
  CHECK(std::abs(pre.amplitude(occ({0, 1, 0, 1, 0, 1, 0, 1})) -
                 a.amp_v * b.amp_v * anc_a.amp_v * anc_b.amp_v) <= 1e-12);
}

TEST_CASE("run_zs success plus failure-branch weight is one") {
  SplitMix64 rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const Strategy a = testutil::random_strategy(rng);
    const Strategy b = testutil::random_strategy(rng);
    const Strategy anc_a = testutil::random_strategy(rng);
    const Strategy anc_b = testutil::random_strategy(rng);
    const CircuitTrace trace =
        run_circuit(zs_circuit(a, anc_a, b, anc_b), zs_input());

    double failure = 0.0;
    for (const auto& [basis, amp] : trace.pre.terms) {
      bool one_each = true;
      for (int s = 0; s < 4; ++s)
        one_each = one_each && basis.photons_at(s) == 1;
      if (!one_each) failure += std::norm(amp);
    }
    CHECK(std::abs(trace.run.success_probability + failure - 1.0) <= 1e-10);
  }
}

TEST_CASE("run_zs flags a zero-probability selection as empty") {
  const CircuitRun run = run_zs(Strategy{1.0, 0.0}, Strategy{0.0, 1.0},
                                Strategy{1.0, 0.0}, Strategy::balanced());
  CHECK(run.success_probability == 0.0);
  CHECK(run.output.empty());
  CHECK(run.post_selected);
}

TEST_CASE("target_state structure") {
  const Strategy h{1.0, 0.0};
  const StateVector pure = target_state(h, h);
  CHECK(pure.terms.size() == 1);
  CHECK(std::abs(pure.amplitude(occ({1, 0, 1, 0, 1, 0, 1, 0})) -
                 Complex{1.0, 0.0}) < 1e-15);

  const StateVector half = target_state(Strategy::balanced(), h);
  REQUIRE(half.terms.size() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(half.amplitude(occ({1, 0, 1, 0, 1, 0, 1, 0})).real() - r) <
        1e-12);
  CHECK(std::abs(half.amplitude(occ({0, 1, 1, 0, 0, 1, 1, 0})).real() - r) <
        1e-12);

  const StateVector four =
      target_state(Strategy::balanced(), Strategy::balanced());
  REQUIRE(four.terms.size() == 4);
  for (const auto& [basis, amp] : four.terms)
    CHECK(std::abs(amp - Complex{0.5, 0.0}) < 1e-12);
}

TEST_CASE("run_circuit rejects loss elements and mode mismatches") {
  Circuit c;
  c.modes = 2;
  DeviceSpec loss;
  loss.kind = DeviceKind::Loss;
  loss.ports = {0};
  loss.eta = 0.5;
  c.elements = {loss};
  CHECK_THROWS_AS(run_circuit(c, pd_input()), std::invalid_argument);

  Circuit empty;
  empty.modes = 3;
  CHECK_THROWS_AS(run_circuit(empty, pd_input()), std::invalid_argument);
}
