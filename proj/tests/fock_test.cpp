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

#include "arena/fock.hpp"

#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"

using namespace arena;

namespace {

FockState occ(std::vector<int> v) { return FockState{std::move(v)}; }

// All ways of placing `total` photons into `parts` spatial modes.
void compositions(int total, int parts, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("single_photon basis states and superpositions") {
  const StateVector h = single_photon(2, 0, 1.0, 0.0);
  CHECK(h.terms.size() == 1);
  CHECK(h.amplitude(occ({1, 0, 0, 0})) == Complex{1.0, 0.0});

  const StateVector v = single_photon(2, 0, 0.0, 1.0);
  CHECK(v.amplitude(occ({0, 1, 0, 0})) == Complex{1.0, 0.0});

  const double r = 1.0 / std::sqrt(2.0);
  const StateVector bal = single_photon(2, 0, r, r);
  CHECK(std::abs(bal.amplitude(occ({1, 0, 0, 0})).real() - r) < 1e-15);
  CHECK(std::abs(bal.amplitude(occ({0, 1, 0, 0})).real() - r) < 1e-15);
  CHECK(bal.is_normalized());
  CHECK(bal.total_photons() == 1);
}

TEST_CASE("single_photon validation") {
  CHECK_THROWS_AS(single_photon(2, 0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(single_photon(2, 2, 1.0, 0.0), std::out_of_range);
  CHECK_THROWS_AS(single_photon(2, -1, 1.0, 0.0), std::out_of_range);
}

TEST_CASE("tensor of basis photons") {
  const StateVector hh = tensor(
      {single_photon(1, 0, 1.0, 0.0), single_photon(1, 0, 1.0, 0.0)});
  CHECK(hh.modes == 2);
  CHECK(hh.terms.size() == 1);
  CHECK(hh.amplitude(occ({1, 0, 1, 0})) == Complex{1.0, 0.0});
}

TEST_CASE("tensor multiplies amplitudes slot by slot") {
  SplitMix64 rng(11);
  const Strategy a = testutil::random_strategy(rng);
  const Strategy b = testutil::random_strategy(rng);
  const StateVector prod = tensor({single_photon(1, 0, a.amp_h, a.amp_v),
                                   single_photon(1, 0, b.amp_h, b.amp_v)});
  CHECK(prod.terms.size() == 4);
  CHECK(std::abs(prod.amplitude(occ({1, 0, 1, 0})) - a.amp_h * b.amp_h) <
        1e-15);
  CHECK(std::abs(prod.amplitude(occ({1, 0, 0, 1})) - a.amp_h * b.amp_v) <
        1e-15);
  CHECK(std::abs(prod.amplitude(occ({0, 1, 1, 0})) - a.amp_v * b.amp_h) <
        1e-15);
  CHECK(std::abs(prod.amplitude(occ({0, 1, 0, 1})) - a.amp_v * b.amp_v) <
        1e-15);
  CHECK(prod.is_normalized());
}

TEST_CASE("tensor of four balanced photons expands to 16 equal terms") {
  const double r = 1.0 / std::sqrt(2.0);
  const StateVector one = single_photon(1, 0, r, r);
  const StateVector prod = tensor({one, one, one, one});
  CHECK(prod.modes == 4);
  CHECK(prod.terms.size() == 16);
  for (const auto& [basis, amp] : prod.terms) {
    CHECK(basis.total() == 4);
    CHECK(std::abs(amp - Complex{0.25, 0.0}) < 1e-12);
  }
  CHECK(std::abs(prod.norm() - 1.0) < 1e-12);
}

TEST_CASE("tensor enforces the photon capacity") {
  const StateVector one = single_photon(1, 0, 1.0, 0.0);
  CHECK_THROWS_AS(tensor({one, one, one, one, one}), std::invalid_argument);
  CHECK_NOTHROW(tensor({one, one, one, one, one}, 5));
}

TEST_CASE("apply_unitary identity and single-photon rotation") {
  const StateVector h = single_photon(1, 0, 1.0, 0.0);
  const ModeUnitary id{Eigen::MatrixXcd::Identity(2, 2)};
  CHECK(std::abs(inner_product(apply_unitary(h, id), h) - 1.0) < 1e-15);

  Eigen::MatrixXcd had(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  had << r, r, r, -r;
  const StateVector rotated = apply_unitary(h, ModeUnitary{had});
  CHECK(std::abs(rotated.amplitude(occ({1, 0})).real() - r) < 1e-12);
  CHECK(std::abs(rotated.amplitude(occ({0, 1})).real() - r) < 1e-12);
}

TEST_CASE("apply_unitary routes two photons into one mode without spurious "
          "bosonic factors") {
  // Channel swap (0,V) <-> (1,V) on |H>|V>: both photons end up in the
  // first spatial mode and the amplitude must stay exactly 1.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  m(1, 1) = 0.0;
  m(3, 3) = 0.0;
  m(1, 3) = 1.0;
  m(3, 1) = 1.0;
  const StateVector in = tensor(
      {single_photon(1, 0, 1.0, 0.0), single_photon(1, 0, 0.0, 1.0)});
  const StateVector out = apply_unitary(in, ModeUnitary{std::move(m)});
  CHECK(out.terms.size() == 1);
  CHECK(std::abs(out.amplitude(occ({1, 1, 0, 0})) - Complex{1.0, 0.0}) <
        1e-12);
}

TEST_CASE("apply_unitary validates dimensions and unitarity") {
  const StateVector h = single_photon(2, 0, 1.0, 0.0);
  CHECK_THROWS_AS(apply_unitary(h, ModeUnitary{Eigen::MatrixXcd::Identity(2, 2)}),
                  std::invalid_argument);
  Eigen::MatrixXcd not_unitary = Eigen::MatrixXcd::Identity(4, 4);
  not_unitary(0, 0) = 2.0;
  CHECK_THROWS_AS(ModeUnitary{std::move(not_unitary)}, std::invalid_argument);
}

TEST_CASE("unitarity, photon conservation and composition over random "
          "circuits") {
  SplitMix64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const int modes = 1 + static_cast<int>(rng.next() % 3);
    const int photons = 1 + static_cast<int>(rng.next() % 4);
    const int terms = 1 + static_cast<int>(rng.next() % 5);
    const StateVector s = testutil::random_state(modes, photons, terms, rng);
    const ModeUnitary u{testutil::random_unitary(2 * modes, rng)};
    const ModeUnitary v{testutil::random_unitary(2 * modes, rng)};

    const StateVector su = apply_unitary(s, u);
    CHECK(std::abs(su.norm() - 1.0) <= 1e-10);
    for (const auto& [basis, amp] : su.terms)
      CHECK(basis.total() == photons);

    const StateVector two_step = apply_unitary(su, v);
    const StateVector fused =
        apply_unitary(s, ModeUnitary{v.matrix() * u.matrix()});
    for (const auto& [basis, amp] : fused.terms)
      CHECK(std::abs(two_step.amplitude(basis) - amp) <= 1e-10);
    for (const auto& [basis, amp] : two_step.terms)
      CHECK(std::abs(fused.amplitude(basis) - amp) <= 1e-10);
  }
}

TEST_CASE("post_select keeps matching branches and reports the probability") {
  const StateVector hh = tensor(
      {single_photon(1, 0, 1.0, 0.0), single_photon(1, 0, 1.0, 0.0)});
  const PostSelection keep_all = post_select(hh, {1, 1});
  CHECK(keep_all.probability == 1.0);
  CHECK(std::abs(inner_product(keep_all.state, hh) - 1.0) < 1e-15);

  // Balanced dilemma output: four terms of amplitude 1/2; exactly the
  // |HH> and |VV> branches have one photon per mode, so the enumerated
  // probability is 1/4 + 1/4.
  StateVector four{2, {}};
  four.terms[occ({1, 0, 1, 0})] = 0.5;
  four.terms[occ({0, 1, 0, 1})] = 0.5;
  four.terms[occ({1, 1, 0, 0})] = 0.5;
  four.terms[occ({0, 0, 1, 1})] = 0.5;
  const PostSelection sel = post_select(four, {1, 1});
  CHECK(std::abs(sel.probability - 0.5) < 1e-12);
  CHECK(sel.state.terms.size() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(sel.state.amplitude(occ({1, 0, 1, 0})).real() - r) < 1e-12);
  CHECK(std::abs(sel.state.amplitude(occ({0, 1, 0, 1})).real() - r) < 1e-12);

  StateVector both_left{2, {}};
  both_left.terms[occ({1, 1, 0, 0})] = 1.0;
  const PostSelection none = post_select(both_left, {1, 1});
  CHECK(none.probability == 0.0);
  CHECK(none.state.empty());

  CHECK_THROWS_AS(post_select(hh, {1}), std::invalid_argument);
}

TEST_CASE("post_select probabilities over an exhaustive pattern family sum "
          "to one") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int modes = 2 + static_cast<int>(rng.next() % 2);
    const int photons = 1 + static_cast<int>(rng.next() % 4);
    const StateVector s = testutil::random_state(modes, photons, 6, rng);
    std::vector<std::vector<int>> patterns;
    std::vector<int> cur;
    compositions(photons, modes, cur, patterns);
    double total = 0.0;
    for (const auto& pattern : patterns)
      total += post_select(s, pattern).probability;
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("inner_product basics") {
  const StateVector hh = tensor(
      {single_photon(1, 0, 1.0, 0.0), single_photon(1, 0, 1.0, 0.0)});
  const StateVector vv = tensor(
      {single_photon(1, 0, 0.0, 1.0), single_photon(1, 0, 0.0, 1.0)});
  CHECK(inner_product(hh, hh) == Complex{1.0, 0.0});
  CHECK(inner_product(hh, vv) == Complex{0.0, 0.0});

  SplitMix64 rng(3);
  const StateVector a = testutil::random_state(2, 2, 4, rng);
  const StateVector b = testutil::random_state(2, 2, 4, rng);
  CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) <
        1e-14);
  CHECK(std::abs(inner_product(a, a) - 1.0) < 1e-12);

  CHECK_THROWS_AS(inner_product(hh, single_photon(1, 0, 1.0, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("state JSON round-trips exactly and keeps canonical order") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const StateVector s = testutil::random_state(2, 3, 5, rng);
    const nlohmann::json j = state_to_json(s);
    const StateVector back = state_from_json(j);
    CHECK(back.modes == s.modes);
    REQUIRE(back.terms.size() == s.terms.size());
    auto it = s.terms.begin();
    for (const auto& [basis, amp] : back.terms) {
      CHECK(basis == it->first);   // identical canonical ordering
      CHECK(amp == it->second);    // bit-exact amplitudes
      ++it;
    }
    // Serialized term order is the map order.
    int idx = 0;
    for (const auto& [basis, amp] : s.terms) {
      CHECK(j["terms"][idx]["occ"].get<std::vector<int>>() == basis.occ);
      ++idx;
    }
  }
}

TEST_CASE("state JSON rejects malformed input") {
  nlohmann::json bad = {{"modes", 1},
                        {"terms", {{{"occ", {1}}, {"re", 1.0}, {"im", 0.0}}}}};
  CHECK_THROWS_AS(state_from_json(bad), std::invalid_argument);

  nlohmann::json dup = {{"modes", 1},
                        {"terms",
                         {{{"occ", {1, 0}}, {"re", 1.0}, {"im", 0.0}},
                          {{"occ", {1, 0}}, {"re", 0.0}, {"im", 1.0}}}}};
  CHECK_THROWS_AS(state_from_json(dup), std::invalid_argument);

  nlohmann::json mixed = {{"modes", 1},
                          {"terms",
                           {{{"occ", {1, 0}}, {"re", 1.0}, {"im", 0.0}},
                            {{"occ", {1, 1}}, {"re", 0.0}, {"im", 1.0}}}}};
  CHECK_THROWS_AS(state_from_json(mixed), std::invalid_argument);
}

TEST_CASE("polarized mode channel ordering is spatial-major, H before V") {
  CHECK(PolarizedMode{0, Polarization::H}.channel() == 0);
  CHECK(PolarizedMode{0, Polarization::V}.channel() == 1);
  CHECK(PolarizedMode{3, Polarization::V}.channel() == 7);
  CHECK(PolarizedMode::from_channel(5) ==
        PolarizedMode{2, Polarization::V});
}
