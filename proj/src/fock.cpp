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

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace arena {

namespace {

double factorial(int n) {
  // Occupations stay tiny (a handful of photons); 170! would overflow
  // long before this table runs out.
  static constexpr double table[] = {1.0,    1.0,     2.0,      6.0,
                                     24.0,   120.0,   720.0,    5040.0,
                                     40320.0, 362880.0, 3628800.0};
  if (n < 0 || n >= static_cast<int>(std::size(table)))
    throw std::out_of_range("factorial: occupation out of supported range");
  return table[n];
}

double monomial_norm(const std::vector<int>& occ) {
  double p = 1.0;
  for (int n : occ) p *= factorial(n);
  return p;
}

}  // namespace

int FockState::total() const {
  return std::accumulate(occ.begin(), occ.end(), 0);
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& [basis, amp] : terms) s += std::norm(amp);
  return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0)
    throw std::invalid_argument("StateVector: cannot normalize a zero state");
  StateVector out{modes, {}};
  for (const auto& [basis, amp] : terms) out.terms.emplace(basis, amp / n);
  return out;
}

Complex StateVector::amplitude(const FockState& basis) const {
  auto it = terms.find(basis);
  return it == terms.end() ? Complex{0.0, 0.0} : it->second;
}

int StateVector::total_photons() const {
  return terms.empty() ? -1 : terms.begin()->first.total();
}

ModeUnitary::ModeUnitary(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    throw std::invalid_argument("ModeUnitary: matrix must be square");
  if (matrix_.rows() % 2 != 0)
    throw std::invalid_argument(
        "ModeUnitary: dimension must be 2 x spatial mode count");
  const Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
  const double drift =
      (gram - Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (drift > kValidationTol)
    throw std::invalid_argument("ModeUnitary: matrix is not unitary (drift " +
                                std::to_string(drift) + ")");
}

StateVector single_photon(int mode_count, int spatial, Complex amp_h,
                          Complex amp_v) {
  if (mode_count <= 0)
    throw std::invalid_argument("single_photon: mode_count must be positive");
  if (spatial < 0 || spatial >= mode_count)
    throw std::out_of_range("single_photon: spatial mode out of range");
  const double n2 = std::norm(amp_h) + std::norm(amp_v);
  if (std::abs(n2 - 1.0) > kValidationTol)
    throw std::invalid_argument(
        "single_photon: amplitudes are not normalized");

  StateVector out{mode_count, {}};
  const int channels = 2 * mode_count;
  if (std::abs(amp_h) >= kPruneTol) {
    FockState basis{std::vector<int>(channels, 0)};
    basis.occ[2 * spatial] = 1;
    out.terms.emplace(std::move(basis), amp_h);
  }
  if (std::abs(amp_v) >= kPruneTol) {
    FockState basis{std::vector<int>(channels, 0)};
    basis.occ[2 * spatial + 1] = 1;
    out.terms.emplace(std::move(basis), amp_v);
  }
  return out;
}

StateVector tensor(const std::vector<StateVector>& states, int max_photons) {
  int modes = 0;
  for (const auto& s : states) modes += s.modes;

  std::map<FockState, Complex> acc;
  acc.emplace(FockState{{}}, Complex{1.0, 0.0});
  for (const auto& s : states) {
    std::map<FockState, Complex> next;
    for (const auto& [left, la] : acc) {
      for (const auto& [right, ra] : s.terms) {
        FockState combined{left.occ};
        combined.occ.insert(combined.occ.end(), right.occ.begin(),
                            right.occ.end());
        if (combined.total() > max_photons)
          throw std::invalid_argument(
              "tensor: combined photon number exceeds capacity");
        const Complex amp = la * ra;
        if (std::abs(amp) >= kPruneTol)
          next[std::move(combined)] += amp;
      }
    }
    acc = std::move(next);
  }
  return StateVector{modes, std::move(acc)};
}

StateVector apply_unitary(const StateVector& state, const ModeUnitary& u) {
  if (u.spatial_modes() != state.modes)
    throw std::invalid_argument(
        "apply_unitary: unitary dimension does not match the state");
  const Eigen::MatrixXcd& m = u.matrix();
  const int channels = 2 * state.modes;

  std::map<FockState, Complex> out;
  for (const auto& [basis, amp] : state.terms) {
    // Work with raw creation-operator monomials: |n> carries a
    // 1/sqrt(prod n_j!) factor relative to prod (a†_j)^{n_j} |0>.
    std::map<std::vector<int>, Complex> poly;
    poly.emplace(std::vector<int>(channels, 0),
                 amp / std::sqrt(monomial_norm(basis.occ)));
    for (int src = 0; src < channels; ++src) {
      for (int photon = 0; photon < basis.occ[src]; ++photon) {
        std::map<std::vector<int>, Complex> next;
        for (const auto& [mono, coeff] : poly) {
          for (int dst = 0; dst < channels; ++dst) {
            const Complex w = m(dst, src);
            if (w == Complex{0.0, 0.0}) continue;
            std::vector<int> grown = mono;
            ++grown[dst];
            next[std::move(grown)] += coeff * w;
          }
        }
        poly = std::move(next);
      }
    }
    for (const auto& [mono, coeff] : poly)
      out[FockState{mono}] += coeff * std::sqrt(monomial_norm(mono));
  }

  StateVector result{state.modes, {}};
  for (auto& [basis, amp] : out)
    if (std::abs(amp) >= kPruneTol) result.terms.emplace(basis, amp);
  return result;
}

PostSelection post_select(const StateVector& state,
                          const std::vector<int>& photons_per_mode) {
  if (static_cast<int>(photons_per_mode.size()) != state.modes)
    throw std::invalid_argument(
        "post_select: pattern must cover every spatial mode");

  StateVector kept{state.modes, {}};
  double prob = 0.0;
  for (const auto& [basis, amp] : state.terms) {
    bool match = true;
    for (int s = 0; s < state.modes && match; ++s)
      match = basis.photons_at(s) == photons_per_mode[s];
    if (match) {
      prob += std::norm(amp);
      kept.terms.emplace(basis, amp);
    }
  }
  if (kept.terms.empty() || prob <= 0.0)
    return {StateVector{state.modes, {}}, 0.0};

  const double inv = 1.0 / std::sqrt(prob);
  for (auto& [basis, amp] : kept.terms) amp *= inv;
  return {std::move(kept), std::min(prob, 1.0)};
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.modes != b.modes)
    throw std::invalid_argument("inner_product: mode counts differ");
  Complex acc{0.0, 0.0};
  for (const auto& [basis, amp] : a.terms) {
    auto it = b.terms.find(basis);
    if (it != b.terms.end()) acc += std::conj(amp) * it->second;
  }
  return acc;
}

nlohmann::json state_to_json(const StateVector& state) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [basis, amp] : state.terms)
    terms.push_back({{"occ", basis.occ},
                     {"re", amp.real()},
                     {"im", amp.imag()}});
  return {{"modes", state.modes}, {"terms", std::move(terms)}};
}

StateVector state_from_json(const nlohmann::json& j) {
  StateVector out{j.at("modes").get<int>(), {}};
  if (out.modes < 0)
    throw std::invalid_argument("state_from_json: negative mode count");
  int expected_total = -1;
  for (const auto& term : j.at("terms")) {
    FockState basis{term.at("occ").get<std::vector<int>>()};
    if (static_cast<int>(basis.occ.size()) != 2 * out.modes)
      throw std::invalid_argument(
          "state_from_json: occupation length does not match mode count");
    for (int n : basis.occ)
      if (n < 0)
        throw std::invalid_argument(
            "state_from_json: negative occupation number");
    if (expected_total < 0) expected_total = basis.total();
    if (basis.total() != expected_total)
      throw std::invalid_argument(
          "state_from_json: mixed total photon numbers");
    const Complex amp{term.at("re").get<double>(), term.at("im").get<double>()};
    if (!out.terms.emplace(std::move(basis), amp).second)
      throw std::invalid_argument("state_from_json: duplicate basis state");
  }
  return out;
}

}  // namespace arena
