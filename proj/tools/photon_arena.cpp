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

#include <cerrno>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arena/circuits.hpp"
#include "arena/detection.hpp"
#include "arena/engine.hpp"
#include "arena/io_util.hpp"
#include "arena/scan.hpp"

namespace {

using arena::fmt12;

std::uint64_t env_default_seed() {
  const char* env = std::getenv("PHOTON_ARENA_SEED");
  if (env == nullptr || *env == '\0') return 0;
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0')
    throw std::invalid_argument(
        "PHOTON_ARENA_SEED must be an unsigned 64-bit integer");
  return value;
}

// "a,b" (two reals) or "ar,ai,br,bi" (two complex amplitudes).
arena::Strategy parse_strategy(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("strategy: cannot parse '" + item + "'");
    }
    if (used != item.size())
      throw std::invalid_argument("strategy: cannot parse '" + item + "'");
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  arena::Strategy s;
  if (values.size() == 2) {
    s = {arena::Complex{values[0], 0.0}, arena::Complex{values[1], 0.0}};
  } else if (values.size() == 4) {
    s = {arena::Complex{values[0], values[1]},
         arena::Complex{values[2], values[3]}};
  } else {
    throw std::invalid_argument(
        "strategy: expected 2 real or 4 (re,im) comma-separated numbers");
  }
  arena::validate_strategy(s);
  return s;
}

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  const nlohmann::json j = nlohmann::json::parse(arena::read_file(path));
  if (!j.is_object())
    throw std::invalid_argument("config: top-level JSON object expected");
  return j;
}

// Flags beat config values beat built-in defaults.
template <typename T>
void config_fallback(const CLI::Option* opt, const nlohmann::json& cfg,
                     const char* key, T& value) {
  if (opt->count() == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

void apply_seed_default(const CLI::Option* opt, const nlohmann::json& cfg,
                        std::uint64_t& seed) {
  if (opt->count() == 0 && cfg.contains("seed"))
    seed = cfg.at("seed").get<std::uint64_t>();
  else if (opt->count() == 0)
    seed = env_default_seed();
}

nlohmann::ordered_json strategy_json(const arena::Strategy& s) {
  return {{s.amp_h.real(), s.amp_h.imag()}, {s.amp_v.real(), s.amp_v.imag()}};
}

arena::CellPredicate parse_cell(const std::string& name) {
  if (name == "HH") return {0, 0, true, true};
  if (name == "HV") return {0, 1, true, true};
  if (name == "VH") return {1, 0, true, true};
  if (name == "VV") return {1, 1, true, true};
  throw std::invalid_argument("cell must be one of HH, HV, VH, VV");
}

void print_weights(double x, double y) {
  static const char* names[2][2] = {{"HH", "HV"}, {"VH", "VV"}};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      std::cout << names[r][c] << " "
                << fmt12((r == 0 ? x : 1.0 - x) * (c == 0 ? y : 1.0 - y))
                << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "photon-arena: exact few-photon simulator and analyzer for two "
      "polarization-encoded optical games"};
  app.require_subcommand(1);

  // pd-expected -------------------------------------------------------
  auto* pde = app.add_subcommand(
      "pd-expected", "Exact average dilemma payoffs for H-probabilities x, y");
  struct {
    double x = 0.0, y = 0.0;
    std::string config;
  } pde_opt;
  auto* pde_x = pde->add_option("--x", pde_opt.x, "Alice's H-probability");
  auto* pde_y = pde->add_option("--y", pde_opt.y, "Bob's H-probability");
  pde->add_option("--config", pde_opt.config, "JSON config file");
  pde->callback([&] {
    const auto cfg = load_config(pde_opt.config);
    config_fallback(pde_x, cfg, "x", pde_opt.x);
    config_fallback(pde_y, cfg, "y", pde_opt.y);
    const auto [ea, eb] = arena::pd_expected(pde_opt.x, pde_opt.y);
    std::cout << fmt12(ea) << " " << fmt12(eb) << "\n";
    print_weights(pde_opt.x, pde_opt.y);
  });

  // pd-sample ---------------------------------------------------------
  auto* pds = app.add_subcommand(
      "pd-sample", "Monte Carlo dilemma match; writes a MatchReport JSON");
  struct {
    double x = 0.0, y = 0.0, eta = 1.0, dark = 0.0;
    long long trials = 10000;
    std::uint64_t seed = 0;
    std::string out = "pd_report.json";
    std::string config;
  } pds_opt;
  auto* pds_x = pds->add_option("--x", pds_opt.x, "Alice's H-probability");
  auto* pds_y = pds->add_option("--y", pds_opt.y, "Bob's H-probability");
  auto* pds_t =
      pds->add_option("--trials", pds_opt.trials, "number of runs");
  auto* pds_seed = pds->add_option("--seed", pds_opt.seed, "base RNG seed");
  auto* pds_eta =
      pds->add_option("--eta", pds_opt.eta, "detector efficiency in [0,1]");
  auto* pds_dark = pds->add_option("--dark", pds_opt.dark,
                                   "dark count probability per detector");
  auto* pds_out = pds->add_option("--out", pds_opt.out, "report file path");
  pds->add_option("--config", pds_opt.config, "JSON config file");
  pds->callback([&] {
    const auto cfg = load_config(pds_opt.config);
    config_fallback(pds_x, cfg, "x", pds_opt.x);
    config_fallback(pds_y, cfg, "y", pds_opt.y);
    config_fallback(pds_t, cfg, "trials", pds_opt.trials);
    config_fallback(pds_eta, cfg, "eta", pds_opt.eta);
    config_fallback(pds_dark, cfg, "dark", pds_opt.dark);
    config_fallback(pds_out, cfg, "out", pds_opt.out);
    apply_seed_default(pds_seed, cfg, pds_opt.seed);

    arena::DetectorModel model;
    model.efficiency = pds_opt.eta;
    model.dark_count_prob = pds_opt.dark;
    const auto report = arena::monte_carlo_pd(
        arena::Strategy::from_h_probability(pds_opt.x),
        arena::Strategy::from_h_probability(pds_opt.y), pds_opt.trials,
        pds_opt.seed, model);
    arena::write_file_atomic(pds_opt.out, report.to_json().dump(2) + "\n");
    if (report.mean_payoff)
      std::cout << "mean payoff " << fmt12(report.mean_payoff->first) << " "
                << fmt12(report.mean_payoff->second) << " (inconclusive "
                << report.inconclusive << ")\n";
    else
      std::cout << "no conclusive runs (inconclusive " << report.inconclusive
                << ")\n";
    std::cout << "report written to " << pds_opt.out << "\n";
  });

  // zs-prob -----------------------------------------------------------
  auto* zsp = app.add_subcommand(
      "zs-prob", "Zero-sum win probabilities for H-probabilities pa, pc");
  struct {
    double pa = 0.0, pc = 0.0;
    std::string config;
  } zsp_opt;
  auto* zsp_pa =
      zsp->add_option("--pa", zsp_opt.pa, "player A's H-probability");
  auto* zsp_pc =
      zsp->add_option("--pc", zsp_opt.pc, "player B's H-probability");
  zsp->add_option("--config", zsp_opt.config, "JSON config file");
  zsp->callback([&] {
    const auto cfg = load_config(zsp_opt.config);
    config_fallback(zsp_pa, cfg, "pa", zsp_opt.pa);
    config_fallback(zsp_pc, cfg, "pc", zsp_opt.pc);
    const auto [p_a, p_b] = arena::zs_win_probability(zsp_opt.pa, zsp_opt.pc);
    std::cout << fmt12(p_a) << " " << fmt12(p_b) << "\n";
  });

  // zs-sample ---------------------------------------------------------
  auto* zss = app.add_subcommand(
      "zs-sample", "Monte Carlo zero-sum match; writes a MatchReport JSON");
  struct {
    double pa = 0.0, pc = 0.0, anc_a = 0.5, anc_b = 0.5;
    double eta = 1.0, dark = 0.0;
    long long trials = 10000;
    std::uint64_t seed = 0;
    std::string out = "zs_report.json";
    std::string config;
  } zss_opt;
  auto* zss_pa =
      zss->add_option("--pa", zss_opt.pa, "player A's H-probability");
  auto* zss_pc =
      zss->add_option("--pc", zss_opt.pc, "player B's H-probability");
  auto* zss_aa = zss->add_option("--ancilla-a", zss_opt.anc_a,
                                 "A-side ancilla H-probability");
  auto* zss_ab = zss->add_option("--ancilla-b", zss_opt.anc_b,
                                 "B-side ancilla H-probability");
  auto* zss_t = zss->add_option("--trials", zss_opt.trials, "number of runs");
  auto* zss_seed = zss->add_option("--seed", zss_opt.seed, "base RNG seed");
  auto* zss_eta =
      zss->add_option("--eta", zss_opt.eta, "detector efficiency in [0,1]");
  auto* zss_dark = zss->add_option("--dark", zss_opt.dark,
                                   "dark count probability per detector");
  auto* zss_out = zss->add_option("--out", zss_opt.out, "report file path");
  zss->add_option("--config", zss_opt.config, "JSON config file");
  zss->callback([&] {
    const auto cfg = load_config(zss_opt.config);
    config_fallback(zss_pa, cfg, "pa", zss_opt.pa);
    config_fallback(zss_pc, cfg, "pc", zss_opt.pc);
    config_fallback(zss_aa, cfg, "ancilla-a", zss_opt.anc_a);
    config_fallback(zss_ab, cfg, "ancilla-b", zss_opt.anc_b);
    config_fallback(zss_t, cfg, "trials", zss_opt.trials);
    config_fallback(zss_eta, cfg, "eta", zss_opt.eta);
    config_fallback(zss_dark, cfg, "dark", zss_opt.dark);
    config_fallback(zss_out, cfg, "out", zss_opt.out);
    apply_seed_default(zss_seed, cfg, zss_opt.seed);

    arena::DetectorModel model;
    model.efficiency = zss_opt.eta;
    model.dark_count_prob = zss_opt.dark;
    const auto report = arena::monte_carlo_zs(
        arena::Strategy::from_h_probability(zss_opt.pa),
        arena::Strategy::from_h_probability(zss_opt.anc_a),
        arena::Strategy::from_h_probability(zss_opt.pc),
        arena::Strategy::from_h_probability(zss_opt.anc_b), zss_opt.trials,
        zss_opt.seed, model);
    arena::write_file_atomic(zss_opt.out, report.to_json().dump(2) + "\n");
    if (report.win_freq_a)
      std::cout << "win freq A " << fmt12(*report.win_freq_a)
                << " (success rate " << fmt12(*report.success_rate)
                << ", inconclusive " << report.inconclusive << ")\n";
    else
      std::cout << "no conclusive runs (inconclusive " << report.inconclusive
                << ")\n";
    std::cout << "report written to " << zss_opt.out << "\n";
  });

  // scan ---------------------------------------------------------------
  auto* scn = app.add_subcommand(
      "scan",
      "Grid scan of the strategy square; writes a region report (JSON), "
      "optionally the full per-point CSV and an SVG heatmap");
  struct {
    int n = 1000;
    bool weak = false;
    std::string report = "scan_regions.json";
    std::string csv;
    std::string svg;
    std::string svg_cell = "VV";
    std::string config;
  } scn_opt;
  auto* scn_n = scn->add_option("--n", scn_opt.n, "grid size (>= 2)");
  auto* scn_weak = scn->add_flag(
      "--weak", scn_opt.weak,
      "tolerate payoff ties in equilibrium deviation tests (default strict)");
  auto* scn_rep =
      scn->add_option("--report", scn_opt.report, "region report JSON path");
  auto* scn_csv =
      scn->add_option("--csv", scn_opt.csv, "per-point classification CSV");
  auto* scn_svg = scn->add_option("--svg", scn_opt.svg, "heatmap SVG path");
  auto* scn_cell = scn->add_option("--svg-cell", scn_opt.svg_cell,
                                   "cell for the heatmap (HH, HV, VH, VV)");
  scn->add_option("--config", scn_opt.config, "JSON config file");
  scn->callback([&] {
    const auto cfg = load_config(scn_opt.config);
    config_fallback(scn_n, cfg, "n", scn_opt.n);
    config_fallback(scn_weak, cfg, "weak", scn_opt.weak);
    config_fallback(scn_rep, cfg, "report", scn_opt.report);
    config_fallback(scn_csv, cfg, "csv", scn_opt.csv);
    config_fallback(scn_svg, cfg, "svg", scn_opt.svg);
    config_fallback(scn_cell, cfg, "svg-cell", scn_opt.svg_cell);

    const auto grid = arena::scan(
        scn_opt.n, arena::PayoffTable::prisoners_dilemma(), !scn_opt.weak);
    const auto report = arena::build_region_report(grid);
    arena::write_file_atomic(scn_opt.report, report.to_json().dump(2) + "\n");
    if (!scn_opt.csv.empty())
      arena::write_file_atomic(scn_opt.csv, arena::scan_csv(grid));
    if (!scn_opt.svg.empty())
      arena::write_file_atomic(
          scn_opt.svg,
          arena::heatmap_svg(grid, parse_cell(scn_opt.svg_cell)));

    for (const auto& entry : report.entries) {
      std::cout << entry.notion << " | " << entry.predicate << ":";
      for (const auto& iv : entry.intervals)
        std::cout << " [" << fmt12(iv.lo) << ", " << fmt12(iv.hi) << "]";
      std::cout << " | agreement";
      for (bool ok : entry.agreement) std::cout << " " << (ok ? 1 : 0);
      std::cout << "\n";
    }
    std::cout << "report written to " << scn_opt.report << "\n";
  });

  // circuit-dump --------------------------------------------------------
  auto* dump = app.add_subcommand(
      "circuit-dump",
      "Emit the pre- and post-selection state vectors for a game circuit");
  struct {
    std::string game = "pd";
    std::string alice = "1,0";
    std::string bob = "1,0";
    std::string ancilla_a;  // empty = balanced
    std::string ancilla_b;
    std::string out = "circuit_dump.json";
    std::string dist_csv;
    std::string config;
  } dmp_opt;
  auto* dmp_game = dump->add_option("--game", dmp_opt.game, "pd or zs");
  auto* dmp_alice = dump->add_option(
      "--alice", dmp_opt.alice, "first player amplitudes 'a,b' or 'ar,ai,br,bi'");
  auto* dmp_bob =
      dump->add_option("--bob", dmp_opt.bob, "second player amplitudes");
  auto* dmp_aa = dump->add_option("--ancilla-a", dmp_opt.ancilla_a,
                                  "A-side ancilla amplitudes (default balanced)");
  auto* dmp_ab = dump->add_option("--ancilla-b", dmp_opt.ancilla_b,
                                  "B-side ancilla amplitudes (default balanced)");
  auto* dmp_out = dump->add_option("--out", dmp_opt.out, "output JSON path");
  auto* dmp_csv = dump->add_option("--distribution-csv", dmp_opt.dist_csv,
                                   "also write the click-pattern CSV");
  dump->add_option("--config", dmp_opt.config, "JSON config file");
  dump->callback([&] {
    const auto cfg = load_config(dmp_opt.config);
    config_fallback(dmp_game, cfg, "game", dmp_opt.game);
    config_fallback(dmp_alice, cfg, "alice", dmp_opt.alice);
    config_fallback(dmp_bob, cfg, "bob", dmp_opt.bob);
    config_fallback(dmp_aa, cfg, "ancilla-a", dmp_opt.ancilla_a);
    config_fallback(dmp_ab, cfg, "ancilla-b", dmp_opt.ancilla_b);
    config_fallback(dmp_out, cfg, "out", dmp_opt.out);
    config_fallback(dmp_csv, cfg, "distribution-csv", dmp_opt.dist_csv);

    const arena::Strategy alice = parse_strategy(dmp_opt.alice);
    const arena::Strategy bob = parse_strategy(dmp_opt.bob);

    arena::CircuitTrace trace;
    nlohmann::ordered_json strategies;
    if (dmp_opt.game == "pd") {
      trace = arena::run_circuit(arena::pd_circuit(alice, bob),
                                 arena::pd_input());
      strategies = {{"alice", strategy_json(alice)},
                    {"bob", strategy_json(bob)}};
    } else if (dmp_opt.game == "zs") {
      const arena::Strategy anc_a = dmp_opt.ancilla_a.empty()
                                        ? arena::Strategy::balanced()
                                        : parse_strategy(dmp_opt.ancilla_a);
      const arena::Strategy anc_b = dmp_opt.ancilla_b.empty()
                                        ? arena::Strategy::balanced()
                                        : parse_strategy(dmp_opt.ancilla_b);
      trace = arena::run_circuit(arena::zs_circuit(alice, anc_a, bob, anc_b),
                                 arena::zs_input());
      strategies = {{"player_a", strategy_json(alice)},
                    {"ancilla_a", strategy_json(anc_a)},
                    {"player_b", strategy_json(bob)},
                    {"ancilla_b", strategy_json(anc_b)}};
    } else {
      throw std::invalid_argument("circuit-dump: --game must be pd or zs");
    }

    nlohmann::ordered_json j;
    j["game"] = dmp_opt.game;
    j["strategies"] = std::move(strategies);
    j["success_probability"] = trace.run.success_probability;
    j["post_selected"] = trace.run.post_selected;
    j["pre"] = arena::state_to_json(trace.pre);
    if (trace.run.post_selected && !trace.run.output.empty())
      j["post"] = arena::state_to_json(trace.run.output);
    else
      j["post"] = nullptr;
    arena::write_file_atomic(dmp_opt.out, j.dump(2) + "\n");

    if (!dmp_opt.dist_csv.empty()) {
      const arena::StateVector& measured =
          trace.run.output.empty() ? trace.pre : trace.run.output;
      arena::write_file_atomic(
          dmp_opt.dist_csv,
          arena::distribution_csv(arena::outcome_distribution(measured)));
    }
    std::cout << "dump written to " << dmp_opt.out << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  } catch (const arena::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
