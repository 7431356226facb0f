// Copyright 2026 The gbsherald Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: optimization runs, closed-form source check, Wigner and
// density grids, correlation analysis and source-noise adjustment.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "gbsherald/analysis.hpp"
#include "gbsherald/errors.hpp"
#include "gbsherald/optimizer.hpp"
#include "gbsherald/records.hpp"
#include "gbsherald/sps.hpp"
#include "gbsherald/targets.hpp"
#include "gbsherald/version.hpp"

using namespace gbsherald;

namespace {

std::string g6(double v) { return fmt::format("{:.6g}", v); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFoundError("cannot open '" + path + "' for writing");
  out << text;
}

const OptimizationResult* select_result(const std::vector<OptimizationResult>& sorted, std::optional<double> min_fidelity) {
  if (!min_fidelity) return &sorted.front();
  for (const auto& r : sorted)
    if (r.fidelity >= *min_fidelity) return &r;
  return nullptr;
}

int cmd_optimize(const std::string& config, const std::string& results_path, int threads) {
  const auto defs = load_config(config);
  fmt::print("{:<16} {:>3} {:>12} {:>12} {:>5} {:>12} {:>8}\n", "id", "n", "1-F", "p", "n_T", "reward", "restart");
  for (const auto& def : defs) {
    const auto problem = def.problem();
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = optimize(problem, def.restarts, def.seed, threads);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const OptimizationResult* chosen = select_result(results, def.min_fidelity);
    if (!chosen) {
      fmt::print("{:<16} no restart reached fidelity {}; keeping the best reward\n", def.id, g6(*def.min_fidelity));
      chosen = &results.front();
    }
    fmt::print("{:<16} {:>3} {:>12} {:>12} {:>5} {:>12} {:>8}\n", def.id, def.photons.size(), g6(1.0 - chosen->fidelity), g6(chosen->probability),
               chosen->n_T, g6(chosen->reward), chosen->restart);
    fmt::print("  frontier (1-F, p):");
    for (const auto& r : pareto_frontier(results)) fmt::print(" ({}, {})", g6(1.0 - r.fidelity), g6(r.probability));
    fmt::print("\n");
    append_records(results_path, {make_record(def, *chosen, wall)});
  }
  return 0;
}

int cmd_sps_verify(std::optional<double> r1, std::optional<double> r2, std::optional<double> theta, std::optional<double> phi, int cutoff) {
  SpsDesign design = optimal_design();
  if (r1 || r2) {
    design = SpsDesign::cancelling(r1.value_or(design.r1), r2.value_or(design.r2));
  }
  if (theta) design.theta = *theta;
  if (phi) design.phi = *phi;
  fmt::print("design: r1={} r2={} theta={} phi={} f={} tan^2(theta)={}\n", g6(design.r1), g6(design.r2), g6(design.theta), g6(design.phi),
             g6(design.f()), g6(std::pow(std::tan(design.theta), 2)));
  fmt::print("cancelling: {}\n", design.is_cancelling() ? "yes" : "no");
  const auto coeffs = heralded_coefficients(design, 8);
  for (int N = 1; N <= 8; ++N) fmt::print("|c_{}| (Fock |{}>) = {}\n", N, 2 * N - 1, g6(std::abs(coeffs[N - 1])));
  if (!design.is_cancelling()) {
    const auto report = check_phi_necessity(design);
    fmt::print("leading non-zero term: |c_2|/|c_1| = {}; reduced c_2 = {:.6g}{:+.6g}i\n", g6(report.c2_relative), report.c2_reduced.real(),
               report.c2_reduced.imag());
  }
  if (design.is_cancelling()) fmt::print("herald probability (closed form): {}\n", g6(herald_probability(design.r1, design.r2)));
  const auto v = verify_against_fock(design, cutoff);
  fmt::print("Fock backend (cutoff {}): probability {} vs closed form {}; fidelity {}\n", cutoff, g6(v.probability_fock), g6(v.probability_analytic),
             g6(v.fidelity));
  fmt::print("oracle agreement: ok\n");
  return 0;
}

struct WignerOptions {
  GridSpec grid;
  bool density = false;
  std::string out;
  std::string results;
  double alpha = 2.0;
  double delta = 0.25;
  int cutoff = 0;
};

int cmd_wigner(const std::string& selector, const WignerOptions& o) {
  FockVector state;
  const int cutoff = o.cutoff > 0 ? o.cutoff : default_cutoff();
  if (selector == "cat" || selector == "cat-odd") {
    const CatParity parity = selector == "cat" ? CatParity::even : CatParity::odd;
    state = cat_state({o.alpha, 0.0}, parity, std::max(cutoff, 2 * static_cast<int>(std::ceil(o.alpha * o.alpha)) + 30));
  } else if (selector == "gkp-canonical") {
    GkpParameters params{o.delta, o.delta, 0};
    while (true) {
      try {
        params.validate();
        break;
      } catch (const DomainError&) {
        ++params.lattice_halfwidth;
      }
    }
    state = gkp_canonical(params, std::max(cutoff, static_cast<int>(std::ceil(16.0 / (o.delta * o.delta))))).state;
  } else if (selector == "gkp-core") {
    state = gkp_core_target(o.delta).core;
  } else if (selector == "vacuum") {
    state = FockVector::basis(0, 2);
  } else {
    if (o.results.empty()) throw ValidationError("unknown selector '" + selector + "' (use --results to look up a record id)");
    const auto records = load_results(o.results);
    const RunRecord* found = nullptr;
    for (const auto& r : records)
      if (r.def.id == selector) found = &r;
    if (!found) throw NotFoundError("no record with id '" + selector + "' in " + o.results);
    if (!found->params) throw ValidationError("record '" + selector + "' has no parameters");
    auto heralded = heralded_state(found->def.problem(), *found->params);
    if (!heralded) throw ValidationError("record '" + selector + "' heralds with zero probability");
    state = *heralded;
  }
  if (o.density) {
    std::vector<double> q(o.grid.resolution);
    for (int i = 0; i < o.grid.resolution; ++i) q[i] = o.grid.q(i);
    write_output(o.out, density_to_text(q, position_density(state, q)));
  } else {
    write_output(o.out, wigner_of_fock_state(state, o.grid).to_text());
  }
  return 0;
}

int cmd_analyze(const std::string& path) {
  const auto records = load_results(path);
  std::vector<QualitySample> samples;
  for (const auto& r : records) samples.push_back(r.sample());
  const auto report = analyze(samples);
  fmt::print("{:<16} {:>3} {:>12} {:>12} {:>12} {:>12}\n", "id", "n", "1-F", "p", "QA", "p-QA");
  for (std::size_t k = 0; k < records.size(); ++k)
    fmt::print("{:<16} {:>3} {:>12} {:>12} {:>12} {:>12}\n", records[k].def.id, records[k].single_photons, g6(records[k].one_minus_F), g6(records[k].p),
               g6(report.points[k].quantum_angle), g6(report.points[k].quality));
  fmt::print("pearson_r {}\nslope {}\nintercept {}\n", g6(report.pearson_r), g6(report.slope), g6(report.intercept));
  return 0;
}

int cmd_noise(const std::string& path, double efficiency, double purity, double indistinguishability) {
  const auto records = load_results(path);
  fmt::print("model: p' = p * {}^n, F' = F * ({} * {})^n\n", g6(efficiency), g6(purity), g6(indistinguishability));
  fmt::print("{:<16} {:>3} {:>12} {:>12} {:>12} {:>12}\n", "id", "n", "1-F", "p", "1-F'", "p'");
  for (const auto& r : records) {
    const auto adjusted = apply_source_noise(r.sample(), efficiency, purity, indistinguishability);
    fmt::print("{:<16} {:>3} {:>12} {:>12} {:>12} {:>12}\n", r.def.id, r.single_photons, g6(r.one_minus_F), g6(r.p), g6(1.0 - adjusted.fidelity),
               g6(adjusted.probability));
  }
  // Reference noise-adjusted best results for the two-mode cat, three-mode cat and GKP
  // problems; shown for comparison only since the underlying rows are not stated.
  fmt::print("reference (1-F', p'): (0.12, 0.17) (0.087, 0.27) (0.11, 0.23)\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heralded non-Gaussian state generation with Gaussian and single-photon inputs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config, results_path = "results.txt";
  int threads = 0;
  auto* opt = app.add_subcommand("optimize", "run every experiment block of a config file");
  opt->add_option("config", config, "config file")->required();
  opt->add_option("--results", results_path, "results file to append to")->capture_default_str();
  opt->add_option("--threads", threads, "worker threads (0: hardware concurrency)")->capture_default_str();

  std::optional<double> r1, r2, theta, phi;
  int sps_cutoff = 20;
  auto* sps = app.add_subcommand("sps-verify", "check the two-mode single-photon source against the Fock backend");
  sps->add_option("--r1", r1, "squeezing of the heralded mode")->capture_default_str();
  sps->add_option("--r2", r2, "squeezing of the detected mode")->capture_default_str();
  sps->add_option("--theta", theta, "beam splitter angle")->capture_default_str();
  sps->add_option("--phi", phi, "beam splitter phase")->capture_default_str();
  sps->add_option("--cutoff", sps_cutoff, "Fock cutoff per mode")->capture_default_str();

  std::string selector;
  WignerOptions wo;
  auto* wig = app.add_subcommand("wigner", "write a Wigner grid or position density");
  wig->add_option("selector", selector, "cat | cat-odd | gkp-canonical | gkp-core | vacuum | record id")->required();
  wig->add_option("--qmin", wo.grid.qmin, "grid lower q")->capture_default_str();
  wig->add_option("--qmax", wo.grid.qmax, "grid upper q")->capture_default_str();
  wig->add_option("--pmin", wo.grid.pmin, "grid lower p")->capture_default_str();
  wig->add_option("--pmax", wo.grid.pmax, "grid upper p")->capture_default_str();
  wig->add_option("--res", wo.grid.resolution, "points per axis")->capture_default_str();
  wig->add_flag("--density", wo.density, "position density along q instead of the Wigner grid");
  wig->add_option("--out", wo.out, "output file (default stdout)");
  wig->add_option("--results", wo.results, "results file for record ids");
  wig->add_option("--alpha", wo.alpha, "cat amplitude")->capture_default_str();
  wig->add_option("--delta", wo.delta, "GKP width (canonical uses kappa = delta)")->capture_default_str();
  wig->add_option("--cutoff", wo.cutoff, "Fock cutoff for the Fock-kernel evaluation (0: GBSHERALD_CUTOFF or 20)");

  std::string analyze_path;
  auto* ana = app.add_subcommand("analyze", "correlate p - QA with the number of single photons");
  ana->add_option("results", analyze_path, "results file")->required();

  std::string noise_path;
  double efficiency = 0.84, purity = 0.993, indist = 0.98;
  auto* noise = app.add_subcommand("noise", "apply the parametric single-photon source noise model");
  noise->add_option("results", noise_path, "results file")->required();
  noise->add_option("--efficiency", efficiency, "source efficiency, scales p per photon")->capture_default_str();
  noise->add_option("--purity", purity, "source purity, scales F per photon")->capture_default_str();
  noise->add_option("--indistinguishability", indist, "indistinguishability, scales F per photon")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*opt) return cmd_optimize(config, results_path, threads);
    if (*sps) return cmd_sps_verify(r1, r2, theta, phi, sps_cutoff);
    if (*wig) return cmd_wigner(selector, wo);
    if (*ana) return cmd_analyze(analyze_path);
    if (*noise) return cmd_noise(noise_path, efficiency, purity, indist);
  } catch (const ValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const OracleMismatch& e) {
    fmt::print(stderr, "oracle mismatch: {}\n", e.what());
    return 3;
  } catch (const ConvergenceError& e) {
    fmt::print(stderr, "no result: {}\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
