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

#pragma once

// Multi-restart maximization of w_F * fidelity + w_p * probability over
// squeezings and rectangular-mesh angles.

#include <cstdint>
#include <optional>
#include <vector>

#include "gbsherald/circuit.hpp"
#include "gbsherald/fock.hpp"
#include "gbsherald/heralding.hpp"

namespace gbsherald {

struct OptimizationProblem {
  int mode_count = 2;
  std::vector<int> photon_modes;  // modes seeded with a single photon
  bool squeeze_photons = true;    // photon modes also get a tunable inline squeezer
  HeraldPattern pattern;
  FockVector target;              // compared after zero-padding to cutoff + pad
  int cutoff = kDefaultCutoff;
  int pad = kDefaultPadding;      // heralded amplitudes are kept up to cutoff + pad
  double fidelity_weight = 1.0;
  double probability_weight = 1.0;
  bool include_displacement = false;
  int max_iterations = 5000;

  void validate() const;
  int single_photon_count() const { return static_cast<int>(photon_modes.size()); }
  bool is_photon_mode(int mode) const;
  /// False when photon-number parity forbids any overlap with the target.
  bool parity_feasible() const;
};

/// Positions of each physical parameter: [r per squeezed mode], [theta_k, phi_k per
/// placement], [final phase per mode], [Re d, Im d per displaced mode].
struct ParameterLayout {
  int mode_count = 0;
  std::vector<int> squeezed_modes;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> displaced_modes;

  explicit ParameterLayout(const OptimizationProblem& problem);
  int size() const;
  int r(int k) const { return k; }
  int theta(int k) const { return static_cast<int>(squeezed_modes.size()) + 2 * k; }
  int phi(int k) const { return theta(k) + 1; }
  int phase(int m) const { return static_cast<int>(squeezed_modes.size() + 2 * pairs.size()) + m; }
  int displacement(int k) const { return phase(mode_count) + 2 * k; }
};

/// Circuit realized by a parameter vector, at the given per-mode cutoff.
CircuitSpec circuit_for(const OptimizationProblem& problem, const std::vector<double>& params, int cutoff);

struct Evaluation {
  double fidelity = 0.0;
  double probability = 0.0;
  double reward = 0.0;
  bool feasible = true;
  double heralded_tail = 0.0;  // probability share on heralded indices in [cutoff, cutoff + pad)
  std::vector<double> gradient;  // d reward / d params, when requested
};

Evaluation evaluate(const OptimizationProblem& problem, const std::vector<double>& params);
Evaluation evaluate_with_gradient(const OptimizationProblem& problem, const std::vector<double>& params);

/// Normalized heralded state on cutoff + pad indices, or empty on zero probability.
std::optional<FockVector> heralded_state(const OptimizationProblem& problem, const std::vector<double>& params);

struct OptimizationResult {
  std::vector<double> params;
  double fidelity = 0.0;
  double probability = 0.0;
  double reward = 0.0;
  int n_T = 0;
  int restart = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // reward after each accepted step
};

/// Runs `restarts` seeded local ascents (concurrently when threads > 1) and returns
/// the results sorted by reward, ties broken by restart index. Throws ConvergenceError
/// when the problem is parity infeasible.
std::vector<OptimizationResult> optimize(const OptimizationProblem& problem, int restarts, std::uint64_t seed, int threads = 0);

/// One restart; optimize() is this applied to restart = 0 .. restarts - 1.
OptimizationResult optimize_restart(const OptimizationProblem& problem, int restart, std::uint64_t seed);

/// Results not dominated in both fidelity and probability, by decreasing fidelity.
std::vector<OptimizationResult> pareto_frontier(const std::vector<OptimizationResult>& results);

struct GradientCheck {
  double max_relative_deviation = 0.0;   // componentwise, scaled by the largest gradient entry
  double directional_deviation = 0.0;    // along the normalized ascent direction
  double gradient_norm = 0.0;
};

/// Compares the analytic gradient with central differences of step `step`.
GradientCheck gradient_check(const OptimizationProblem& problem, const std::vector<double>& params, double step = 1e-5);

}  // namespace gbsherald
