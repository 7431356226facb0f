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

// Photon-number heralding of all but one mode.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gbsherald/circuit.hpp"
#include "gbsherald/fock.hpp"

namespace gbsherald {

/// Photon counts on the measured modes, listed in increasing mode order
/// with `heralded_mode` skipped.
struct HeraldPattern {
  std::vector<int> counts;
  int heralded_mode = 0;

  int total() const;
  std::string to_string() const;
  bool operator==(const HeraldPattern&) const = default;
};

struct HeraldedResult {
  std::optional<FockVector> state;  // empty when probability < kZeroProbability
  ComplexVector<double> unnormalized;
  double probability = 0.0;
  int n_T = 0;
  int stellar_rank_bound = 0;

  bool zero_probability() const { return !state.has_value(); }
};

HeraldedResult herald(const MultiModeState& state, const HeraldPattern& pattern);

/// Every pattern with total count <= max_nT, in lexicographic order of counts.
std::vector<std::pair<HeraldPattern, HeraldedResult>> herald_all_patterns(const MultiModeState& state, int heralded_mode, int max_nT);

/// Number of patterns herald_all_patterns would enumerate.
long long pattern_count(int measured_modes, int max_nT);

/// Heralded Fock parities allowed by photon-number parity: with s single photons,
/// squeezed-vacuum Gaussian inputs and a passive mesh, k + n_T = s (mod 2).
/// Displaced inputs break the rule and give `mixed`.
ParitySupport pattern_parity_feasible(const CircuitSpec& spec, const HeraldPattern& pattern);

/// Real parameters of a general N-mode Gaussian pure-state heralding device: (N+2)(N-1)/2.
int independent_parameter_count(int mode_count);

/// B = U diag(-tanh r_k) U^T for squeezed inputs; the output Gaussian amplitudes
/// are generated by exp(z^T B z / 2). Photon inputs contribute their squeezing only.
ComplexMatrix<double> gaussian_kernel(const CircuitSpec& spec);

/// Core amplitudes c with psi = exp(b a^dag^2 / 2) sum_k c_k |k>, over the first `terms` indices.
FockVector stellar_core(const FockVector& state, std::complex<double> b, int terms);

/// Highest index of `core` with magnitude above `relative_tol` times its largest entry.
int core_degree(const FockVector& core, double relative_tol = 1e-9);

}  // namespace gbsherald
