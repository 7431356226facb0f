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

// Target states (cat, canonical GKP, GKP core) and phase-space evaluation.

#include <complex>
#include <string>
#include <vector>

#include "gbsherald/fock.hpp"

namespace gbsherald {

enum class CatParity { even, odd };

/// N_+/- = sqrt(2 (1 +/- exp(-2 |alpha|^2))).
double cat_normalization(std::complex<double> alpha, CatParity parity);

/// (|alpha> +/- |-alpha>) / N_+/- at cutoff D; throws TruncationError if the
/// mass beyond the cutoff exceeds `max_tail`.
FockVector cat_state(std::complex<double> alpha, CatParity parity, int cutoff, double max_tail = 1e-8);

struct GridSpec {
  double qmin = -5.0;
  double qmax = 5.0;
  double pmin = -5.0;
  double pmax = 5.0;
  int resolution = 101;  // points per axis

  double q(int i) const;
  double p(int j) const;
  void validate() const;
};

struct WignerGrid {
  GridSpec grid;
  RealMatrix<double> values;  // values(i, j) at (q(i), p(j))

  /// Trapezoidal integral over the grid.
  double integral() const;
  /// Trapezoidal integral over p for each q.
  std::vector<double> q_marginal() const;
  /// Lines "q p W" with 17 significant digits.
  std::string to_text() const;
};

/// Closed-form cat Wigner function in (q, p), normalized over dq dp.
double cat_wigner(std::complex<double> alpha, CatParity parity, double q, double p);
WignerGrid cat_wigner(std::complex<double> alpha, CatParity parity, const GridSpec& grid);

/// Wigner function of a pure single-mode Fock vector by the iterative Laguerre recurrence.
WignerGrid wigner_of_fock_state(const FockVector& state, const GridSpec& grid);

/// Hermite functions h_0..h_{count-1} at q (ground state pi^{-1/4} exp(-q^2/2)).
std::vector<double> hermite_functions(double q, int count);

/// |psi(q)|^2 for each q.
std::vector<double> position_density(const FockVector& state, const std::vector<double>& q);

/// Lines "q density".
std::string density_to_text(const std::vector<double>& q, const std::vector<double>& density);

/// Canonical GKP logical-zero approximation: peaks of width delta at 2 n sqrt(pi)
/// under envelope weights exp(-kappa^2 (2 n sqrt(pi))^2 / 2), |n| <= lattice_halfwidth.
struct GkpParameters {
  double delta = 0.25;
  double kappa = 0.25;
  int lattice_halfwidth = 12;

  void validate() const;
};

/// Unnormalized wavefunction sum; use gkp_canonical for a normalized Fock vector.
double gkp_wavefunction(const GkpParameters& params, double q);

struct GkpState {
  FockVector state;
  double tail = 0.0;  // weight of the position-space state beyond the cutoff
};

/// Fock expansion of the canonical GKP state, normalized within the cutoff.
GkpState gkp_canonical(const GkpParameters& params, int cutoff);

struct GkpCore {
  FockVector core;   // sum_{n < D_core} c_n |n>, c_0 >= 0
  double r = 0.0;    // squeezing with S(r) core closest to the canonical state
  double overlap = 0.0;  // |<0_Delta| S(r) core>|^2
};

/// Core coefficients and squeezing maximizing the overlap with the canonical
/// state at kappa = delta. Rejects delta < 0.05.
GkpCore gkp_core_target(double delta, int core_size = 5);

/// Peak positions of the ideal GKP logical states within |q| <= extent.
struct GkpLattice {
  static double spacing();  // sqrt(pi)
  static std::vector<double> logical_zero_peaks(double extent);
  static std::vector<double> logical_one_peaks(double extent);
};

}  // namespace gbsherald
