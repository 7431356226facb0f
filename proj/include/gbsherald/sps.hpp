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

// Two-mode squeezed-vacuum source heralding single photons: closed-form
// heralded coefficients, cancellation conditions and the Fock cross-check.

#include <complex>
#include <vector>

#include "gbsherald/circuit.hpp"

namespace gbsherald {

/// Squeezings r1, r2 on modes 0 and 1, beam splitter (theta, phi); mode 0 is
/// heralded on one photon in mode 1.
struct SpsDesign {
  double r1 = 0.0;
  double r2 = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  /// tanh(r1) / tanh(r2).
  double f() const;
  /// True if phi = pi/2 (mod pi) and f = tan^2 theta within `tol`.
  bool is_cancelling(double tol = 1e-10) const;

  /// Cancelling design for given squeezings (theta = atan sqrt(f), phi = pi/2); requires f > 0.
  static SpsDesign cancelling(double r1, double r2);
};

/// sqrt((2n)!) / (2^n n!) tanh^n r / sqrt(cosh r), evaluated in log domain.
double alpha_n(double r, int n);

/// Heralded amplitudes of |2N-1>, N = 1..n_max (entry N-1), unnormalized so that the
/// squared magnitudes sum to the herald probability.
std::vector<std::complex<double>> heralded_coefficients(const SpsDesign& design, int n_max);

struct PhiNecessityReport {
  bool phi_cancelling = false;  // phi = pi/2 (mod pi)
  std::complex<double> c2_reduced;  // -1 + f x (1 - C) + f^2 x^2 C with x = e^{2 i phi}, C = cot^2 theta
  double c2_relative = 0.0;      // |c_2| / |c_1| from heralded_coefficients
  /// For sin(2 phi) != 0: real part of c2_reduced where its imaginary part vanishes
  /// at nonzero f; never above -1. NaN when not applicable.
  double real_part_at_imaginary_root = 0.0;
  /// For phi in {0, pi}: c2_reduced factors as (f C + 1)(f - 1).
  bool factorized_branch = false;
};

PhiNecessityReport check_phi_necessity(const SpsDesign& design);

/// |sinh r1 sinh r2| / (cosh^2 r1 cosh^2 r2).
double herald_probability(double r1, double r2);

/// r1 = r2 = atanh(1/sqrt 2), theta = pi/4, phi = pi/2.
SpsDesign optimal_design();

/// Two-mode circuit realizing the design at cutoff D.
CircuitSpec sps_circuit(const SpsDesign& design, int cutoff);

struct SpsVerification {
  double probability_fock = 0.0;      // sum over heralded k <= D - 2
  double probability_analytic = 0.0;  // closed form over the same range
  double probability_closed_form = 0.0;  // herald_probability(r1, r2) for cancelling designs, else total sum
  double fidelity = 0.0;              // analytic vs Fock heralded states on k <= D - 2
  double leading_residual = 0.0;      // largest |c_N| / |c_1| for N >= 2 within range
  int compared_up_to = 0;
};

/// Simulates the design in the Fock backend and compares with the closed form;
/// throws OracleMismatch when fidelity < 1 - 1e-9 or probabilities differ by > 1e-8.
SpsVerification verify_against_fock(const SpsDesign& design, int cutoff);

}  // namespace gbsherald
