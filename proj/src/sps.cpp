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

#include "gbsherald/sps.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gbsherald/errors.hpp"
#include "gbsherald/heralding.hpp"

namespace gbsherald {

namespace {

// The closed form is written for squeezers exp(r (a^dag^2 - a^2) / 2), the inverse of
// the simulator's S(r); circuit inputs therefore carry -r.
constexpr double kDesignSqueezeSign = -1.0;

constexpr double kPi = std::numbers::pi;

double wrap_distance(double phi, double target, double period) {
  double d = std::fmod(phi - target, period);
  if (d < 0) d += period;
  return std::min(d, period - d);
}

}  // namespace

double SpsDesign::f() const { return std::tanh(r1) / std::tanh(r2); }

bool SpsDesign::is_cancelling(double tol) const {
  if (wrap_distance(phi, kPi / 2, kPi) > tol) return false;
  const double t = std::tan(theta);
  return std::abs(f() - t * t) <= tol * std::max(1.0, t * t);
}

SpsDesign SpsDesign::cancelling(double r1, double r2) {
  SpsDesign d{r1, r2, 0.0, kPi / 2};
  const double f = d.f();
  if (!(f > 0.0)) throw DomainError("cancelling design needs tanh(r1) / tanh(r2) > 0");
  d.theta = std::atan(std::sqrt(f));
  return d;
}

double alpha_n(double r, int n) {
  if (n < 0) throw DomainError("alpha_n: n must be >= 0");
  const double t = std::tanh(r);
  if (n == 0) return 1.0 / std::sqrt(std::cosh(r));
  if (t == 0.0) return 0.0;
  const double log_mag = 0.5 * std::lgamma(2.0 * n + 1.0) - n * std::log(2.0) - std::lgamma(n + 1.0) + n * std::log(std::abs(t)) -
                         0.5 * std::log(std::cosh(r));
  return std::exp(log_mag);
}

std::vector<std::complex<double>> heralded_coefficients(const SpsDesign& design, int n_max) {
  if (n_max < 1) throw DomainError("heralded_coefficients: n_max must be >= 1");
  if (n_max > 170) throw DomainError("heralded_coefficients: n_max above 170 is not supported");
  const double t1 = std::tanh(design.r1), t2 = std::tanh(design.r2);
  const double c = std::cos(design.theta), s = std::sin(design.theta);
  const std::complex<double> e_minus = std::polar(1.0, -design.phi);
  const double prefactor = 2.0 / std::sqrt(std::cosh(design.r1) * std::cosh(design.r2));

  std::vector<std::complex<double>> out(n_max);
  for (int N = 1; N <= n_max; ++N) {
    std::complex<double> sum = 0;
    for (int n = 0; n <= N; ++n) {
      const int m = N - n;
      // sqrt((2N-1)!) / (2^N n! m!) in log domain; powers of t, cos and sin kept explicit.
      const double log_w = 0.5 * std::lgamma(2.0 * N) - N * std::log(2.0) - std::lgamma(n + 1.0) - std::lgamma(m + 1.0);
      const double t_pow = std::pow(t1, n) * std::pow(t2, m);
      if (t_pow == 0.0) continue;
      std::complex<double> T;
      if (m == 0) {
        T = double(n) * std::pow(c, 2 * n - 1) * s * std::polar(1.0, design.phi);
      } else if (n == 0) {
        T = -double(N) * c * std::pow(s * e_minus, 2 * N - 1);
      } else {
        T = (n * std::pow(c, 2 * n - 1) * s * s - m * std::pow(c, 2 * n + 1)) * std::pow(s * e_minus, 2 * m - 1);
      }
      sum += std::exp(log_w) * t_pow * T;
    }
    out[N - 1] = prefactor * sum;
  }
  return out;
}

PhiNecessityReport check_phi_necessity(const SpsDesign& design) {
  PhiNecessityReport report;
  report.phi_cancelling = wrap_distance(design.phi, kPi / 2, kPi) <= 1e-10;
  const double f = design.f();
  const double cot = 1.0 / std::tan(design.theta);
  const double C = cot * cot;
  const std::complex<double> x = std::polar(1.0, 2.0 * design.phi);
  report.c2_reduced = -1.0 + f * x * (1.0 - C) + f * f * x * x * C;
  const auto coeffs = heralded_coefficients(design, 2);
  report.c2_relative = std::abs(coeffs[0]) > 0 ? std::abs(coeffs[1]) / std::abs(coeffs[0]) : std::numeric_limits<double>::infinity();
  const double s2 = std::sin(2.0 * design.phi), c2 = std::cos(2.0 * design.phi);
  report.factorized_branch = wrap_distance(design.phi, 0.0, kPi) <= 1e-10;
  if (std::abs(s2) > 1e-12 && std::abs(c2) > 1e-12 && C > 0) {
    report.real_part_at_imaginary_root = -1.0 - (C - 1.0) * (C - 1.0) / (4.0 * C * c2 * c2);
  } else {
    report.real_part_at_imaginary_root = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

double herald_probability(double r1, double r2) {
  const double ch1 = std::cosh(r1), ch2 = std::cosh(r2);
  return std::abs(std::sinh(r1) * std::sinh(r2)) / (ch1 * ch1 * ch2 * ch2);
}

SpsDesign optimal_design() {
  const double r = std::atanh(1.0 / std::sqrt(2.0));
  return SpsDesign{r, r, kPi / 4, kPi / 2};
}

CircuitSpec sps_circuit(const SpsDesign& design, int cutoff) {
  CircuitSpec spec;
  spec.mode_count = 2;
  spec.cutoff = cutoff;
  spec.inputs = {Squeezed{kDesignSqueezeSign * design.r1}, Squeezed{kDesignSqueezeSign * design.r2}};
  spec.mesh.placements = {{0, 1, design.theta, design.phi}};
  return spec;
}

SpsVerification verify_against_fock(const SpsDesign& design, int cutoff) {
  if (cutoff < 10) throw DomainError("verify_against_fock needs cutoff >= 10");
  const auto sim = simulate(sps_circuit(design, cutoff), SimulationOptions{.project_total = true});
  const auto heralded = herald(sim.state, HeraldPattern{{1}, 0});

  // Sectors with total photon number <= D - 1 are exact, so compare heralded k <= D - 2.
  const int kmax = cutoff - 2;
  const int n_in_range = (kmax + 1) / 2;
  const auto coeffs = heralded_coefficients(design, std::max(n_in_range, 60));

  SpsVerification v;
  v.compared_up_to = kmax;
  ComplexVector<double> analytic = ComplexVector<double>::Zero(kmax + 1);
  for (int N = 1; 2 * N - 1 <= kmax; ++N) analytic(2 * N - 1) = coeffs[N - 1];
  const ComplexVector<double> fock = heralded.unnormalized.head(kmax + 1);
  v.probability_analytic = analytic.squaredNorm();
  v.probability_fock = fock.squaredNorm();
  if (design.is_cancelling()) {
    v.probability_closed_form = herald_probability(design.r1, design.r2);
  } else {
    double total = 0.0;
    for (const auto& c : coeffs) total += std::norm(c);
    v.probability_closed_form = total;
  }
  for (int N = 2; 2 * N - 1 <= kmax; ++N) v.leading_residual = std::max(v.leading_residual, std::abs(coeffs[N - 1]) / std::abs(coeffs[0]));
  const double na = analytic.norm(), nf = fock.norm();
  v.fidelity = (na > 0 && nf > 0) ? std::norm(analytic.dot(fock)) / (na * na * nf * nf) : 0.0;

  const bool prob_ok = std::abs(v.probability_fock - v.probability_analytic) <= 1e-8 &&
                       (!design.is_cancelling() || std::abs(v.probability_fock - v.probability_closed_form) <= 1e-8);
  if (v.fidelity < 1.0 - 1e-9 || !prob_ok)
    throw OracleMismatch(fmt::format("closed form and Fock backend disagree: fidelity {:.12g}, probability {:.12g} (Fock) vs {:.12g} (closed form)",
                                     v.fidelity, v.probability_fock, v.probability_analytic));
  return v;
}

}  // namespace gbsherald
