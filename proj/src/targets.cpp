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

#include "gbsherald/targets.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gbsherald/errors.hpp"

namespace gbsherald {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

int parity_offset(CatParity parity) { return parity == CatParity::even ? 0 : 1; }

}  // namespace

double cat_normalization(std::complex<double> alpha, CatParity parity) {
  const double sign = parity == CatParity::even ? 1.0 : -1.0;
  return std::sqrt(2.0 * (1.0 + sign * std::exp(-2.0 * std::norm(alpha))));
}

FockVector cat_state(std::complex<double> alpha, CatParity parity, int cutoff, double max_tail) {
  if (cutoff < 2) throw DimensionError("cat_state: cutoff must be >= 2");
  if (parity == CatParity::odd && std::abs(alpha) < 1e-8) throw DomainError("odd cat state is undefined at alpha = 0");
  // <n|cat> = 2 e^{-|alpha|^2/2} alpha^n / sqrt(n!) / N on the parity class.
  const double scale = 2.0 * std::exp(-std::norm(alpha) / 2.0) / cat_normalization(alpha, parity);
  ComplexVector<double> v = ComplexVector<double>::Zero(cutoff);
  std::complex<double> term = scale;  // scale * alpha^n / sqrt(n!)
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) term *= alpha / std::sqrt(double(n));
    if (n % 2 == parity_offset(parity)) v(n) = term;
  }
  const double tail = std::max(0.0, 1.0 - v.squaredNorm());
  if (tail > max_tail) throw TruncationError(fmt::format("cat_state: cutoff {} leaves tail mass {:.3g}", cutoff, tail));
  return FockVector(v / v.norm());
}

double GridSpec::q(int i) const { return resolution == 1 ? qmin : qmin + (qmax - qmin) * i / (resolution - 1); }
double GridSpec::p(int j) const { return resolution == 1 ? pmin : pmin + (pmax - pmin) * j / (resolution - 1); }

void GridSpec::validate() const {
  if (resolution < 1) throw ValidationError("grid resolution must be >= 1");
  if (!(qmax >= qmin) || !(pmax >= pmin)) throw ValidationError("grid bounds must satisfy min <= max");
}

double WignerGrid::integral() const {
  const int n = grid.resolution;
  if (n < 2) return 0.0;
  const auto m = q_marginal();
  const double dq = (grid.qmax - grid.qmin) / (n - 1);
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += m[i] * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
  return total * dq;
}

std::vector<double> WignerGrid::q_marginal() const {
  const int n = grid.resolution;
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double dp = (grid.pmax - grid.pmin) / (n - 1);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += values(i, j) * ((j == 0 || j == n - 1) ? 0.5 : 1.0);
    out[i] = s * dp;
  }
  return out;
}

std::string WignerGrid::to_text() const {
  std::string out = "# q p W\n";
  for (int i = 0; i < grid.resolution; ++i)
    for (int j = 0; j < grid.resolution; ++j) out += fmt::format("{:.17g} {:.17g} {:.17g}\n", grid.q(i), grid.p(j), values(i, j));
  return out;
}

double cat_wigner(std::complex<double> alpha, CatParity parity, double q, double p) {
  if (parity == CatParity::odd && std::abs(alpha) < 1e-8) throw DomainError("odd cat state is undefined at alpha = 0");
  const double sign = parity == CatParity::even ? 1.0 : -1.0;
  const std::complex<double> a(q / std::sqrt(2.0), p / std::sqrt(2.0));
  const double num = std::exp(-2.0 * std::norm(a - alpha)) + std::exp(-2.0 * std::norm(a + alpha)) +
                     sign * 2.0 * std::exp(-2.0 * std::norm(a)) * std::cos(4.0 * std::imag(a * std::conj(alpha)));
  return num / (2.0 * kPi * (1.0 + sign * std::exp(-2.0 * std::norm(alpha))));
}

WignerGrid cat_wigner(std::complex<double> alpha, CatParity parity, const GridSpec& grid) {
  grid.validate();
  WignerGrid out{grid, RealMatrix<double>(grid.resolution, grid.resolution)};
  for (int i = 0; i < grid.resolution; ++i)
    for (int j = 0; j < grid.resolution; ++j) out.values(i, j) = cat_wigner(alpha, parity, grid.q(i), grid.p(j));
  return out;
}

WignerGrid wigner_of_fock_state(const FockVector& state, const GridSpec& grid) {
  grid.validate();
  if (!state.is_normalized(1e-9)) throw ContractError("wigner_of_fock_state requires a normalized state");
  const int d = state.highest_occupied(0.0) + 1;
  const auto& psi = state.amplitudes();
  // rho(m, n) = psi_m conj(psi_n)
  ComplexMatrix<double> rho = psi.head(d) * psi.head(d).adjoint();
  std::vector<double> root(d + 1);
  for (int n = 0; n <= d; ++n) root[n] = std::sqrt(double(n));

  WignerGrid out{grid, RealMatrix<double>(grid.resolution, grid.resolution)};
  std::vector<std::complex<double>> w(std::max(d, 1));
  for (int i = 0; i < grid.resolution; ++i) {
    for (int j = 0; j < grid.resolution; ++j) {
      const std::complex<double> A(grid.q(i) / std::sqrt(2.0), grid.p(j) / std::sqrt(2.0));
      const std::complex<double> A2 = 2.0 * A, A2c = 2.0 * std::conj(A);
      w[0] = std::exp(-2.0 * std::norm(A)) / kPi;
      double W = rho(0, 0).real() * w[0].real();
      for (int n = 1; n < d; ++n) {
        w[n] = A2 * w[n - 1] / root[n];
        W += 2.0 * std::real(rho(0, n) * w[n]);
      }
      for (int m = 1; m < d; ++m) {
        std::complex<double> temp = w[m];
        w[m] = (A2c * temp - root[m] * w[m - 1]) / root[m];
        W += std::real(rho(m, m) * w[m]);
        for (int n = m + 1; n < d; ++n) {
          const std::complex<double> next = (A2 * w[n - 1] - root[m] * temp) / root[n];
          temp = w[n];
          w[n] = next;
          W += 2.0 * std::real(rho(m, n) * w[n]);
        }
      }
      out.values(i, j) = W;
    }
  }
  return out;
}

std::vector<double> hermite_functions(double q, int count) {
  std::vector<double> h(std::max(count, 0));
  if (count <= 0) return h;
  // Scaled recurrence: value = y * exp(log_scale), rescaled whenever y grows large.
  double log_scale = -0.25 * std::log(kPi) - 0.5 * q * q;
  double prev = 0.0, cur = 1.0;
  h[0] = std::exp(log_scale);
  for (int n = 0; n + 1 < count; ++n) {
    const double next = std::sqrt(2.0 / (n + 1)) * q * cur - std::sqrt(double(n) / (n + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      prev *= 1e-150;
      cur *= 1e-150;
      log_scale += 150.0 * std::log(10.0);
    }
    h[n + 1] = cur * std::exp(log_scale);
  }
  return h;
}

std::vector<double> position_density(const FockVector& state, const std::vector<double>& q) {
  const int d = state.highest_occupied(0.0) + 1;
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto h = hermite_functions(q[i], d);
    std::complex<double> psi = 0;
    for (int n = 0; n < d; ++n) psi += state[n] * h[n];
    out[i] = std::norm(psi);
  }
  return out;
}

std::string density_to_text(const std::vector<double>& q, const std::vector<double>& density) {
  std::string out = "# q density\n";
  for (std::size_t i = 0; i < q.size(); ++i) out += fmt::format("{:.17g} {:.17g}\n", q[i], density[i]);
  return out;
}

void GkpParameters::validate() const {
  if (!(delta > 0.0) || !(kappa > 0.0)) throw DomainError("GKP delta and kappa must be positive");
  if (lattice_halfwidth < 0) throw DomainError("lattice half-width must be >= 0");
  double kept = 0.0, dropped = 0.0;
  for (int n = 0; n <= lattice_halfwidth + 200; ++n) {
    const double x = 2.0 * n * kSqrtPi;
    const double w2 = std::exp(-kappa * kappa * x * x) * (n == 0 ? 1.0 : 2.0);
    (n <= lattice_halfwidth ? kept : dropped) += w2;
  }
  if (dropped > 1e-8 * kept)
    throw DomainError(fmt::format("lattice half-width {} leaves envelope mass {:.3g}", lattice_halfwidth, dropped / (kept + dropped)));
}

double gkp_wavefunction(const GkpParameters& params, double q) {
  const double norm = std::pow(kPi * params.delta * params.delta, -0.25);
  double psi = 0.0;
  for (int n = -params.lattice_halfwidth; n <= params.lattice_halfwidth; ++n) {
    const double x = 2.0 * n * kSqrtPi;
    const double u = (q - x) / params.delta;
    psi += std::exp(-0.5 * params.kappa * params.kappa * x * x) * norm * std::exp(-0.5 * u * u);
  }
  return psi;
}

namespace {

struct SampledWavefunction {
  std::vector<double> q;
  std::vector<double> psi;  // normalized under the trapezoid rule
  double step = 0.0;
};

SampledWavefunction sample_gkp(const GkpParameters& params, double extent_floor = 0.0) {
  params.validate();
  const double extent = std::max(2.0 * kSqrtPi * params.lattice_halfwidth + 12.0 * params.delta + 2.0, extent_floor);
  const double step = std::min(params.delta / 25.0, 0.01);
  const int n = static_cast<int>(std::ceil(2.0 * extent / step)) + 1;
  SampledWavefunction s;
  s.step = 2.0 * extent / (n - 1);
  s.q.resize(n);
  s.psi.resize(n);
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    s.q[i] = -extent + i * s.step;
    s.psi[i] = gkp_wavefunction(params, s.q[i]);
    norm2 += s.psi[i] * s.psi[i];
  }
  const double scale = 1.0 / std::sqrt(norm2 * s.step);
  for (double& v : s.psi) v *= scale;
  return s;
}

/// c_k = integral psi(q) g h_k(g q) dq for k < count, with g = e^r (g = 1 gives plain overlaps).
std::vector<double> hermite_projection(const SampledWavefunction& s, int count, double g) {
  std::vector<double> c(count, 0.0);
  const double weight = std::sqrt(g) * s.step;
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    if (s.psi[i] == 0.0) continue;
    const auto h = hermite_functions(g * s.q[i], count);
    for (int k = 0; k < count; ++k) c[k] += weight * s.psi[i] * h[k];
  }
  return c;
}

}  // namespace

GkpState gkp_canonical(const GkpParameters& params, int cutoff) {
  if (cutoff < 1) throw DimensionError("cutoff must be positive");
  // Cover the classical turning point of the highest Hermite function as well.
  const auto s = sample_gkp(params, std::sqrt(2.0 * cutoff + 1.0) + 6.0);
  const auto c = hermite_projection(s, cutoff, 1.0);
  ComplexVector<double> v(cutoff);
  for (int k = 0; k < cutoff; ++k) v(k) = c[k];
  GkpState out{FockVector(v.normalized()), std::max(0.0, 1.0 - v.squaredNorm())};
  return out;
}

GkpCore gkp_core_target(double delta, int core_size) {
  if (delta < 0.05) throw DomainError("gkp_core_target: delta below 0.05 is not supported");
  if (core_size < 1) throw DimensionError("core size must be >= 1");
  GkpParameters params{delta, delta, 0};
  while (true) {
    try {
      params.validate();
      break;
    } catch (const DomainError&) {
      ++params.lattice_halfwidth;
    }
  }
  const auto s = sample_gkp(params);
  auto overlap = [&](double r) {
    const auto v = hermite_projection(s, core_size, std::exp(r));
    double total = 0.0;
    for (double x : v) total += x * x;
    return total;
  };
  // Coarse scan, then golden-section refinement around the best sample.
  double best_r = 0.0, best = -1.0;
  constexpr double coarse = 0.02;
  for (double r = -2.0; r <= 2.0 + 1e-12; r += coarse) {
    const double f = overlap(r);
    if (f > best) best = f, best_r = r;
  }
  double lo = best_r - coarse, hi = best_r + coarse;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = overlap(x1), f2 = overlap(x2);
  while (hi - lo > 1e-10) {
    if (f1 < f2) {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + inv_phi * (hi - lo), f2 = overlap(x2);
    } else {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - inv_phi * (hi - lo), f1 = overlap(x1);
    }
  }
  const double r = 0.5 * (lo + hi);
  auto v = hermite_projection(s, core_size, std::exp(r));
  ComplexVector<double> c(core_size);
  for (int k = 0; k < core_size; ++k) c(k) = v[k];
  const double total = c.squaredNorm();
  if (c(0).real() < 0.0) c = -c;
  return GkpCore{FockVector(c / std::sqrt(total)), r, total};
}

double GkpLattice::spacing() { return kSqrtPi; }

std::vector<double> GkpLattice::logical_zero_peaks(double extent) {
  std::vector<double> out;
  for (int n = -static_cast<int>(extent / (2 * kSqrtPi)); 2 * n * kSqrtPi <= extent; ++n) out.push_back(2 * n * kSqrtPi);
  return out;
}

std::vector<double> GkpLattice::logical_one_peaks(double extent) {
  std::vector<double> out;
  const int lo = static_cast<int>(std::floor((-extent / kSqrtPi - 1.0) / 2.0));
  for (int n = lo; (2 * n + 1) * kSqrtPi <= extent; ++n)
    if (std::abs((2 * n + 1) * kSqrtPi) <= extent) out.push_back((2 * n + 1) * kSqrtPi);
  return out;
}

}  // namespace gbsherald
