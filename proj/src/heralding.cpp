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

#include "gbsherald/heralding.hpp"

#include <fmt/format.h>

#include <cmath>
#include <variant>

#include "gbsherald/errors.hpp"

namespace gbsherald {

int HeraldPattern::total() const {
  int t = 0;
  for (int c : counts) t += c;
  return t;
}

std::string HeraldPattern::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < counts.size(); ++k) s += (k ? "," : "") + std::to_string(counts[k]);
  return s;
}

namespace {

void check_pattern(const MultiModeState& state, const HeraldPattern& pattern) {
  const int m = state.mode_count();
  if (pattern.heralded_mode < 0 || pattern.heralded_mode >= m) throw DimensionError("heralded mode out of range");
  if (static_cast<int>(pattern.counts.size()) != m - 1)
    throw DimensionError(fmt::format("pattern has {} counts but the state has {} measured modes", pattern.counts.size(), m - 1));
  for (int c : pattern.counts)
    if (c < 0 || c >= state.cutoff()) throw DimensionError(fmt::format("pattern count {} outside cutoff {}", c, state.cutoff()));
}

}  // namespace

HeraldedResult herald(const MultiModeState& state, const HeraldPattern& pattern) {
  check_pattern(state, pattern);
  const int m = state.mode_count();
  const int d = state.cutoff();
  std::vector<int> occupation(m, 0);
  for (int mode = 0, k = 0; mode < m; ++mode)
    if (mode != pattern.heralded_mode) occupation[mode] = pattern.counts[k++];
  const Eigen::Index base = state.index(occupation);
  const Eigen::Index stride = state.stride(pattern.heralded_mode);

  HeraldedResult result;
  result.n_T = pattern.total();
  result.stellar_rank_bound = result.n_T;
  result.unnormalized.resize(d);
  for (int k = 0; k < d; ++k) result.unnormalized(k) = state.amplitudes()(base + k * stride);
  result.probability = result.unnormalized.squaredNorm();
  if (result.probability >= kZeroProbability) result.state = FockVector(result.unnormalized / std::sqrt(result.probability));
  return result;
}

long long pattern_count(int measured_modes, int max_nT) {
  // C(max_nT + measured_modes, measured_modes), saturating.
  long double c = 1;
  for (int k = 1; k <= measured_modes; ++k) {
    c = c * (max_nT + k) / k;
    if (c > 1e18L) return static_cast<long long>(1e18);
  }
  return static_cast<long long>(std::llround(c));
}

std::vector<std::pair<HeraldPattern, HeraldedResult>> herald_all_patterns(const MultiModeState& state, int heralded_mode, int max_nT) {
  const int measured = state.mode_count() - 1;
  if (max_nT < 0 || max_nT >= state.cutoff()) throw DomainError("max_nT must lie in [0, cutoff)");
  if (pattern_count(measured, max_nT) > 1'000'000) throw ResourceError("pattern sweep would exceed 10^6 patterns");
  std::vector<std::pair<HeraldPattern, HeraldedResult>> out;
  HeraldPattern pattern{std::vector<int>(measured, 0), heralded_mode};
  if (measured == 0) {
    out.emplace_back(pattern, herald(state, pattern));
    return out;
  }
  // Odometer over counts, last entry fastest, skipping totals above max_nT.
  while (true) {
    if (pattern.total() <= max_nT) out.emplace_back(pattern, herald(state, pattern));
    int k = measured - 1;
    while (k >= 0) {
      if (++pattern.counts[k] <= max_nT && pattern.total() <= max_nT) break;
      pattern.counts[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

ParitySupport pattern_parity_feasible(const CircuitSpec& spec, const HeraldPattern& pattern) {
  for (const auto& in : spec.inputs)
    if (std::holds_alternative<DisplacedSqueezed>(in)) return ParitySupport::mixed;
  return (spec.single_photon_count() - pattern.total()) % 2 == 0 ? ParitySupport::even : ParitySupport::odd;
}

int independent_parameter_count(int mode_count) {
  if (mode_count < 1) throw DomainError("mode count must be >= 1");
  return (mode_count + 2) * (mode_count - 1) / 2;
}

ComplexMatrix<double> gaussian_kernel(const CircuitSpec& spec) {
  const ComplexMatrix<double> U = transfer_matrix(spec);
  ComplexVector<double> t = ComplexVector<double>::Zero(spec.mode_count);
  for (int k = 0; k < spec.mode_count; ++k) {
    const auto& in = spec.inputs[k];
    if (auto s = std::get_if<Squeezed>(&in)) t(k) = -std::tanh(s->r);
    if (auto s = std::get_if<SqueezedPhoton>(&in)) t(k) = -std::tanh(s->r);
    if (std::holds_alternative<DisplacedSqueezed>(in)) throw ValidationError("gaussian_kernel: displaced inputs are not supported");
  }
  return U * t.asDiagonal() * U.transpose();
}

FockVector stellar_core(const FockVector& state, std::complex<double> b, int terms) {
  terms = std::min(terms, state.cutoff());
  // Generating-function coefficients g_k = psi_k / sqrt(k!), multiplied by exp(-b z^2 / 2).
  ComplexVector<double> core = ComplexVector<double>::Zero(terms);
  for (int k = 0; k < terms; ++k) {
    std::complex<double> acc = 0;
    std::complex<double> weight = 1;  // (-b/2)^m / m!
    for (int m = 0; 2 * m <= k; ++m) {
      if (m > 0) weight *= -b / (2.0 * m);
      const int j = k - 2 * m;
      // g_j * sqrt(k!) = psi_j * sqrt(k! / j!)
      acc += weight * state[j] * std::exp(0.5 * (std::lgamma(k + 1.0) - std::lgamma(j + 1.0)));
    }
    core(k) = acc;
  }
  return FockVector(std::move(core));
}

int core_degree(const FockVector& core, double relative_tol) {
  const double scale = core.amplitudes().cwiseAbs().maxCoeff();
  if (scale == 0.0) return -1;
  return core.highest_occupied(relative_tol * scale);
}

}  // namespace gbsherald
