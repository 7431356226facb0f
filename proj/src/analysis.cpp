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

#include "gbsherald/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "gbsherald/errors.hpp"
#include "gbsherald/fock.hpp"

namespace gbsherald {

AnalysisReport analyze(std::span<const QualitySample> samples) {
  if (samples.size() < 2) throw DomainError("analyze needs at least two records");
  AnalysisReport report;
  for (const auto& s : samples) {
    const double qa = quantum_angle(s.fidelity).radians;
    report.points.push_back({s, qa, s.probability - qa});
  }
  // Sorted copy so the sums, and hence the report, do not depend on input order.
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : report.points) xy.emplace_back(p.sample.single_photons, p.quality);
  std::sort(xy.begin(), xy.end());
  const double n = static_cast<double>(xy.size());
  double mx = 0, my = 0;
  for (auto [x, y] : xy) mx += x, my += y;
  mx /= n, my /= n;
  double sxx = 0, syy = 0, sxy = 0;
  for (auto [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) throw DomainError("correlation undefined: a variable has zero variance");
  report.pearson_r = sxy / std::sqrt(sxx * syy);
  report.slope = sxy / sxx;
  report.intercept = my - report.slope * mx;
  return report;
}

NoisyOutcome apply_source_noise(const QualitySample& sample, double efficiency, double purity, double indistinguishability) {
  for (double v : {efficiency, purity, indistinguishability})
    if (!(v > 0.0 && v <= 1.0)) throw DomainError("noise factors must lie in (0, 1]");
  const int s = sample.single_photons;
  return {sample.fidelity * std::pow(purity * indistinguishability, s), sample.probability * std::pow(efficiency, s)};
}

}  // namespace gbsherald
