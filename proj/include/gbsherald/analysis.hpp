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

// Quality score p - QA across runs, its correlation with the number of
// single photons, and a parametric source-noise adjustment.

#include <span>
#include <vector>

namespace gbsherald {

struct QualitySample {
  int single_photons = 0;
  double fidelity = 0.0;
  double probability = 0.0;
};

struct AnalysisPoint {
  QualitySample sample;
  double quantum_angle = 0.0;
  double quality = 0.0;  // probability - quantum angle; may be negative
};

struct AnalysisReport {
  std::vector<AnalysisPoint> points;
  double pearson_r = 0.0;  // over (single photons, quality)
  double slope = 0.0;      // least-squares quality = intercept + slope * single photons
  double intercept = 0.0;
};

/// Throws DomainError when either variable has zero variance.
AnalysisReport analyze(std::span<const QualitySample> samples);

struct NoisyOutcome {
  double fidelity = 0.0;
  double probability = 0.0;
};

/// p' = p * efficiency^s, F' = F * (purity * indistinguishability)^s.
NoisyOutcome apply_source_noise(const QualitySample& sample, double efficiency, double purity, double indistinguishability);

}  // namespace gbsherald
