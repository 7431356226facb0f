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

// Experiment configuration files and run-record persistence.
//
// Config ("gbsherald-config v1"): blocks introduced by "[id]" followed by
// "key = value" lines; '#' starts a comment.
// Results ("gbsherald-results v1"): one record per line of space-separated
// key=value fields; lists are comma-separated.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbsherald/analysis.hpp"
#include "gbsherald/optimizer.hpp"

namespace gbsherald {

/// One optimization experiment: problem definition plus search settings.
struct ExperimentDefinition {
  std::string id;
  int modes = 2;
  std::vector<int> photons;  // modes seeded with single photons
  bool squeeze_photons = true;
  std::vector<int> pattern;
  int heralded_mode = 0;
  std::string target = "cat";  // cat | cat_odd | gkp_core | gkp_canonical
  std::complex<double> alpha{2.0, 0.0};
  double delta = 0.25;
  int cutoff = kDefaultCutoff;
  int pad = kDefaultPadding;
  double fidelity_weight = 1.0;
  double probability_weight = 1.0;
  bool include_displacement = false;
  int max_iterations = 5000;
  std::uint64_t seed = 1;
  int restarts = 10;
  std::optional<double> min_fidelity;  // select the best reward among results reaching it

  OptimizationProblem problem() const;
};

/// Target state for a definition, at cutoff + pad.
FockVector build_target(const ExperimentDefinition& def);

/// Default cutoff: $GBSHERALD_CUTOFF if set and valid, else kDefaultCutoff.
int default_cutoff();

std::vector<ExperimentDefinition> parse_config(const std::string& text, const std::string& source = "<config>");
std::vector<ExperimentDefinition> load_config(const std::string& path);

struct RunRecord {
  ExperimentDefinition def;
  int single_photons = 0;
  int restart = 0;
  double one_minus_F = 0.0;
  double p = 0.0;
  int n_T = 0;
  double reward = 0.0;
  int iterations = 0;
  std::optional<std::vector<double>> params;
  double wall_s = 0.0;
  std::string version;

  QualitySample sample() const { return {single_photons, 1.0 - one_minus_F, p}; }
};

RunRecord make_record(const ExperimentDefinition& def, const OptimizationResult& result, double wall_s);

std::string format_record(const RunRecord& record);
RunRecord parse_record(const std::string& line, const std::string& source = "<results>", int lineno = 0);

std::vector<RunRecord> parse_results(const std::string& text, const std::string& source = "<results>");
std::vector<RunRecord> load_results(const std::string& path);

/// Appends whole records; writes the header when the file is new or empty.
/// Serialized across threads of this process.
void append_records(const std::string& path, const std::vector<RunRecord>& records);

/// Re-runs the record's restart with its seed.
OptimizationResult rerun(const RunRecord& record);

}  // namespace gbsherald
