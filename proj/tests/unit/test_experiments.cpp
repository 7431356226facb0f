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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "gbsherald/analysis.hpp"
#include "gbsherald/records.hpp"

using namespace gbsherald;

namespace {

const char* kConfig = R"(gbsherald-config v1
# comment line
[cat_a]
modes = 2
pattern = 2
target = cat
alpha = 2
restarts = 3
seed = 7

[cat_b]
modes = 2
photons = 1
pattern = 1
target = cat
min_fidelity = 0.9
weights = 1,0.5
)";

std::vector<QualitySample> reference_rows() {
  return {{0, 1 - 3.1e-2, 0.085}, {0, 1 - 2.1e-3, 0.027}, {0, 1 - 3.1e-3, 0.028}, {0, 1 - 6.1e-4, 0.015}, {1, 1 - 4.2e-3, 0.10},
          {1, 1 - 6.4e-4, 0.061}, {2, 1 - 3.2e-2, 0.25},  {2, 1 - 2.3e-3, 0.10},  {3, 1 - 3.6e-2, 0.39}};
}

int parse_error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("config parsing") {
  const auto defs = parse_config(kConfig);
  REQUIRE(defs.size() == 2);
  CHECK(defs[0].id == "cat_a");
  CHECK(defs[0].pattern == std::vector<int>{2});
  CHECK(defs[0].seed == 7);
  CHECK(defs[0].restarts == 3);
  CHECK_FALSE(defs[0].min_fidelity);
  CHECK(defs[1].photons == std::vector<int>{1});
  CHECK(*defs[1].min_fidelity == 0.9);
  CHECK(defs[1].probability_weight == 0.5);
  CHECK(defs[1].problem().single_photon_count() == 1);
}

TEST_CASE("config errors carry line numbers") {
  CHECK(parse_error_line("nope\n") == 1);
  CHECK(parse_error_line("gbsherald-config v1\nmodes = 2\n") == 2);
  CHECK(parse_error_line("gbsherald-config v1\n[a]\nmodes = 2\npattern = x\n") == 4);
  CHECK(parse_error_line("gbsherald-config v1\n[a]\nbogus = 1\n") == 3);
  CHECK(parse_error_line("gbsherald-config v1\n[a]\npattern = 1\n[a]\npattern = 1\n") == 4);
  // A pattern that does not fit the mode count is reported at its block header.
  CHECK(parse_error_line("gbsherald-config v1\n\n[a]\nmodes = 3\npattern = 1\n") == 3);
  CHECK_THROWS_AS(load_config("/nonexistent/file.conf"), NotFoundError);
}

TEST_CASE("record round trip") {
  const auto def = parse_config(kConfig)[1];
  OptimizationResult res;
  res.params = {0.1, -0.25, 1.0 / 3.0, 2.0, 0.0, 1e-17};
  res.fidelity = 0.95;
  res.probability = 0.3;
  res.reward = 1.1;
  res.n_T = 1;
  res.restart = 4;
  res.iterations = 17;
  const auto rec = make_record(def, res, 1.5);
  const auto back = parse_record(format_record(rec));
  CHECK(format_record(back) == format_record(rec));
  CHECK(back.params == rec.params);
  CHECK(back.def.min_fidelity == def.min_fidelity);
  CHECK(back.single_photons == 1);
  CHECK(back.sample().probability == 0.3);
}

TEST_CASE("results files") {
  const auto path = (std::filesystem::temp_directory_path() / "gbsherald_records_test.results").string();
  std::remove(path.c_str());
  RunRecord a;
  a.def.id = "x";
  a.one_minus_F = 0.1;
  a.p = 0.2;
  append_records(path, {a});
  a.def.id = "y";
  append_records(path, {a});
  const auto loaded = load_results(path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[1].def.id == "y");
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_results("gbsherald-results v1\nid=z p=0.1\n"), ParseError);
  CHECK_THROWS_AS(parse_results("gbsherald-results v1\nid=z one_minus_F=2 p=0.1\n"), ParseError);
}

TEST_CASE("rerunning a record reproduces it") {
  auto def = parse_config(kConfig)[0];
  def.max_iterations = 40;
  const auto first = optimize_restart(def.problem(), 2, def.seed);
  auto rec = make_record(def, first, 0.0);
  rec = parse_record(format_record(rec));
  const auto again = rerun(rec);
  CHECK(again.params == first.params);
  CHECK(again.reward == first.reward);
}

TEST_CASE("analysis of the three-mode reference rows") {
  const auto rows = reference_rows();
  const auto report = analyze(rows);
  CHECK(std::abs(report.pearson_r - 0.919722614264192) < 1e-12);
  CHECK(std::abs(report.slope - 0.06686217) < 1e-8);
  CHECK(std::abs(report.intercept + 0.03976413) < 1e-8);
  auto reversed = rows;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(analyze(reversed).pearson_r == report.pearson_r);
  const std::vector<QualitySample> same{{1, 0.9, 0.1}, {1, 0.9, 0.1}};
  CHECK_THROWS_AS(analyze(same), DomainError);
}

TEST_CASE("source noise") {
  const QualitySample s0{0, 0.9, 0.2}, s1{1, 0.9, 0.2}, s2{2, 0.9, 0.2};
  const auto n0 = apply_source_noise(s0, 0.84, 0.993, 0.98);
  CHECK(n0.fidelity == 0.9);
  CHECK(n0.probability == 0.2);
  CHECK(std::abs(apply_source_noise(s2, 0.84, 1.0, 1.0).probability - 0.2 * 0.7056) < 1e-15);
  CHECK(std::abs(apply_source_noise(s1, 1.0, 0.993, 0.98).fidelity - 0.9 * 0.97314) < 1e-12);
  CHECK_THROWS_AS(apply_source_noise(s1, 1.2, 1.0, 1.0), DomainError);
}

}
