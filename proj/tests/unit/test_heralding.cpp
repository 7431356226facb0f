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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gbsherald/circuit.hpp"
#include "gbsherald/heralding.hpp"
#include "gbsherald/sps.hpp"

using namespace gbsherald;
using std::numbers::pi;

namespace {

CircuitSpec squeezed_pair(double r1, double r2, double theta, double phi, int cutoff) {
  CircuitSpec spec;
  spec.mode_count = 2;
  spec.cutoff = cutoff;
  spec.inputs = {Squeezed{r1}, Squeezed{r2}};
  spec.mesh.placements = {{0, 1, theta, phi}};
  spec.mesh.final_phases = {0.0, 0.0};
  return spec;
}

}  // namespace

TEST_SUITE("heralding") {

TEST_CASE("vacuum heralds vacuum") {
  const auto res = herald(MultiModeState::vacuum(2, 5), HeraldPattern{{0}, 0});
  REQUIRE(res.state);
  CHECK(std::abs(res.probability - 1.0) < 1e-15);
  CHECK(std::abs(fidelity(*res.state, FockVector::basis(0, 5)) - 1.0) < 1e-15);
  CHECK_THROWS_AS(herald(MultiModeState::vacuum(2, 5), HeraldPattern{{0, 0}, 0}), ValidationError);
  CHECK_THROWS_AS(herald(MultiModeState::vacuum(2, 5), HeraldPattern{{5}, 0}), ValidationError);
}

TEST_CASE("single-photon source heralds one photon with probability one quarter") {
  const auto state = run_circuit(sps_circuit(optimal_design(), 30));
  const auto res = herald(state, HeraldPattern{{1}, 0});
  REQUIRE(res.state);
  CHECK(std::abs(res.probability - 0.25) < 1e-10);
  CHECK(std::abs(fidelity(*res.state, FockVector::basis(1, 30)) - 1.0) < 1e-10);
  CHECK(res.n_T == 1);
}

TEST_CASE("squeezed-vacuum inputs keep the total photon number even") {
  const auto state = run_circuit(squeezed_pair(0.4, -0.7, 0.9, 0.3, 24));
  for (int n = 0; n < 6; ++n) {
    const auto res = herald(state, HeraldPattern{{n}, 0});
    double wrong = 0.0;
    for (int k = 0; k < res.unnormalized.size(); ++k)
      if ((k + n) % 2) wrong += std::norm(res.unnormalized(k));
    CHECK(wrong < 1e-12);
    CHECK(res.probability > 1e-6);
  }
}

TEST_CASE("pattern enumeration") {
  const auto vac = herald_all_patterns(MultiModeState::vacuum(3, 4), 0, 3);
  CHECK(static_cast<long long>(vac.size()) == pattern_count(2, 3));
  for (const auto& [pattern, res] : vac) CHECK((pattern.total() == 0) == (res.probability > 0.5));

  const auto state = run_circuit(sps_circuit(optimal_design(), 30));
  const auto all = herald_all_patterns(state, 0, 10);
  double total = 0.0;
  for (const auto& [pattern, res] : all) {
    total += res.probability;
    if (pattern.counts == std::vector<int>{1}) CHECK(std::abs(res.probability - 0.25) < 1e-10);
  }
  CHECK(total <= 1.0 + 1e-12);
  CHECK(total > 0.9);
  CHECK_THROWS_AS(herald_all_patterns(MultiModeState::vacuum(2, 4), 0, 4), ValidationError);
}

TEST_CASE("pattern count and resource guard") {
  CHECK(pattern_count(1, 5) == 6);
  CHECK(pattern_count(2, 2) == 6);
  CHECK(pattern_count(3, 6) == 84);
  CHECK(pattern_count(7, 20) == 888030);
  CHECK(pattern_count(8, 20) > 1000000);
}

TEST_CASE("parity feasibility") {
  CircuitSpec s0 = squeezed_pair(0.3, 0.3, 0.5, 0.0, 10);
  CHECK(pattern_parity_feasible(s0, HeraldPattern{{2}, 0}) == ParitySupport::even);
  CHECK(pattern_parity_feasible(s0, HeraldPattern{{1}, 0}) == ParitySupport::odd);
  CircuitSpec s1 = s0;
  s1.inputs[1] = SqueezedPhoton{0.3};
  CHECK(pattern_parity_feasible(s1, HeraldPattern{{1}, 0}) == ParitySupport::even);
  CircuitSpec s2 = s1;
  s2.inputs[0] = SinglePhoton{};
  CHECK(pattern_parity_feasible(s2, HeraldPattern{{2}, 0}) == ParitySupport::even);
  CircuitSpec displaced = s0;
  displaced.inputs[0] = DisplacedSqueezed{0.2, {0.1, 0.0}};
  CHECK(pattern_parity_feasible(displaced, HeraldPattern{{2}, 0}) == ParitySupport::mixed);
}

TEST_CASE("independent parameter count") {
  CHECK(independent_parameter_count(1) == 0);
  CHECK(independent_parameter_count(2) == 2);
  CHECK(independent_parameter_count(3) == 5);
}

TEST_CASE("heralded core degree is bounded by detected photons") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> r(-0.8, 0.8), angle(-pi, pi);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = squeezed_pair(r(rng), r(rng), angle(rng), angle(rng), 40);
    const auto kernel = gaussian_kernel(spec);
    const auto state = run_circuit(spec, 1e-3);
    for (int n : {0, 2, 4}) {
      const auto res = herald(state, HeraldPattern{{n}, 0});
      if (!res.state) continue;
      const auto core = stellar_core(*res.state, kernel(0, 0), 12);
      CHECK(core_degree(core, 1e-6) <= n);
      CHECK(res.stellar_rank_bound == n);
    }
  }
}

TEST_CASE("pattern formatting") {
  const HeraldPattern p{{2, 0, 1}, 1};
  CHECK(p.total() == 3);
  CHECK(!p.to_string().empty());
  CHECK(p == HeraldPattern{{2, 0, 1}, 1});
}

}
