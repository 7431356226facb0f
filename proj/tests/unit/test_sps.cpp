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

#include "gbsherald/heralding.hpp"
#include "gbsherald/sps.hpp"
#include "support.hpp"

using namespace gbsherald;
using std::numbers::pi;

namespace {

const double kRStar = std::atanh(1.0 / std::sqrt(2.0));

}  // namespace

TEST_SUITE("sps_analytic") {

TEST_CASE("alpha_n") {
  CHECK(alpha_n(0.0, 0) == 1.0);
  CHECK(alpha_n(0.0, 3) == 0.0);
  CHECK(std::abs(alpha_n(kRStar, 0) - std::pow(2.0, -0.25)) < 1e-15);
  for (double r : {0.2, 0.9, 1.4}) {
    double mass = 0.0;
    for (int n = 0; n <= 150; ++n) mass += alpha_n(r, n) * alpha_n(r, n);
    CHECK(std::abs(mass - 1.0) < 1e-10);
  }
  // At r = 1.4 the terms beyond n = 60 still hold about 5e-8 of the mass.
  double head = 0.0;
  for (int n = 0; n <= 60; ++n) head += alpha_n(1.4, n) * alpha_n(1.4, n);
  CHECK(1.0 - head > 1e-8);
  CHECK(1.0 - head < 1e-7);
  // Log-domain evaluation stays finite far past double factorial overflow.
  CHECK(std::isfinite(alpha_n(1.0, 200)));
  CHECK(alpha_n(1.0, 200) > 0.0);
}

TEST_CASE("optimal design cancels every higher term") {
  const auto d = optimal_design();
  CHECK(std::abs(d.r1 - 0.881374) < 1e-6);
  CHECK(d.is_cancelling());
  const auto c = heralded_coefficients(d, 40);
  CHECK(std::abs(std::norm(c[0]) - 0.25) < 1e-14);
  for (int n = 1; n < 10; ++n) CHECK(std::abs(c[n]) < 1e-12);
  for (const auto& x : c) CHECK(std::isfinite(std::abs(x)));
}

TEST_CASE("f = -1 removes the one-photon term") {
  const SpsDesign d{-kRStar, kRStar, pi / 4, pi / 2};
  CHECK(std::abs(d.f() + 1.0) < 1e-15);
  CHECK(std::abs(heralded_coefficients(d, 2)[0]) < 1e-15);
}

TEST_CASE("phase necessity") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> r(0.05, 1.3), theta(0.05, pi / 2 - 0.05);
  for (int k = 0; k < 1000; ++k) {
    const SpsDesign d{r(rng), r(rng), theta(rng), 0.3};
    const auto report = check_phi_necessity(d);
    CHECK_FALSE(report.phi_cancelling);
    CHECK(report.c2_relative > 0.0);
    CHECK(report.real_part_at_imaginary_root <= -1.0 + 1e-12);
  }
  const auto good = check_phi_necessity(SpsDesign::cancelling(0.5, 0.7));
  CHECK(good.phi_cancelling);
  CHECK(good.c2_relative < 1e-12);
  const auto flipped = check_phi_necessity(SpsDesign{-kRStar, kRStar, pi / 4, 3 * pi / 2});
  CHECK(std::abs(flipped.c2_reduced) < 1e-12);
  const auto branch = check_phi_necessity(SpsDesign{0.5, 0.7, 0.6, 0.0});
  CHECK(branch.factorized_branch);
  // Equal squeezers on a real splitter stay a product of squeezed vacua: nothing odd is heralded.
  for (const auto& c : heralded_coefficients(SpsDesign{0.6, 0.6, 0.3, 0.0}, 4)) CHECK(std::abs(c) < 1e-15);
  CHECK(std::isnan(branch.real_part_at_imaginary_root));
}

TEST_CASE("herald probability") {
  CHECK(std::abs(herald_probability(kRStar, kRStar) - 0.25) < 1e-15);
  CHECK(herald_probability(0.0, 0.7) == 0.0);
  const double a = 0.3, b = 0.9, c = 1.1, e = 0.5;
  CHECK(std::abs(herald_probability(a, b) * herald_probability(c, e) - herald_probability(a, e) * herald_probability(c, b)) < 1e-15);
  CHECK(std::abs(herald_probability(0.5, 0.5) - std::pow(std::sinh(0.5), 2) / std::pow(std::cosh(0.5), 4)) < 1e-15);
}

TEST_CASE("closed-form optimum beats a dense grid") {
  double best = 0.0, best_a = 0.0, best_b = 0.0;
  for (int i = 0; i <= 1400; ++i)
    for (int j = 0; j <= 1400; j += 7) {
      const double a = i * 1e-3, b = j * 1e-3, p = herald_probability(a, b);
      if (p > best) best = p, best_a = a, best_b = b;
    }
  CHECK(best <= 0.25 + 1e-15);
  CHECK(0.25 - best < 1e-5);
  CHECK(std::abs(best_a - kRStar) < 2e-3);
  CHECK(std::abs(best_b - kRStar) < 1e-2);
}

TEST_CASE("Fock backend verification") {
  const auto v = verify_against_fock(optimal_design(), 20);
  CHECK(std::abs(v.probability_fock - 0.25) < 1e-8);
  CHECK(v.fidelity >= 1.0 - 1e-9);

  const auto half = verify_against_fock(SpsDesign::cancelling(0.5, 0.5), 20);
  CHECK(std::abs(half.probability_fock - std::pow(std::sinh(0.5), 2) / std::pow(std::cosh(0.5), 4)) < 1e-10);

  const SpsDesign off{0.5, 0.9, 0.7, 0.3};
  const auto w = verify_against_fock(off, 20);
  CHECK(w.fidelity >= 1.0 - 1e-9);
  const auto res = herald(run_circuit(sps_circuit(off, 30)), HeraldPattern{{1}, 0});
  REQUIRE(res.state);
  CHECK(std::abs((*res.state)[3]) > 1e-6);
}

}
