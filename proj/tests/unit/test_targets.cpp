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
#include <vector>

#include "gbsherald/gates.hpp"
#include "gbsherald/targets.hpp"

using namespace gbsherald;
using std::numbers::pi;

TEST_SUITE("targets") {

TEST_CASE("cat normalization and parity") {
  CHECK(std::abs(cat_normalization({2.0, 0.0}, CatParity::even) - std::sqrt(2.0 * (1.0 + std::exp(-8.0)))) < 1e-15);
  const auto zero = cat_state({0.0, 0.0}, CatParity::even, 10);
  CHECK(std::abs(fidelity(zero, FockVector::basis(0, 10)) - 1.0) < 1e-15);
  CHECK_THROWS_AS(cat_state({0.0, 0.0}, CatParity::odd, 10), DomainError);
  const auto odd = cat_state({2.0, 0.0}, CatParity::odd, 30);
  for (int n = 0; n < 30; n += 2) CHECK(odd[n] == std::complex<double>(0.0));
  CHECK(parity_support(cat_state({2.0, 0.0}, CatParity::even, 30)) == ParitySupport::even);
  CHECK_THROWS_AS(cat_state({2.0, 0.0}, CatParity::even, 8), TruncationError);
}

TEST_CASE("cat Wigner values") {
  const double n2 = 2.0 * (1.0 + std::exp(-8.0));
  // Origin: the two Gaussians and the interference term add to (2 + 2) e^{0} / (pi n2) apart from the e^{-8} overlap.
  const double origin = (2.0 * std::exp(-4.0 * 2.0) + 2.0) / (pi * n2);
  CHECK(std::abs(cat_wigner({2.0, 0.0}, CatParity::even, 0.0, 0.0) - origin) < 1e-15);
  CHECK(std::abs(cat_wigner({2.0, 0.0}, CatParity::even, 0.0, 0.0) - 1.0 / pi) < 1e-3);
  // Peak at q = sqrt(2) alpha: one Gaussian at 1/pi scaled by 1/n2, plus exponentially small terms.
  // Peak at q = sqrt(2) alpha: one Gaussian at 1/pi plus the interference term 2 e^{-8} / pi, over n2.
  CHECK(std::abs(cat_wigner({2.0, 0.0}, CatParity::even, 2.0 * std::sqrt(2.0), 0.0) - (1.0 + 2.0 * std::exp(-8.0)) / (pi * n2)) < 1e-12);
  GridSpec grid{-7.0, 7.0, -7.0, 7.0, 141};
  CHECK(std::abs(cat_wigner({2.0, 0.0}, CatParity::even, grid).integral() - 1.0) < 1e-4);
}

TEST_CASE("Fock-kernel Wigner function") {
  GridSpec origin{-1.0, 1.0, -1.0, 1.0, 3};
  CHECK(std::abs(wigner_of_fock_state(FockVector::basis(0, 4), origin).values(1, 1) - 1.0 / pi) < 1e-15);
  CHECK(std::abs(wigner_of_fock_state(FockVector::basis(1, 4), origin).values(1, 1) + 1.0 / pi) < 1e-15);
  GridSpec grid{-5.0, 5.0, -5.0, 5.0, 41};
  const auto cat = cat_state({2.0, 0.0}, CatParity::even, 40);
  const auto kernel = wigner_of_fock_state(cat, grid).values;
  const auto closed = cat_wigner({2.0, 0.0}, CatParity::even, grid).values;
  CHECK((kernel - closed).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("position densities") {
  std::vector<double> q;
  for (int i = -40; i <= 40; ++i) q.push_back(0.1 * i);
  const auto vac = position_density(FockVector::basis(0, 6), q);
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(std::abs(vac[i] - std::exp(-q[i] * q[i]) / std::sqrt(pi)) < 1e-14);
  const double r = 0.4;
  const auto sq = position_density(squeezed_vacuum_fock(r, 60).state, q);
  const double var = std::exp(-2 * r) / 2;
  for (std::size_t i = 0; i < q.size(); ++i) CHECK(std::abs(sq[i] - std::exp(-q[i] * q[i] / (2 * var)) / std::sqrt(2 * pi * var)) < 1e-9);
}

TEST_CASE("Hermite functions are orthonormal") {
  const int count = 30;
  const double h = 0.01;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(count, count);
  for (double q = -12.0; q <= 12.0; q += h) {
    const auto psi = hermite_functions(q, count);
    for (int a = 0; a < count; ++a)
      for (int b = 0; b < count; ++b) gram(a, b) += psi[a] * psi[b] * h;
  }
  CHECK((gram - Eigen::MatrixXd::Identity(count, count)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("canonical GKP states") {
  const auto wide = gkp_canonical(GkpParameters{1.5, 1.5, 4}, 30);
  CHECK(fidelity(wide.state, FockVector::basis(0, 30)) > 0.9);

  const auto gkp = gkp_canonical(GkpParameters{0.25, 0.25, 12}, 250);
  CHECK(gkp.tail < 1e-10);
  for (int n = 1; n < 250; n += 2) CHECK(std::abs(gkp.state[n]) < 1e-10);
  const double s = std::sqrt(pi);
  const std::vector<double> probe{0.0, s, 2 * s, 4 * s, -2 * s};
  const auto rho = position_density(gkp.state, probe);
  CHECK(rho[0] > 100 * rho[1]);
  CHECK(rho[2] > 100 * rho[1]);
  CHECK(rho[3] > 100 * rho[1]);
  CHECK(std::abs(rho[2] - rho[4]) < 1e-10);
  CHECK_THROWS_AS(GkpParameters({0.25, 0.25, 1}).validate(), DomainError);
}

TEST_CASE("GKP core target") {
  CHECK_THROWS_AS(gkp_core_target(0.01), DomainError);
  const auto core = gkp_core_target(0.25);
  CHECK(core.core.cutoff() == 5);
  CHECK(core.core.is_normalized(1e-12));
  for (int n = 1; n < 5; n += 2) CHECK(std::abs(core.core[n]) < 1e-12);
  CHECK(std::abs(core.overlap - 0.604039) < 1e-5);
  CHECK(std::abs(core.r + 0.321609) < 1e-5);
  CHECK(gkp_core_target(0.25, 5).overlap >= gkp_core_target(0.25, 3).overlap);
}

TEST_CASE("lattice peaks") {
  const auto zero = GkpLattice::logical_zero_peaks(8.0);
  CHECK(zero.size() == 5);
  const auto one = GkpLattice::logical_one_peaks(8.0);
  CHECK(one.size() == 4);
  CHECK(std::abs(GkpLattice::spacing() - std::sqrt(pi)) < 1e-15);
}

TEST_CASE("grid validation and text") {
  CHECK_THROWS_AS(GridSpec({1.0, 0.0, -1.0, 1.0, 5}).validate(), ValidationError);
  CHECK_THROWS_AS(GridSpec({-1.0, 1.0, -1.0, 1.0, 0}).validate(), ValidationError);
  const auto w = wigner_of_fock_state(FockVector::basis(0, 2), GridSpec{-1.0, 1.0, -1.0, 1.0, 3});
  CHECK(w.to_text().find("# q p W") == 0);
}

}
