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

#include "gbsherald/fock.hpp"
#include "gbsherald/gates.hpp"
#include "gbsherald/targets.hpp"
#include "support.hpp"

using namespace gbsherald;

TEST_SUITE("fock_core") {

TEST_CASE("inner product of basis states") {
  const auto v0 = FockVector::basis(0, 6), v1 = FockVector::basis(1, 6);
  CHECK(inner_product(v0, v0) == std::complex<double>(1.0));
  CHECK(inner_product(v0, v1) == std::complex<double>(0.0));
  CHECK_THROWS_AS(inner_product(v0, FockVector::basis(0, 7)), DimensionError);
}

TEST_CASE("inner product is antilinear in the first argument") {
  std::mt19937_64 rng(3);
  const auto a = testing::random_state(rng, 9), b = testing::random_state(rng, 9);
  const std::complex<double> z{0.3, -1.2};
  const FockVector za(ComplexVector<double>(z * a.amplitudes()));
  CHECK(std::abs(inner_product(za, b) - std::conj(z) * inner_product(a, b)) < 1e-14);
  CHECK(std::abs(inner_product(a, a) - 1.0) < 1e-12);
}

TEST_CASE("fidelity bounds and contract") {
  std::mt19937_64 rng(5);
  const auto v = testing::random_state(rng, 12);
  CHECK(std::abs(fidelity(v, v) - 1.0) < 1e-12);
  CHECK(fidelity(FockVector::basis(0, 4), FockVector::basis(1, 4)) == 0.0);
  const FockVector half(ComplexVector<double>(0.5 * v.amplitudes()));
  CHECK_THROWS_AS(fidelity(half, v), ContractError);
}

TEST_CASE("fidelity of the even cat with vacuum") {
  // Even-cat coefficients summed directly: c_n = 2 e^{-a^2/2} a^n / sqrt(n!) / N on even n.
  const double a = 2.0;
  const double n2 = 2.0 * (1.0 + std::exp(-2.0 * a * a));
  double kept = 0.0;
  for (int n = 0; n < 20; n += 2) kept += 4.0 * std::exp(-a * a + 2 * n * std::log(a) - testing::log_factorial(n)) / n2;
  const double expected = 4.0 * std::exp(-a * a) / n2 / kept;
  const auto cat = cat_state({a, 0.0}, CatParity::even, 20, 1e-6);
  CHECK(std::abs(fidelity(cat, FockVector::basis(0, 20)) - expected) < 1e-14);
}

TEST_CASE("quantum angle") {
  CHECK(quantum_angle(1.0).radians == 0.0);
  CHECK(std::abs(quantum_angle(0.0).radians - std::numbers::pi / 2) < 1e-15);
  CHECK(std::abs(quantum_angle(0.969).radians - 0.1769907834862365) < 1e-12);
  CHECK_NOTHROW(quantum_angle(1.0 + 5e-13));
  CHECK_THROWS_AS(quantum_angle(1.01), DomainError);
  CHECK_THROWS_AS(quantum_angle(-0.1), DomainError);
}

TEST_CASE("tensor product layout") {
  const std::vector<FockVector> empty;
  CHECK_THROWS_AS(tensor_product(empty), ValidationError);
  const auto vac = tensor_product(std::vector{FockVector::basis(0, 5), FockVector::basis(0, 5)});
  CHECK(vac.amplitudes() == MultiModeState::vacuum(2, 5).amplitudes());
  const auto s = tensor_product(std::vector{FockVector::basis(1, 5), FockVector::basis(0, 5)});
  const std::vector<int> occ{1, 0};
  CHECK(s.amplitude(occ) == std::complex<double>(1.0));
  CHECK(s.amplitudes().cwiseAbs().sum() == 1.0);
  CHECK(s.occupation(s.index(occ)) == occ);
}

TEST_CASE("tensor product with squeezed vacuum") {
  const double r = 0.5;
  const auto sq = squeezed_vacuum_fock(r, 16).state;
  const auto s = tensor_product(std::vector{sq, FockVector::basis(0, 16)});
  for (int n = 0; 2 * n < 16; ++n) {
    const double expected =
        std::exp(0.5 * testing::log_factorial(2 * n) - n * std::log(2.0) - testing::log_factorial(n)) * std::pow(std::tanh(r), n) / std::sqrt(std::cosh(r));
    const std::vector<int> occ{2 * n, 0};
    CHECK(std::abs(std::abs(s.amplitude(occ)) - expected) < 1e-14);
  }
}

TEST_CASE("total photon parity support") {
  CHECK(total_photon_parity_support(MultiModeState::vacuum(2, 4)) == ParitySupport::even);
  CHECK(total_photon_parity_support(tensor_product(std::vector{FockVector::basis(1, 4), FockVector::basis(0, 4)})) == ParitySupport::odd);
  const auto sq = squeezed_vacuum_fock(0.6, 20).state;
  CHECK(total_photon_parity_support(tensor_product(std::vector{sq, sq})) == ParitySupport::even);
  const FockVector mixed(ComplexVector<double>(ComplexVector<double>::Constant(3, 1.0 / std::sqrt(3.0))));
  CHECK(parity_support(mixed) == ParitySupport::mixed);
}

TEST_CASE("resize and highest occupied") {
  const auto v = FockVector::basis(3, 8);
  CHECK(v.resized(12).cutoff() == 12);
  CHECK(v.resized(12).highest_occupied() == 3);
  CHECK(v.resized(4).squared_norm() == 1.0);
  CHECK(v.resized(3).squared_norm() == 0.0);
}

}
