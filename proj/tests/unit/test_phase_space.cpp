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
#include "gbsherald/gates.hpp"
#include "gbsherald/phase_space.hpp"

using namespace gbsherald;

namespace {

bool preserves_form(const SymplecticMatrix& S, double tol = 1e-12) {
  const auto omega = symplectic_form(S.mode_count());
  return (S.F() * omega * S.F().transpose() - omega).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_SUITE("phase_space") {

TEST_CASE("vacuum Wigner peak and normalization") {
  const auto vac = GaussianState::vacuum(1);
  CHECK(std::abs(gaussian_wigner(vac, Eigen::Vector2d(0, 0)) - 1.0 / std::numbers::pi) < 1e-15);
  const double h = 0.05;
  double total = 0.0;
  for (double q = -8; q <= 8; q += h)
    for (double p = -8; p <= 8; p += h) total += gaussian_wigner(vac, Eigen::Vector2d(q, p)) * h * h;
  CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("squeezed vacuum keeps the pure-state peak") {
  const auto sq = symplectic_apply(GaussianState::vacuum(1), squeezer_symplectic(0.5));
  CHECK(std::abs(gaussian_wigner(sq, Eigen::Vector2d(0, 0)) - 1.0 / std::numbers::pi) < 1e-14);
  CHECK(std::abs(sq.V()(0, 0) - std::exp(-1.0) / 2) < 1e-15);
  CHECK(std::abs(sq.V()(1, 1) - std::exp(1.0) / 2) < 1e-15);
  CHECK(std::abs(sq.purity_indicator() - 1.0) < 1e-12);
}

TEST_CASE("singular covariance is rejected") {
  RealMatrix<double> V = RealMatrix<double>::Zero(2, 2);
  CHECK_THROWS_AS(GaussianState(RealVector<double>::Zero(2), V), ValidationError);
}

TEST_CASE("identity transform leaves state unchanged") {
  const auto vac = GaussianState::vacuum(2);
  const auto out = symplectic_apply(vac, SymplecticMatrix(RealMatrix<double>::Identity(4, 4)));
  CHECK(out.V() == vac.V());
  CHECK(out.xi() == vac.xi());
}

TEST_CASE("non-symplectic matrices are rejected") {
  RealMatrix<double> F = RealMatrix<double>::Identity(2, 2);
  F(0, 0) = 2.0;
  CHECK_THROWS_AS(SymplecticMatrix{F}, ValidationError);
}

TEST_CASE("squeezer composition") {
  CHECK(squeezer_symplectic(0.0).F() == RealMatrix<double>::Identity(2, 2));
  const auto s1 = squeezer_symplectic(1.0);
  CHECK(std::abs(s1.F()(0, 0) - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(s1.F()(1, 1) - std::exp(1.0)) < 1e-15);
  const auto ab = squeezer_symplectic(0.3) * squeezer_symplectic(-0.8);
  CHECK((ab.F() - squeezer_symplectic(-0.5).F()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("beam splitter symplectic") {
  CHECK((beamsplitter_symplectic(0.0, 0.7).F() - RealMatrix<double>::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
  // theta = pi/2, phi = 0 swaps the modes up to a sign on one of them.
  const auto swap = beamsplitter_symplectic(std::numbers::pi / 2, 0.0);
  RealVector<double> xi(4);
  xi << 1.0, 2.0, 0.0, 0.0;
  const RealVector<double> out = swap.F() * xi;
  CHECK(std::abs(std::abs(out(2)) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(out(3)) - 2.0) < 1e-15);
  CHECK(std::abs(out(0)) < 1e-15);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) CHECK(preserves_form(beamsplitter_symplectic(u(rng), u(rng))));
}

TEST_CASE("passive symplectic matches the mode matrix") {
  const double theta = 0.4, phi = 1.1;
  const auto U = beamsplitter_mode_matrix(theta, phi);
  CHECK((passive_symplectic(U) - beamsplitter_symplectic(theta, phi).F()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("uncertainty principle check") {
  CHECK(is_physical(RealMatrix<double>(RealMatrix<double>::Identity(2, 2) * 0.5)));
  CHECK_FALSE(is_physical(RealMatrix<double>(RealMatrix<double>::Identity(2, 2) * 0.4)));
  RealMatrix<double> V(2, 2);
  V << 0.1, 0.0, 0.0, 2.5;
  CHECK(is_physical(V));
}

TEST_CASE("moments from Fock states") {
  const auto vac = moments_from_fock(MultiModeState::vacuum(1, 6));
  CHECK(vac.xi.cwiseAbs().maxCoeff() < 1e-15);
  CHECK((vac.V - RealMatrix<double>::Identity(2, 2) * 0.5).cwiseAbs().maxCoeff() < 1e-15);

  const auto one = moments_from_fock(MultiModeState(1, 6, FockVector::basis(1, 6).amplitudes()));
  CHECK((one.V - RealMatrix<double>::Identity(2, 2) * 1.5).cwiseAbs().maxCoeff() < 1e-14);

  const auto sq = squeezed_vacuum_fock(0.4, 30).state;
  const auto m = moments_from_fock(MultiModeState(1, 30, sq.amplitudes()));
  CHECK(std::abs(m.V(0, 0) - std::exp(-0.8) / 2) < 1e-6);
  CHECK(std::abs(m.V(1, 1) - std::exp(0.8) / 2) < 1e-6);
  CHECK(std::abs(m.V(0, 1)) < 1e-12);

  const auto wide = squeezed_vacuum_fock(1.3, 8).state;
  CHECK_THROWS_AS(moments_from_fock(MultiModeState(1, 8, wide.amplitudes())), TruncationError);
}

TEST_CASE("entangled moments agree with the Fock backend") {
  CircuitSpec spec;
  spec.mode_count = 2;
  spec.cutoff = 30;
  spec.inputs = {Squeezed{0.5}, Vacuum{}};
  spec.mesh.placements = {{0, 1, std::numbers::pi / 4, 0.0}};
  spec.mesh.final_phases = {0.0, 0.0};
  const auto fock = moments_from_fock(run_circuit(spec));
  const auto expected = symplectic_apply(symplectic_apply(GaussianState::vacuum(2), embed(squeezer_symplectic(0.5), {0}, 2)),
                                         beamsplitter_symplectic(std::numbers::pi / 4, 0.0));
  CHECK((fock.V - expected.V()).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(std::abs(expected.V()(0, 2)) > 0.1);
}

TEST_CASE("displacement moves the mean") {
  const auto d = symplectic_apply(GaussianState::vacuum(1), displacement_symplectic(std::complex<double>(1.0, -0.5)));
  CHECK(std::abs(d.xi()(0) - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(d.xi()(1) + 0.5 * std::sqrt(2.0)) < 1e-15);
}

}
