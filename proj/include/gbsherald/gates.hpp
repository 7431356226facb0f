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

// Fock-basis gates and in-place kernels on dense multi-mode tensors.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gbsherald/constants.hpp"
#include "gbsherald/errors.hpp"
#include "gbsherald/fock.hpp"

namespace gbsherald {

/// Gate matrix on one (D x D) or two (D^2 x D^2, first mode most significant) modes.
template <typename Scalar>
struct BasicGateMatrix {
  ComplexMatrix<Scalar> matrix;
  int modes = 1;
  int cutoff = 0;
  /// Largest deviation of a column norm from 1 among the columns checked at construction.
  Scalar unitary_within = Scalar(0);
};

using GateMatrix = BasicGateMatrix<double>;

/// A truncated series state and the probability mass beyond the cutoff.
template <typename Scalar>
struct BasicSeriesState {
  BasicFockVector<Scalar> state;
  Scalar tail = Scalar(0);
};

using SeriesState = BasicSeriesState<double>;

inline void check_squeezing(double r) {
  if (!(std::abs(r) <= kMaxSqueezing + 1e-12))
    throw DomainError("squeezing amplitude " + std::to_string(r) + " exceeds the 12 dB cap");
}

/// S(r)|0> with S(r) = exp(r (a^2 - a^dag^2) / 2); amplitude at 2n is
/// sqrt((2n)!) / (2^n n!) (-tanh r)^n / sqrt(cosh r).
template <typename Scalar = double>
BasicSeriesState<Scalar> squeezed_vacuum_fock(Scalar r, int cutoff) {
  check_squeezing(static_cast<double>(r));
  if (cutoff < 1) throw DimensionError("cutoff must be positive");
  const Scalar t = -std::tanh(r);
  ComplexVector<Scalar> v = ComplexVector<Scalar>::Zero(cutoff);
  Scalar a = Scalar(1) / std::sqrt(std::cosh(r));
  Scalar mass = 0;
  for (int n = 0; 2 * n < cutoff; ++n) {
    if (n > 0) a *= t * std::sqrt(Scalar(2 * n - 1) / Scalar(2 * n));
    v(2 * n) = a;
    mass += a * a;
  }
  return {BasicFockVector<Scalar>(std::move(v)), std::max(Scalar(0), Scalar(1) - mass)};
}

/// S(r)|1>; amplitude at 2n+1 is sqrt((2n+1)!) / (2^n n!) (-tanh r)^n / cosh^{3/2} r.
template <typename Scalar = double>
BasicSeriesState<Scalar> squeezed_photon_fock(Scalar r, int cutoff) {
  check_squeezing(static_cast<double>(r));
  if (cutoff < 2) throw DimensionError("cutoff must be >= 2 for a photon");
  const Scalar t = -std::tanh(r);
  ComplexVector<Scalar> v = ComplexVector<Scalar>::Zero(cutoff);
  Scalar a = std::pow(std::cosh(r), Scalar(-1.5));
  Scalar mass = 0;
  for (int n = 0; 2 * n + 1 < cutoff; ++n) {
    if (n > 0) a *= t * std::sqrt(Scalar(2 * n + 1) / Scalar(2 * n));
    v(2 * n + 1) = a;
    mass += a * a;
  }
  return {BasicFockVector<Scalar>(std::move(v)), std::max(Scalar(0), Scalar(1) - mass)};
}

/// Coherent-state amplitudes e^{-|d|^2/2} d^n / sqrt(n!).
template <typename Scalar = double>
BasicSeriesState<Scalar> coherent_fock(std::complex<Scalar> d, int cutoff) {
  ComplexVector<Scalar> v(cutoff);
  std::complex<Scalar> a = std::exp(-std::norm(d) / 2);
  Scalar mass = 0;
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) a *= d / std::sqrt(Scalar(n));
    v(n) = a;
    mass += std::norm(a);
  }
  return {BasicFockVector<Scalar>(std::move(v)), std::max(Scalar(0), Scalar(1) - mass)};
}

namespace detail {

/// Eigenvectors of the real symmetric tridiagonal matrix with off-diagonals
/// sqrt((k+1)(N-k)); its spectrum is exactly N, N-2, ..., -N. Cached per N.
template <typename Scalar>
std::shared_ptr<const RealMatrix<Scalar>> beamsplitter_eigenbasis(int total) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const RealMatrix<Scalar>>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(total); it != cache.end()) return it->second;
  }
  const int n = total + 1;
  RealMatrix<Scalar> S = RealMatrix<Scalar>::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) S(k, k + 1) = S(k + 1, k) = std::sqrt(Scalar((k + 1) * (total - k)));
  Eigen::SelfAdjointEigenSolver<RealMatrix<Scalar>> es(S);
  if (es.info() != Eigen::Success) throw DecompositionError("beam-splitter block eigensolver failed");
  auto basis = std::make_shared<const RealMatrix<Scalar>>(es.eigenvectors());
  std::lock_guard lock(mutex);
  return cache.emplace(total, std::move(basis)).first->second;
}

}  // namespace detail

/// exp(theta K) on the block of total photon number N with basis |k, N-k>,
/// where K = a_0 a_1^dag - a_0^dag a_1.
template <typename Scalar = double>
RealMatrix<Scalar> real_beamsplitter_block(Scalar theta, int total) {
  using C = std::complex<Scalar>;
  const int n = total + 1;
  const auto V = detail::beamsplitter_eigenbasis<Scalar>(total);
  // K = Dg (i S) Dg^{-1} with Dg = diag(i^k); eigenvalues of S sorted ascending are -N, -N+2, ...
  ComplexVector<Scalar> phases(n);
  for (int m = 0; m < n; ++m) phases(m) = std::polar(Scalar(1), theta * Scalar(2 * m - total));
  const ComplexMatrix<Scalar> E = V->template cast<C>() * phases.asDiagonal() * V->transpose().template cast<C>();
  static constexpr C powers[4] = {C(1, 0), C(0, 1), C(-1, 0), C(0, -1)};
  RealMatrix<Scalar> out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = (powers[a % 4] * E(a, b) * std::conj(powers[b % 4])).real();
  return out;
}

/// Two-mode B(theta, phi) = exp(theta (e^{i phi} a_0 a_1^dag - e^{-i phi} a_0^dag a_1)),
/// truncated as P U P at cutoff D. Index n0 * D + n1.
template <typename Scalar = double>
BasicGateMatrix<Scalar> beamsplitter_fock(Scalar theta, Scalar phi, int cutoff) {
  if (cutoff < 1) throw DimensionError("cutoff must be positive");
  const int d = cutoff;
  ComplexMatrix<Scalar> U = ComplexMatrix<Scalar>::Zero(d * d, d * d);
  for (int total = 0; total <= 2 * d - 2; ++total) {
    const RealMatrix<Scalar> B = real_beamsplitter_block<Scalar>(theta, total);
    const int kmin = std::max(0, total - d + 1), kmax = std::min(total, d - 1);
    for (int kr = kmin; kr <= kmax; ++kr)
      for (int kc = kmin; kc <= kmax; ++kc)
        U(kr * d + (total - kr), kc * d + (total - kc)) = B(kr, kc) * std::polar(Scalar(1), phi * Scalar(kc - kr));
  }
  return {std::move(U), 2, cutoff, Scalar(0)};
}

/// exp(i phi n) on one mode.
template <typename Scalar = double>
BasicGateMatrix<Scalar> phase_shifter_fock(Scalar phi, int cutoff) {
  ComplexVector<Scalar> diag(cutoff);
  for (int n = 0; n < cutoff; ++n) diag(n) = std::polar(Scalar(1), phi * Scalar(n));
  return {diag.asDiagonal().toDenseMatrix(), 1, cutoff, Scalar(0)};
}

namespace detail {

template <typename Scalar>
BasicGateMatrix<Scalar> exponentiate_padded(const ComplexMatrix<Scalar>& generator, int cutoff, Scalar max_loss, const char* name) {
  const ComplexMatrix<Scalar> full = generator.exp();
  ComplexMatrix<Scalar> U = full.topLeftCorner(cutoff, cutoff);
  const Scalar loss = std::abs(Scalar(1) - U.col(0).squaredNorm());
  if (loss > max_loss) throw TruncationError(std::string(name) + ": column 0 loses " + std::to_string(loss) + " of its norm at the cutoff");
  return {std::move(U), 1, cutoff, loss};
}

template <typename Scalar>
ComplexMatrix<Scalar> lowering_matrix(int dim) {
  ComplexMatrix<Scalar> a = ComplexMatrix<Scalar>::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(Scalar(n));
  return a;
}

}  // namespace detail

/// D(d) = exp(d a^dag - d* a), built at cutoff + pad and truncated.
template <typename Scalar = double>
BasicGateMatrix<Scalar> displacement_fock(std::complex<Scalar> d, int cutoff, int pad = kDefaultPadding, Scalar max_loss = Scalar(1e-6)) {
  const auto a = detail::lowering_matrix<Scalar>(cutoff + pad);
  const ComplexMatrix<Scalar> gen = d * a.adjoint() - std::conj(d) * a;
  return detail::exponentiate_padded<Scalar>(gen, cutoff, max_loss, "displacement_fock");
}

/// S(r) = exp(r (a^2 - a^dag^2) / 2), built at cutoff + pad and truncated.
template <typename Scalar = double>
BasicGateMatrix<Scalar> squeezer_fock(Scalar r, int cutoff, int pad = kDefaultPadding, Scalar max_loss = Scalar(1e-6)) {
  check_squeezing(static_cast<double>(r));
  const auto a = detail::lowering_matrix<Scalar>(cutoff + pad);
  const ComplexMatrix<Scalar> a2 = a * a;
  const ComplexMatrix<Scalar> gen = Scalar(0.5) * r * (a2 - a2.adjoint());
  return detail::exponentiate_padded<Scalar>(gen, cutoff, max_loss, "squeezer_fock");
}

// In-place kernels on a dense M-mode tensor with per-mode cutoff D (mode 0 most significant).

namespace detail {

inline Eigen::Index mode_stride(int mode, int mode_count, int cutoff) {
  Eigen::Index s = 1;
  for (int m = mode + 1; m < mode_count; ++m) s *= cutoff;
  return s;
}

inline int digit(Eigen::Index idx, Eigen::Index stride, int cutoff) { return static_cast<int>((idx / stride) % cutoff); }

inline void check_pair(int i, int j, int mode_count) {
  if (i < 0 || j < 0 || i >= mode_count || j >= mode_count || i == j) throw DimensionError("invalid mode pair");
}

}  // namespace detail

/// psi <- exp(i phi n_mode) psi.
template <typename Scalar>
void apply_phase(ComplexVector<Scalar>& psi, int mode_count, int cutoff, int mode, Scalar phi) {
  if (mode < 0 || mode >= mode_count) throw DimensionError("phase mode out of range");
  const Eigen::Index stride = detail::mode_stride(mode, mode_count, cutoff);
  std::vector<std::complex<Scalar>> factor(cutoff);
  for (int n = 0; n < cutoff; ++n) factor[n] = std::polar(Scalar(1), phi * Scalar(n));
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) psi(idx) *= factor[detail::digit(idx, stride, cutoff)];
}

/// psi <- (n_mode) psi.
template <typename Scalar>
void apply_number(ComplexVector<Scalar>& psi, int mode_count, int cutoff, int mode) {
  const Eigen::Index stride = detail::mode_stride(mode, mode_count, cutoff);
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) psi(idx) *= Scalar(detail::digit(idx, stride, cutoff));
}

/// psi <- exp(theta K_ij) psi with K_ij = a_i a_j^dag - a_i^dag a_j, block by block.
/// Pair blocks above `max_total` photons are assumed empty and left untouched.
template <typename Scalar>
void apply_real_beamsplitter(ComplexVector<Scalar>& psi, int mode_count, int cutoff, int i, int j, Scalar theta, int max_total = -1) {
  detail::check_pair(i, j, mode_count);
  const int d = cutoff;
  const int top = (max_total < 0) ? 2 * d - 2 : std::min(max_total, 2 * d - 2);
  const Eigen::Index si = detail::mode_stride(i, mode_count, d), sj = detail::mode_stride(j, mode_count, d);
  std::vector<RealMatrix<Scalar>> blocks(top + 1);
  for (int total = 0; total <= top; ++total) blocks[total] = real_beamsplitter_block<Scalar>(theta, total);
  ComplexVector<Scalar> in(d), out(d);
  for (Eigen::Index base = 0; base < psi.size(); ++base) {
    if (detail::digit(base, si, d) != 0 || detail::digit(base, sj, d) != 0) continue;
    for (int total = 0; total <= top; ++total) {
      const int kmin = std::max(0, total - d + 1), kmax = std::min(total, d - 1);
      const int len = kmax - kmin + 1;
      bool any = false;
      for (int k = kmin; k <= kmax; ++k) {
        in(k - kmin) = psi(base + k * si + (total - k) * sj);
        any = any || in(k - kmin) != std::complex<Scalar>(0);
      }
      if (!any) continue;
      out.head(len).noalias() = blocks[total].block(kmin, kmin, len, len).template cast<std::complex<Scalar>>() * in.head(len);
      for (int k = kmin; k <= kmax; ++k) psi(base + k * si + (total - k) * sj) = out(k - kmin);
    }
  }
}

/// B(theta, phi) on modes (i, j) = R_j(phi) B(theta, 0) R_j(-phi) with R_j(phi) = exp(i phi n_j).
template <typename Scalar>
void apply_beamsplitter(ComplexVector<Scalar>& psi, int mode_count, int cutoff, int i, int j, Scalar theta, Scalar phi, int max_total = -1) {
  apply_phase(psi, mode_count, cutoff, j, -phi);
  apply_real_beamsplitter(psi, mode_count, cutoff, i, j, theta, max_total);
  apply_phase(psi, mode_count, cutoff, j, phi);
}

/// Returns K_ij psi for the truncated generator K_ij = a_i a_j^dag - a_i^dag a_j.
template <typename Scalar>
ComplexVector<Scalar> beamsplitter_generator(const ComplexVector<Scalar>& psi, int mode_count, int cutoff, int i, int j) {
  detail::check_pair(i, j, mode_count);
  const int d = cutoff;
  const Eigen::Index si = detail::mode_stride(i, mode_count, d), sj = detail::mode_stride(j, mode_count, d);
  ComplexVector<Scalar> out = ComplexVector<Scalar>::Zero(psi.size());
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    const auto v = psi(idx);
    if (v == std::complex<Scalar>(0)) continue;
    const int ni = detail::digit(idx, si, d), nj = detail::digit(idx, sj, d);
    if (ni > 0 && nj + 1 < d) out(idx - si + sj) += std::sqrt(Scalar(ni * (nj + 1))) * v;
    if (nj > 0 && ni + 1 < d) out(idx + si - sj) -= std::sqrt(Scalar((ni + 1) * nj)) * v;
  }
  return out;
}

/// psi <- G psi for a D x D single-mode matrix G.
template <typename Scalar>
void apply_single_mode(ComplexVector<Scalar>& psi, int mode_count, int cutoff, int mode, const ComplexMatrix<Scalar>& G) {
  if (G.rows() != cutoff || G.cols() != cutoff) throw DimensionError("single-mode gate has wrong size");
  const Eigen::Index stride = detail::mode_stride(mode, mode_count, cutoff);
  ComplexVector<Scalar> fiber(cutoff);
  for (Eigen::Index base = 0; base < psi.size(); ++base) {
    if (detail::digit(base, stride, cutoff) != 0) continue;
    for (int n = 0; n < cutoff; ++n) fiber(n) = psi(base + n * stride);
    const ComplexVector<Scalar> out = G * fiber;
    for (int n = 0; n < cutoff; ++n) psi(base + n * stride) = out(n);
  }
}

/// psi <- G psi for a D^2 x D^2 two-mode matrix G (index n_i * D + n_j).
template <typename Scalar>
void apply_two_mode(ComplexVector<Scalar>& psi, int mode_count, int cutoff, int i, int j, const ComplexMatrix<Scalar>& G) {
  detail::check_pair(i, j, mode_count);
  const int d = cutoff;
  if (G.rows() != d * d || G.cols() != d * d) throw DimensionError("two-mode gate has wrong size");
  const Eigen::Index si = detail::mode_stride(i, mode_count, d), sj = detail::mode_stride(j, mode_count, d);
  ComplexVector<Scalar> fiber(d * d);
  for (Eigen::Index base = 0; base < psi.size(); ++base) {
    if (detail::digit(base, si, d) != 0 || detail::digit(base, sj, d) != 0) continue;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) fiber(a * d + b) = psi(base + a * si + b * sj);
    const ComplexVector<Scalar> out = G * fiber;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) psi(base + a * si + b * sj) = out(a * d + b);
  }
}

}  // namespace gbsherald
