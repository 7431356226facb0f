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

// Gaussian moment formalism: covariance matrices, symplectic maps, Wigner
// function, and moment extraction from dense Fock states.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "gbsherald/constants.hpp"
#include "gbsherald/errors.hpp"
#include "gbsherald/fock.hpp"

namespace gbsherald {

/// Block-diagonal symplectic form with [[0, 1], [-1, 0]] per mode.
template <typename Scalar = double>
RealMatrix<Scalar> symplectic_form(int mode_count) {
  RealMatrix<Scalar> omega = RealMatrix<Scalar>::Zero(2 * mode_count, 2 * mode_count);
  for (int k = 0; k < mode_count; ++k) {
    omega(2 * k, 2 * k + 1) = Scalar(1);
    omega(2 * k + 1, 2 * k) = Scalar(-1);
  }
  return omega;
}

/// First moments and symmetrized covariance, without physicality checks.
template <typename Scalar>
struct BasicMoments {
  RealVector<Scalar> xi;
  RealMatrix<Scalar> V;
  int mode_count() const { return static_cast<int>(xi.size() / 2); }
};

/// True if V is symmetric and V + (i/2) Omega is positive semidefinite.
template <typename Scalar>
bool is_physical(const RealMatrix<Scalar>& V, Scalar slack = Scalar(kUncertaintySlack)) {
  if (V.rows() != V.cols() || V.rows() % 2 != 0) return false;
  if ((V - V.transpose()).cwiseAbs().maxCoeff() > Scalar(kSymmetryTolerance) * std::max(Scalar(1), V.cwiseAbs().maxCoeff()))
    return false;
  const int n = static_cast<int>(V.rows() / 2);
  using C = std::complex<Scalar>;
  const ComplexMatrix<Scalar> H = V.template cast<C>() + C(0, Scalar(kHbar) / 2) * symplectic_form<Scalar>(n).template cast<C>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -slack;
}

/// Gaussian state: displacement xi (length 2N) and covariance V (2N x 2N).
template <typename Scalar>
class BasicGaussianState {
 public:
  BasicGaussianState(RealVector<Scalar> xi, RealMatrix<Scalar> V) : xi_(std::move(xi)), V_(std::move(V)) {
    if (V_.rows() != V_.cols() || V_.rows() != xi_.size() || xi_.size() % 2 != 0 || xi_.size() == 0)
      throw DimensionError("GaussianState: xi must have length 2N and V be 2N x 2N");
    if (!is_physical<Scalar>(V_)) throw ValidationError("GaussianState: covariance violates the uncertainty relation");
  }

  static BasicGaussianState vacuum(int mode_count) {
    return BasicGaussianState(RealVector<Scalar>::Zero(2 * mode_count),
                              Scalar(kVacuumVariance) * RealMatrix<Scalar>::Identity(2 * mode_count, 2 * mode_count));
  }

  int mode_count() const { return static_cast<int>(xi_.size() / 2); }
  const RealVector<Scalar>& xi() const { return xi_; }
  const RealMatrix<Scalar>& V() const { return V_; }

  /// det(2V / hbar); equals 1 for pure states.
  Scalar purity_indicator() const { return (Scalar(2) * V_).determinant(); }

 private:
  RealVector<Scalar> xi_;
  RealMatrix<Scalar> V_;
};

/// Affine symplectic map x -> F x + d.
template <typename Scalar>
class BasicSymplecticMatrix {
 public:
  explicit BasicSymplecticMatrix(RealMatrix<Scalar> F) : BasicSymplecticMatrix(F, RealVector<Scalar>::Zero(F.rows())) {}

  BasicSymplecticMatrix(RealMatrix<Scalar> F, RealVector<Scalar> d) : F_(std::move(F)), d_(std::move(d)) {
    if (F_.rows() != F_.cols() || F_.rows() % 2 != 0 || d_.size() != F_.rows())
      throw DimensionError("SymplecticMatrix: F must be 2N x 2N and d of length 2N");
    const auto omega = symplectic_form<Scalar>(static_cast<int>(F_.rows() / 2));
    if ((F_ * omega * F_.transpose() - omega).norm() > Scalar(kSymplecticTolerance))
      throw ValidationError("SymplecticMatrix: F Omega F^T != Omega");
  }

  int mode_count() const { return static_cast<int>(F_.rows() / 2); }
  const RealMatrix<Scalar>& F() const { return F_; }
  const RealVector<Scalar>& d() const { return d_; }

  BasicSymplecticMatrix operator*(const BasicSymplecticMatrix& rhs) const {
    return BasicSymplecticMatrix(F_ * rhs.F_, F_ * rhs.d_ + d_);
  }

 private:
  RealMatrix<Scalar> F_;
  RealVector<Scalar> d_;
};

using GaussianState = BasicGaussianState<double>;
using SymplecticMatrix = BasicSymplecticMatrix<double>;
using Moments = BasicMoments<double>;

/// Wigner function of a Gaussian state, normalized over (q, p) phase space.
template <typename Scalar, typename Derived>
Scalar gaussian_wigner(const BasicGaussianState<Scalar>& state, const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != state.xi().size()) throw DimensionError("gaussian_wigner: point has wrong dimension");
  Eigen::LLT<RealMatrix<Scalar>> llt(state.V());
  if (llt.info() != Eigen::Success) throw DecompositionError("gaussian_wigner: covariance is singular");
  const RealVector<Scalar> dx = x - state.xi();
  const Scalar quad = dx.dot(llt.solve(dx));
  const Scalar log_det = Scalar(2) * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const int n = state.mode_count();
  return std::exp(Scalar(-0.5) * quad - Scalar(0.5) * log_det) / std::pow(Scalar(2) * std::numbers::pi_v<Scalar>, Scalar(n));
}

template <typename Scalar>
BasicGaussianState<Scalar> symplectic_apply(const BasicGaussianState<Scalar>& state, const BasicSymplecticMatrix<Scalar>& S) {
  if (S.mode_count() != state.mode_count()) throw DimensionError("symplectic_apply: mode count mismatch");
  RealMatrix<Scalar> V = S.F() * state.V() * S.F().transpose();
  V = Scalar(0.5) * (V + V.transpose());
  return BasicGaussianState<Scalar>(S.F() * state.xi() + S.d(), std::move(V));
}

/// Real symplectic matrix of the passive map a_k -> sum_l U_kl a_l.
template <typename Scalar>
RealMatrix<Scalar> passive_symplectic(const ComplexMatrix<Scalar>& U) {
  const Eigen::Index n = U.rows();
  RealMatrix<Scalar> F(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l) {
      const auto u = U(k, l);
      F(2 * k, 2 * l) = u.real();
      F(2 * k, 2 * l + 1) = -u.imag();
      F(2 * k + 1, 2 * l) = u.imag();
      F(2 * k + 1, 2 * l + 1) = u.real();
    }
  return F;
}

/// S(r) = exp(r (a^2 - a^dag^2) / 2); r > 0 squeezes q.
template <typename Scalar = double>
BasicSymplecticMatrix<Scalar> squeezer_symplectic(Scalar r) {
  RealMatrix<Scalar> F = RealMatrix<Scalar>::Zero(2, 2);
  F(0, 0) = std::exp(-r);
  F(1, 1) = std::exp(r);
  return BasicSymplecticMatrix<Scalar>(std::move(F));
}

/// Mode transformation of the beam splitter: a_0 -> cos a_0 - e^{-i phi} sin a_1,
/// a_1 -> e^{i phi} sin a_0 + cos a_1.
template <typename Scalar = double>
ComplexMatrix<Scalar> beamsplitter_mode_matrix(Scalar theta, Scalar phi) {
  using C = std::complex<Scalar>;
  ComplexMatrix<Scalar> U(2, 2);
  const Scalar c = std::cos(theta), s = std::sin(theta);
  U << C(c), -std::polar(s, -phi), std::polar(s, phi), C(c);
  return U;
}

template <typename Scalar = double>
BasicSymplecticMatrix<Scalar> beamsplitter_symplectic(Scalar theta, Scalar phi) {
  return BasicSymplecticMatrix<Scalar>(passive_symplectic<Scalar>(beamsplitter_mode_matrix<Scalar>(theta, phi)));
}

/// Phase shifter exp(i phi n): a -> e^{i phi} a.
template <typename Scalar = double>
BasicSymplecticMatrix<Scalar> phase_symplectic(Scalar phi) {
  ComplexMatrix<Scalar> U(1, 1);
  U(0, 0) = std::polar(Scalar(1), phi);
  return BasicSymplecticMatrix<Scalar>(passive_symplectic<Scalar>(U));
}

/// Displacement D(d): <a> shifts by d.
template <typename Scalar = double>
BasicSymplecticMatrix<Scalar> displacement_symplectic(std::complex<Scalar> d) {
  RealVector<Scalar> shift(2);
  shift << std::sqrt(Scalar(2)) * d.real(), std::sqrt(Scalar(2)) * d.imag();
  return BasicSymplecticMatrix<Scalar>(RealMatrix<Scalar>::Identity(2, 2), std::move(shift));
}

/// Lifts a map on `modes` to an N-mode map acting as identity elsewhere.
template <typename Scalar>
BasicSymplecticMatrix<Scalar> embed(const BasicSymplecticMatrix<Scalar>& local, std::span<const int> modes, int mode_count) {
  if (static_cast<int>(modes.size()) != local.mode_count()) throw DimensionError("embed: mode list size mismatch");
  RealMatrix<Scalar> F = RealMatrix<Scalar>::Identity(2 * mode_count, 2 * mode_count);
  RealVector<Scalar> d = RealVector<Scalar>::Zero(2 * mode_count);
  for (std::size_t a = 0; a < modes.size(); ++a) {
    if (modes[a] < 0 || modes[a] >= mode_count) throw DimensionError("embed: mode index out of range");
    for (std::size_t b = 0; b < modes.size(); ++b) F.template block<2, 2>(2 * modes[a], 2 * modes[b]) = local.F().template block<2, 2>(2 * a, 2 * b);
    d.template segment<2>(2 * modes[a]) = local.d().template segment<2>(2 * a);
  }
  return BasicSymplecticMatrix<Scalar>(std::move(F), std::move(d));
}

template <typename Scalar>
BasicSymplecticMatrix<Scalar> embed(const BasicSymplecticMatrix<Scalar>& local, std::initializer_list<int> modes, int mode_count) {
  return embed(local, std::span<const int>(modes.begin(), modes.size()), mode_count);
}

namespace detail {

/// Applies the annihilation operator of `mode` to a dense multi-mode tensor.
template <typename Scalar>
ComplexVector<Scalar> lower(const ComplexVector<Scalar>& psi, int mode, int mode_count, int cutoff) {
  const Eigen::Index stride = BasicMultiModeState<Scalar>::dimension(mode_count - 1 - mode, cutoff);
  ComplexVector<Scalar> out = ComplexVector<Scalar>::Zero(psi.size());
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    const int n = static_cast<int>((idx / stride) % cutoff);
    if (n > 0) out(idx - stride) = std::sqrt(Scalar(n)) * psi(idx);
  }
  return out;
}

}  // namespace detail

/// Quadrature means and symmetrized covariance of a dense pure state.
template <typename Scalar>
BasicMoments<Scalar> moments_from_fock(const BasicMultiModeState<Scalar>& state, Scalar max_deficit = Scalar(1e-6)) {
  using C = std::complex<Scalar>;
  const Scalar norm2 = state.squared_norm();
  if (std::abs(Scalar(1) - norm2) > max_deficit) throw TruncationError("moments_from_fock: norm deficit exceeds tolerance");
  const int n = state.mode_count();
  const int d = state.cutoff();
  const auto& psi = state.amplitudes();

  std::vector<ComplexVector<Scalar>> lowered(n);
  for (int i = 0; i < n; ++i) lowered[i] = detail::lower<Scalar>(psi, i, n, d);

  ComplexVector<Scalar> mean_a(n);
  ComplexMatrix<Scalar> aa(n, n), adag_a(n, n);  // <a_i a_j>, <a_i^dag a_j>
  for (int i = 0; i < n; ++i) {
    mean_a(i) = psi.dot(lowered[i]) / norm2;
    for (int j = 0; j < n; ++j) {
      adag_a(i, j) = lowered[i].dot(lowered[j]) / norm2;
      if (j >= i) {
        aa(i, j) = psi.dot(detail::lower<Scalar>(lowered[j], i, n, d)) / norm2;
        aa(j, i) = aa(i, j);
      }
    }
  }

  // b = (a_1..a_N, a_1^dag..a_N^dag); G_uv = <{b_u, b_v}> / 2.
  ComplexMatrix<Scalar> G(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const C half = (i == j) ? C(0.5) : C(0);
      G(i, j) = aa(i, j);
      G(n + i, n + j) = std::conj(aa(j, i));
      G(i, n + j) = adag_a(j, i) + half;
      G(n + i, j) = adag_a(i, j) + half;
    }
  ComplexVector<Scalar> mean_b(2 * n);
  mean_b << mean_a, mean_a.conjugate();

  const Scalar root = std::sqrt(Scalar(0.5));
  ComplexMatrix<Scalar> T = ComplexMatrix<Scalar>::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    T(2 * k, k) = root;
    T(2 * k, n + k) = root;
    T(2 * k + 1, k) = C(0, -root);
    T(2 * k + 1, n + k) = C(0, root);
  }
  BasicMoments<Scalar> m;
  m.xi = (T * mean_b).real();
  m.V = (T * G * T.transpose()).real() - m.xi * m.xi.transpose();
  m.V = Scalar(0.5) * (m.V + m.V.transpose()).eval();
  return m;
}

}  // namespace gbsherald
