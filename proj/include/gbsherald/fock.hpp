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

// Dense Fock-space states: single-mode vectors, multi-mode tensors, overlaps.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "gbsherald/constants.hpp"
#include "gbsherald/errors.hpp"

namespace gbsherald {

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Single-mode pure state truncated to photon numbers 0..cutoff-1.
template <typename Scalar>
class BasicFockVector {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = ComplexVector<Scalar>;

  BasicFockVector() = default;

  explicit BasicFockVector(Amplitudes amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) throw DimensionError("FockVector needs cutoff >= 1");
  }

  static BasicFockVector basis(int n, int cutoff) {
    if (n < 0 || n >= cutoff) throw DimensionError("Fock index " + std::to_string(n) + " outside cutoff " + std::to_string(cutoff));
    Amplitudes v = Amplitudes::Zero(cutoff);
    v(n) = Complex(1);
    return BasicFockVector(std::move(v));
  }

  int cutoff() const { return static_cast<int>(amplitudes_.size()); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_(n); }

  Scalar squared_norm() const { return amplitudes_.squaredNorm(); }
  bool is_normalized(Scalar tol = Scalar(kNormTolerance)) const { return std::abs(squared_norm() - Scalar(1)) <= tol; }

  BasicFockVector normalized() const {
    const Scalar n = amplitudes_.norm();
    if (!(n > Scalar(0))) throw ContractError("cannot normalize a zero vector");
    return BasicFockVector(amplitudes_ / n);
  }

  /// Truncates or zero-pads to a new cutoff.
  BasicFockVector resized(int cutoff) const {
    if (cutoff < 1) throw DimensionError("cutoff must be positive");
    Amplitudes v = Amplitudes::Zero(cutoff);
    const int n = std::min(cutoff, this->cutoff());
    v.head(n) = amplitudes_.head(n);
    return BasicFockVector(std::move(v));
  }

  /// Highest index whose amplitude magnitude exceeds `threshold`, or -1.
  int highest_occupied(Scalar threshold = Scalar(kAmplitudeThreshold)) const {
    for (int n = cutoff() - 1; n >= 0; --n)
      if (std::abs(amplitudes_(n)) > threshold) return n;
    return -1;
  }

 private:
  Amplitudes amplitudes_;
};

/// M-mode pure state stored densely as D^M amplitudes, mode 0 most significant.
template <typename Scalar>
class BasicMultiModeState {
 public:
  using Complex = std::complex<Scalar>;
  using Amplitudes = ComplexVector<Scalar>;

  BasicMultiModeState() = default;

  BasicMultiModeState(int mode_count, int cutoff, Amplitudes amplitudes)
      : mode_count_(mode_count), cutoff_(cutoff), amplitudes_(std::move(amplitudes)) {
    if (mode_count_ < 1) throw DimensionError("mode count must be >= 1");
    if (cutoff_ < 2) throw DimensionError("cutoff must be >= 2");
    if (amplitudes_.size() != dimension(mode_count_, cutoff_))
      throw DimensionError("amplitude tensor must have cutoff^modes entries");
  }

  static BasicMultiModeState vacuum(int mode_count, int cutoff) {
    Amplitudes v = Amplitudes::Zero(dimension(mode_count, cutoff));
    v(0) = Complex(1);
    return BasicMultiModeState(mode_count, cutoff, std::move(v));
  }

  static Eigen::Index dimension(int mode_count, int cutoff) {
    Eigen::Index n = 1;
    for (int m = 0; m < mode_count; ++m) n *= cutoff;
    return n;
  }

  int mode_count() const { return mode_count_; }
  int cutoff() const { return cutoff_; }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Scalar squared_norm() const { return amplitudes_.squaredNorm(); }

  Eigen::Index stride(int mode) const { return dimension(mode_count_ - 1 - mode, cutoff_); }

  Eigen::Index index(std::span<const int> occupation) const {
    if (static_cast<int>(occupation.size()) != mode_count_) throw DimensionError("occupation length must equal mode count");
    Eigen::Index idx = 0;
    for (int n : occupation) {
      if (n < 0 || n >= cutoff_) throw DimensionError("occupation outside cutoff");
      idx = idx * cutoff_ + n;
    }
    return idx;
  }

  std::vector<int> occupation(Eigen::Index idx) const {
    std::vector<int> n(mode_count_);
    for (int m = mode_count_ - 1; m >= 0; --m) {
      n[m] = static_cast<int>(idx % cutoff_);
      idx /= cutoff_;
    }
    return n;
  }

  Complex amplitude(std::span<const int> occupation) const { return amplitudes_(index(occupation)); }

 private:
  int mode_count_ = 0;
  int cutoff_ = 0;
  Amplitudes amplitudes_;
};

using FockVector = BasicFockVector<double>;
using MultiModeState = BasicMultiModeState<double>;

/// Quantum angle arccos(sqrt(F)), a metric distance on pure states.
struct QuantumAngle {
  double radians = 0.0;
};

template <typename Scalar>
std::complex<Scalar> inner_product(const BasicFockVector<Scalar>& a, const BasicFockVector<Scalar>& b) {
  if (a.cutoff() != b.cutoff())
    throw DimensionError("inner_product: cutoff mismatch (" + std::to_string(a.cutoff()) + " vs " + std::to_string(b.cutoff()) + ")");
  return a.amplitudes().dot(b.amplitudes());  // Eigen conjugates the left operand
}

/// |<a|b>|^2 for normalized states.
template <typename Scalar>
Scalar fidelity(const BasicFockVector<Scalar>& a, const BasicFockVector<Scalar>& b) {
  if (!a.is_normalized() || !b.is_normalized()) throw ContractError("fidelity requires normalized states");
  const Scalar f = std::norm(inner_product(a, b));
  return std::clamp(f, Scalar(0), Scalar(1));
}

inline QuantumAngle quantum_angle(double fidelity_value) {
  constexpr double slack = 1e-12;
  if (!(fidelity_value >= -slack && fidelity_value <= 1.0 + slack))
    throw DomainError("quantum_angle: fidelity must lie in [0, 1]");
  return QuantumAngle{std::acos(std::sqrt(std::clamp(fidelity_value, 0.0, 1.0)))};
}

/// Product state; the amplitude of |n_1 ... n_M> is the product of per-mode amplitudes.
template <typename Scalar>
BasicMultiModeState<Scalar> tensor_product(std::span<const BasicFockVector<Scalar>> states) {
  if (states.empty()) throw ValidationError("tensor_product needs at least one state");
  const int cutoff = states.front().cutoff();
  for (const auto& s : states)
    if (s.cutoff() != cutoff) throw DimensionError("tensor_product: all states must share one cutoff");
  ComplexVector<Scalar> out = states.front().amplitudes();
  for (std::size_t k = 1; k < states.size(); ++k) {
    const auto& next = states[k].amplitudes();
    ComplexVector<Scalar> grown(out.size() * cutoff);
    for (Eigen::Index i = 0; i < out.size(); ++i) grown.segment(i * cutoff, cutoff) = out(i) * next;
    out = std::move(grown);
  }
  return BasicMultiModeState<Scalar>(static_cast<int>(states.size()), cutoff, std::move(out));
}

template <typename Scalar>
BasicMultiModeState<Scalar> tensor_product(const std::vector<BasicFockVector<Scalar>>& states) {
  return tensor_product(std::span<const BasicFockVector<Scalar>>(states));
}

enum class ParitySupport { none, even, odd, mixed };

inline const char* to_string(ParitySupport p) {
  switch (p) {
    case ParitySupport::none: return "none";
    case ParitySupport::even: return "even";
    case ParitySupport::odd: return "odd";
    case ParitySupport::mixed: return "mixed";
  }
  return "?";
}

/// Which total-photon-number parities carry amplitude above `threshold`.
template <typename Scalar>
ParitySupport total_photon_parity_support(const BasicMultiModeState<Scalar>& state, Scalar threshold = Scalar(kAmplitudeThreshold)) {
  bool even = false, odd = false;
  const auto& a = state.amplitudes();
  const int d = state.cutoff();
  const int m = state.mode_count();
  for (Eigen::Index idx = 0; idx < a.size(); ++idx) {
    if (std::abs(a(idx)) <= threshold) continue;
    int total = 0;
    Eigen::Index rest = idx;
    for (int k = 0; k < m; ++k) {
      total += static_cast<int>(rest % d);
      rest /= d;
    }
    (total % 2 == 0 ? even : odd) = true;
    if (even && odd) return ParitySupport::mixed;
  }
  if (even) return ParitySupport::even;
  if (odd) return ParitySupport::odd;
  return ParitySupport::none;
}

template <typename Scalar>
ParitySupport parity_support(const BasicFockVector<Scalar>& state, Scalar threshold = Scalar(kAmplitudeThreshold)) {
  bool even = false, odd = false;
  for (int n = 0; n < state.cutoff(); ++n)
    if (std::abs(state[n]) > threshold) (n % 2 == 0 ? even : odd) = true;
  if (even && odd) return ParitySupport::mixed;
  if (even) return ParitySupport::even;
  if (odd) return ParitySupport::odd;
  return ParitySupport::none;
}

}  // namespace gbsherald
