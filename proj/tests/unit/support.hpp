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

#include <cmath>
#include <complex>
#include <random>

#include "gbsherald/fock.hpp"

namespace gbsherald::testing {

inline FockVector random_state(std::mt19937_64& rng, int cutoff) {
  std::normal_distribution<double> g;
  ComplexVector<double> v(cutoff);
  for (int n = 0; n < cutoff; ++n) v(n) = {g(rng), g(rng)};
  return FockVector(v).normalized();
}

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace gbsherald::testing
