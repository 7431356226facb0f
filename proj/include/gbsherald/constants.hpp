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
#include <numbers>

namespace gbsherald {

// Units: hbar = 1, vacuum quadrature variance 1/2, quadratures ordered
// (q_1, p_1, ..., q_N, p_N) with a = (q + i p) / sqrt(2).
inline constexpr double kHbar = 1.0;
inline constexpr double kVacuumVariance = 0.5;

/// Squeezing in dB for amplitude r: (20 log10 e) r.
inline double squeezing_db(double r) { return 20.0 * std::numbers::log10e * r; }
inline double squeezing_from_db(double db) { return db / (20.0 * std::numbers::log10e); }

/// Squeezing cap used for every tunable squeezer (12 dB).
inline constexpr double kMaxSqueezingDb = 12.0;
inline const double kMaxSqueezing = kMaxSqueezingDb / (20.0 * std::numbers::log10e);

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kAmplitudeThreshold = 1e-12;
inline constexpr double kZeroProbability = 1e-14;
inline constexpr double kSymplecticTolerance = 1e-10;
inline constexpr double kUncertaintySlack = 1e-10;
inline constexpr double kSymmetryTolerance = 1e-12;

inline constexpr int kDefaultCutoff = 20;
inline constexpr int kDefaultPadding = 10;

}  // namespace gbsherald
