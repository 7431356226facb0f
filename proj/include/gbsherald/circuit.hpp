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

// Circuit description, rectangular mesh construction and dense simulation.

#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gbsherald/fock.hpp"
#include "gbsherald/gates.hpp"

namespace gbsherald {

struct Vacuum {};
struct Squeezed {
  double r = 0.0;
};
struct DisplacedSqueezed {
  double r = 0.0;
  std::complex<double> d{};
};
struct SinglePhoton {};
/// S(r)|1>: a single photon followed by an inline squeezer.
struct SqueezedPhoton {
  double r = 0.0;
};

using InputState = std::variant<Vacuum, Squeezed, DisplacedSqueezed, SinglePhoton, SqueezedPhoton>;

/// Number of single photons an input contributes (0 or 1).
int photon_count(const InputState& input);
std::string describe(const InputState& input);

struct BeamSplitterPlacement {
  int i = 0;
  int j = 1;
  double theta = 0.0;
  double phi = 0.0;
};

struct Mesh {
  std::vector<BeamSplitterPlacement> placements;
  std::vector<double> final_phases;  // one per mode, applied last
};

struct CircuitSpec {
  int mode_count = 1;
  std::vector<InputState> inputs;
  Mesh mesh;
  int cutoff = kDefaultCutoff;

  /// Throws ValidationError (or a subclass) on malformed specs.
  void validate() const;
  bool is_full_mesh() const { return static_cast<int>(mesh.placements.size()) == mode_count * (mode_count - 1) / 2; }
  int single_photon_count() const;
};

/// Mode pairs of the rectangular scheme: layer l couples (k, k+1) for k = l mod 2, l mod 2 + 2, ...
std::vector<std::pair<int, int>> rectangular_pairs(int mode_count);

/// Rectangular mesh with the given angles; all spans must have matching lengths.
Mesh rectangular_mesh(int mode_count, std::span<const double> thetas, std::span<const double> phis, std::span<const double> final_phases);

struct GateOp {
  enum class Kind { beamsplitter, phase };
  Kind kind = Kind::phase;
  int i = 0;
  int j = 0;
  double theta = 0.0;
  double phi = 0.0;
};

struct GateProgram {
  int mode_count = 0;
  std::vector<GateOp> ops;
  bool full_mesh = false;
};

/// Ordered gate program: placements in the given order, then final phases.
GateProgram build_mesh(const CircuitSpec& spec);

/// Single-mode Fock vector (with tail mass) for one input at cutoff D.
SeriesState input_fock(const InputState& input, int cutoff, int pad = kDefaultPadding);

struct SimulationOptions {
  /// Drop every component with total photon number >= cutoff before the mesh, so
  /// all remaining sectors propagate exactly.
  bool project_total = false;
};

struct SimulationResult {
  MultiModeState state;
  double input_tail = 0.0;    // 1 - squared norm of the truncated product input
  double norm_deficit = 0.0;  // 1 - squared norm of the output
};

/// Prepares the inputs, applies the mesh and reports truncation losses without throwing.
SimulationResult simulate(const CircuitSpec& spec, const SimulationOptions& options = {});

/// simulate() that throws TruncationError when the output deficit exceeds `max_tail`.
MultiModeState run_circuit(const CircuitSpec& spec, double max_tail = 1e-4);

/// Applies a gate program to a dense state in place.
void apply_program(ComplexVector<double>& psi, int cutoff, const GateProgram& program, int max_total = -1);

/// Single-photon transfer matrix U of the mesh: G|1_l> = sum_k U_kl |1_k>.
ComplexMatrix<double> transfer_matrix(const CircuitSpec& spec);

/// Plain-text form, header "gbsherald-circuit v1".
std::string to_text(const CircuitSpec& spec);
CircuitSpec circuit_from_text(const std::string& text, const std::string& source = "<circuit>");

}  // namespace gbsherald
