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

#include "gbsherald/circuit.hpp"

#include <fmt/format.h>

#include <cmath>
#include <sstream>

#include "gbsherald/errors.hpp"
#include "gbsherald/phase_space.hpp"

namespace gbsherald {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

int photon_count(const InputState& input) {
  return std::holds_alternative<SinglePhoton>(input) || std::holds_alternative<SqueezedPhoton>(input) ? 1 : 0;
}

std::string describe(const InputState& input) {
  return std::visit(overloaded{
                        [](const Vacuum&) { return std::string("vacuum"); },
                        [](const Squeezed& s) { return fmt::format("squeezed {:.17g}", s.r); },
                        [](const DisplacedSqueezed& s) {
                          return fmt::format("displaced_squeezed {:.17g} {:.17g} {:.17g}", s.r, s.d.real(), s.d.imag());
                        },
                        [](const SinglePhoton&) { return std::string("single_photon"); },
                        [](const SqueezedPhoton& s) { return fmt::format("squeezed_photon {:.17g}", s.r); },
                    },
                    input);
}

int CircuitSpec::single_photon_count() const {
  int s = 0;
  for (const auto& in : inputs) s += photon_count(in);
  return s;
}

void CircuitSpec::validate() const {
  if (mode_count < 1) throw ValidationError("circuit needs at least one mode");
  if (cutoff < 2) throw DimensionError("cutoff must be >= 2");
  if (static_cast<int>(inputs.size()) != mode_count) throw DimensionError("one input per mode required");
  for (const auto& in : inputs) {
    std::visit(overloaded{
                   [](const Vacuum&) {},
                   [](const Squeezed& s) { check_squeezing(s.r); },
                   [](const DisplacedSqueezed& s) { check_squeezing(s.r); },
                   [](const SinglePhoton&) {},
                   [](const SqueezedPhoton& s) { check_squeezing(s.r); },
               },
               in);
  }
  for (const auto& p : mesh.placements)
    if (p.i < 0 || p.j < 0 || p.i >= mode_count || p.j >= mode_count || p.i == p.j)
      throw ValidationError(fmt::format("beam splitter on invalid modes ({}, {})", p.i, p.j));
  if (!mesh.final_phases.empty() && static_cast<int>(mesh.final_phases.size()) != mode_count)
    throw DimensionError("final phases must be empty or one per mode");
}

std::vector<std::pair<int, int>> rectangular_pairs(int mode_count) {
  if (mode_count < 1) throw ValidationError("mode count must be >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int layer = 0; layer < mode_count && mode_count > 1; ++layer)
    for (int k = layer % 2; k + 1 < mode_count; k += 2) pairs.emplace_back(k, k + 1);
  return pairs;
}

Mesh rectangular_mesh(int mode_count, std::span<const double> thetas, std::span<const double> phis, std::span<const double> final_phases) {
  const auto pairs = rectangular_pairs(mode_count);
  if (thetas.size() != pairs.size() || phis.size() != pairs.size())
    throw DimensionError(fmt::format("rectangular mesh on {} modes needs {} beam-splitter angles", mode_count, pairs.size()));
  if (!final_phases.empty() && static_cast<int>(final_phases.size()) != mode_count) throw DimensionError("final phases must be one per mode");
  Mesh mesh;
  for (std::size_t k = 0; k < pairs.size(); ++k) mesh.placements.push_back({pairs[k].first, pairs[k].second, thetas[k], phis[k]});
  mesh.final_phases.assign(final_phases.begin(), final_phases.end());
  return mesh;
}

GateProgram build_mesh(const CircuitSpec& spec) {
  spec.validate();
  GateProgram program;
  program.mode_count = spec.mode_count;
  program.full_mesh = spec.is_full_mesh();
  for (const auto& p : spec.mesh.placements)
    program.ops.push_back({GateOp::Kind::beamsplitter, p.i, p.j, p.theta, p.phi});
  for (int m = 0; m < static_cast<int>(spec.mesh.final_phases.size()); ++m)
    program.ops.push_back({GateOp::Kind::phase, m, m, 0.0, spec.mesh.final_phases[m]});
  return program;
}

SeriesState input_fock(const InputState& input, int cutoff, int pad) {
  return std::visit(overloaded{
                        [&](const Vacuum&) { return SeriesState{FockVector::basis(0, cutoff), 0.0}; },
                        [&](const Squeezed& s) { return squeezed_vacuum_fock(s.r, cutoff); },
                        [&](const DisplacedSqueezed& s) {
                          const int big = cutoff + pad;
                          const auto sq = squeezed_vacuum_fock(s.r, big);
                          const auto disp = displacement_fock(s.d, big, pad);
                          ComplexVector<double> v = (disp.matrix * sq.state.amplitudes()).head(cutoff);
                          const double tail = std::max(0.0, 1.0 - v.squaredNorm());
                          return SeriesState{FockVector(std::move(v)), tail};
                        },
                        [&](const SinglePhoton&) { return SeriesState{FockVector::basis(1, cutoff), 0.0}; },
                        [&](const SqueezedPhoton& s) { return squeezed_photon_fock(s.r, cutoff); },
                    },
                    input);
}

void apply_program(ComplexVector<double>& psi, int cutoff, const GateProgram& program, int max_total) {
  for (const auto& op : program.ops) {
    if (op.kind == GateOp::Kind::beamsplitter)
      apply_beamsplitter(psi, program.mode_count, cutoff, op.i, op.j, op.theta, op.phi, max_total);
    else
      apply_phase(psi, program.mode_count, cutoff, op.i, op.phi);
  }
}

SimulationResult simulate(const CircuitSpec& spec, const SimulationOptions& options) {
  const GateProgram program = build_mesh(spec);
  std::vector<FockVector> inputs;
  inputs.reserve(spec.inputs.size());
  for (const auto& in : spec.inputs) inputs.push_back(input_fock(in, spec.cutoff).state);
  ComplexVector<double> psi = tensor_product(inputs).amplitudes();
  const int d = spec.cutoff;
  const int m = spec.mode_count;
  int max_total = -1;
  if (options.project_total) {
    max_total = d - 1;
    for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
      int total = 0;
      for (Eigen::Index rest = idx; rest > 0; rest /= d) total += static_cast<int>(rest % d);
      if (total > max_total) psi(idx) = 0.0;
    }
  }
  SimulationResult result;
  result.input_tail = std::max(0.0, 1.0 - psi.squaredNorm());
  apply_program(psi, d, program, max_total);
  result.norm_deficit = std::max(0.0, 1.0 - psi.squaredNorm());
  result.state = MultiModeState(m, d, std::move(psi));
  return result;
}

MultiModeState run_circuit(const CircuitSpec& spec, double max_tail) {
  auto result = simulate(spec);
  if (result.norm_deficit > max_tail)
    throw TruncationError(fmt::format("run_circuit: cutoff {} loses {:.6g} of the norm (limit {:.6g})", spec.cutoff, result.norm_deficit, max_tail));
  return std::move(result.state);
}

ComplexMatrix<double> transfer_matrix(const CircuitSpec& spec) {
  const GateProgram program = build_mesh(spec);
  const int m = spec.mode_count;
  ComplexMatrix<double> U = ComplexMatrix<double>::Identity(m, m);
  for (const auto& op : program.ops) {
    ComplexMatrix<double> G = ComplexMatrix<double>::Identity(m, m);
    if (op.kind == GateOp::Kind::beamsplitter) {
      const auto local = beamsplitter_mode_matrix(op.theta, op.phi);
      G(op.i, op.i) = local(0, 0);
      G(op.i, op.j) = local(0, 1);
      G(op.j, op.i) = local(1, 0);
      G(op.j, op.j) = local(1, 1);
    } else {
      G(op.i, op.i) = std::polar(1.0, op.phi);
    }
    U = G * U;
  }
  return U;
}

std::string to_text(const CircuitSpec& spec) {
  std::string out = "gbsherald-circuit v1\n";
  out += fmt::format("modes {}\ncutoff {}\n", spec.mode_count, spec.cutoff);
  for (int k = 0; k < static_cast<int>(spec.inputs.size()); ++k) out += fmt::format("input {} {}\n", k, describe(spec.inputs[k]));
  for (const auto& p : spec.mesh.placements) out += fmt::format("bs {} {} {:.17g} {:.17g}\n", p.i, p.j, p.theta, p.phi);
  for (int k = 0; k < static_cast<int>(spec.mesh.final_phases.size()); ++k)
    out += fmt::format("phase {} {:.17g}\n", k, spec.mesh.final_phases[k]);
  return out;
}

CircuitSpec circuit_from_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  CircuitSpec spec;
  bool header = false;
  std::vector<std::pair<int, InputState>> inputs;
  std::vector<std::pair<int, double>> phases;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (!header) {
      std::string version;
      ls >> version;
      if (key != "gbsherald-circuit" || version != "v1") throw ParseError(source, lineno, "expected header 'gbsherald-circuit v1'");
      header = true;
      continue;
    }
    auto fail = [&](const std::string& what) { throw ParseError(source, lineno, what); };
    if (key == "modes") {
      if (!(ls >> spec.mode_count)) fail("bad mode count");
    } else if (key == "cutoff") {
      if (!(ls >> spec.cutoff)) fail("bad cutoff");
    } else if (key == "input") {
      int k;
      std::string kind;
      if (!(ls >> k >> kind)) fail("input needs an index and a kind");
      if (kind == "vacuum") {
        inputs.emplace_back(k, Vacuum{});
      } else if (kind == "single_photon") {
        inputs.emplace_back(k, SinglePhoton{});
      } else if (kind == "squeezed" || kind == "squeezed_photon") {
        double r;
        if (!(ls >> r)) fail("missing squeezing amplitude");
        inputs.emplace_back(k, kind == "squeezed" ? InputState{Squeezed{r}} : InputState{SqueezedPhoton{r}});
      } else if (kind == "displaced_squeezed") {
        double r, re, im;
        if (!(ls >> r >> re >> im)) fail("displaced_squeezed needs r, Re d, Im d");
        inputs.emplace_back(k, DisplacedSqueezed{r, {re, im}});
      } else {
        fail("unknown input kind '" + kind + "'");
      }
    } else if (key == "bs") {
      BeamSplitterPlacement p;
      if (!(ls >> p.i >> p.j >> p.theta >> p.phi)) fail("bs needs i j theta phi");
      spec.mesh.placements.push_back(p);
    } else if (key == "phase") {
      int k;
      double phi;
      if (!(ls >> k >> phi)) fail("phase needs mode and angle");
      phases.emplace_back(k, phi);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!header) throw ParseError(source, lineno, "empty circuit description");
  spec.inputs.assign(spec.mode_count, Vacuum{});
  for (auto& [k, v] : inputs) {
    if (k < 0 || k >= spec.mode_count) throw ParseError(source, lineno, "input index out of range");
    spec.inputs[k] = v;
  }
  if (!phases.empty()) {
    spec.mesh.final_phases.assign(spec.mode_count, 0.0);
    for (auto& [k, phi] : phases) {
      if (k < 0 || k >= spec.mode_count) throw ParseError(source, lineno, "phase index out of range");
      spec.mesh.final_phases[k] = phi;
    }
  }
  spec.validate();
  return spec;
}

}  // namespace gbsherald
