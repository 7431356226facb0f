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

#include "gbsherald/optimizer.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "gbsherald/errors.hpp"
#include "gbsherald/gates.hpp"

namespace gbsherald {

void OptimizationProblem::validate() const {
  if (mode_count < 2) throw ValidationError("optimization needs at least two modes");
  if (cutoff < 2 || pad < 0) throw DimensionError("cutoff must be >= 2 and pad >= 0");
  if (pattern.heralded_mode < 0 || pattern.heralded_mode >= mode_count) throw DimensionError("heralded mode out of range");
  if (static_cast<int>(pattern.counts.size()) != mode_count - 1) throw DimensionError("pattern must list one count per measured mode");
  for (int c : pattern.counts)
    if (c < 0) throw ValidationError("pattern counts must be non-negative");
  std::vector<bool> seen(mode_count, false);
  for (int m : photon_modes) {
    if (m < 0 || m >= mode_count || seen[m]) throw ValidationError("photon modes must be distinct and in range");
    seen[m] = true;
  }
  if (target.cutoff() < 1 || !target.is_normalized(1e-9)) throw ContractError("target must be a normalized Fock vector");
  const int dh = cutoff + pad;
  if (target.cutoff() > dh && target.amplitudes().tail(target.cutoff() - dh).squaredNorm() > 1e-12)
    throw ValidationError("target has weight beyond cutoff + pad");
  if (!(fidelity_weight >= 0.0) || !(probability_weight >= 0.0)) throw ValidationError("reward weights must be non-negative");
  if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
}

bool OptimizationProblem::is_photon_mode(int mode) const {
  return std::find(photon_modes.begin(), photon_modes.end(), mode) != photon_modes.end();
}

bool OptimizationProblem::parity_feasible() const {
  if (include_displacement) return true;
  const ParitySupport target_parity = parity_support(target);
  if (target_parity == ParitySupport::mixed) return true;
  if (target_parity == ParitySupport::none) return false;
  const ParitySupport allowed = (single_photon_count() - pattern.total()) % 2 == 0 ? ParitySupport::even : ParitySupport::odd;
  return allowed == target_parity;
}

ParameterLayout::ParameterLayout(const OptimizationProblem& problem) : mode_count(problem.mode_count) {
  for (int m = 0; m < mode_count; ++m) {
    const bool photon = problem.is_photon_mode(m);
    if (!photon || problem.squeeze_photons) squeezed_modes.push_back(m);
    if (!photon && problem.include_displacement) displaced_modes.push_back(m);
  }
  pairs = rectangular_pairs(mode_count);
}

int ParameterLayout::size() const {
  return static_cast<int>(squeezed_modes.size() + 2 * pairs.size() + mode_count + 2 * displaced_modes.size());
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct TapeOp {
  bool beamsplitter = false;
  int i = 0;
  int j = 0;
  double x = 0.0;
  int param = 0;
  double sign = 1.0;
};

struct ModeParams {
  std::vector<InputState> inputs;
  std::vector<int> r_param;  // parameter index of each mode's squeezing, or -1
};

ModeParams mode_inputs(const OptimizationProblem& problem, const ParameterLayout& layout, const std::vector<double>& params) {
  ModeParams out;
  out.inputs.assign(problem.mode_count, Vacuum{});
  out.r_param.assign(problem.mode_count, -1);
  for (int k = 0; k < static_cast<int>(layout.squeezed_modes.size()); ++k) out.r_param[layout.squeezed_modes[k]] = layout.r(k);
  std::vector<int> d_param(problem.mode_count, -1);
  for (int k = 0; k < static_cast<int>(layout.displaced_modes.size()); ++k) d_param[layout.displaced_modes[k]] = layout.displacement(k);
  for (int m = 0; m < problem.mode_count; ++m) {
    const double r = out.r_param[m] >= 0 ? params[out.r_param[m]] : 0.0;
    if (problem.is_photon_mode(m)) {
      out.inputs[m] = problem.squeeze_photons ? InputState{SqueezedPhoton{r}} : InputState{SinglePhoton{}};
    } else if (d_param[m] >= 0) {
      out.inputs[m] = DisplacedSqueezed{r, {params[d_param[m]], params[d_param[m] + 1]}};
    } else {
      out.inputs[m] = Squeezed{r};
    }
  }
  return out;
}

std::vector<TapeOp> build_tape(const ParameterLayout& layout, const std::vector<double>& params) {
  std::vector<TapeOp> tape;
  for (int k = 0; k < static_cast<int>(layout.pairs.size()); ++k) {
    const auto [i, j] = layout.pairs[k];
    const double phi = params[layout.phi(k)];
    tape.push_back({false, j, j, -phi, layout.phi(k), -1.0});
    tape.push_back({true, i, j, params[layout.theta(k)], layout.theta(k), 1.0});
    tape.push_back({false, j, j, phi, layout.phi(k), 1.0});
  }
  for (int m = 0; m < layout.mode_count; ++m) tape.push_back({false, m, m, params[layout.phase(m)], layout.phase(m), 1.0});
  return tape;
}

/// Zeroes components with total photon number above `max_total`.
void project_total(ComplexVector<double>& psi, int cutoff, int max_total) {
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    int total = 0;
    for (Eigen::Index rest = idx; rest > 0; rest /= cutoff) total += static_cast<int>(rest % cutoff);
    if (total > max_total) psi(idx) = 0.0;
  }
}

ComplexVector<double> product_input(const std::vector<FockVector>& modes, int cutoff) {
  ComplexVector<double> psi = tensor_product(modes).amplitudes();
  project_total(psi, cutoff, cutoff - 1);
  return psi;
}

/// d/dr of S(r)|x> = (a^2 - a^dag^2)/2 S(r)|x>, computed from a vector two entries longer.
FockVector squeeze_derivative(const FockVector& longer, int cutoff) {
  ComplexVector<double> out(cutoff);
  const auto& v = longer.amplitudes();
  for (int n = 0; n < cutoff; ++n) {
    std::complex<double> acc = 0.5 * std::sqrt(double(n + 1) * (n + 2)) * v(n + 2);
    if (n >= 2) acc -= 0.5 * std::sqrt(double(n) * (n - 1)) * v(n - 2);
    out(n) = acc;
  }
  return FockVector(std::move(out));
}

struct Context {
  const OptimizationProblem& problem;
  ParameterLayout layout;
  int heralded_cutoff;
  int sim_cutoff;
  Eigen::Index base = 0;
  Eigen::Index stride = 0;
  ComplexVector<double> target;

  explicit Context(const OptimizationProblem& p)
      : problem(p), layout(p), heralded_cutoff(p.cutoff + p.pad), sim_cutoff(p.cutoff + p.pad + p.pattern.total()) {
    const int m = p.mode_count;
    const int c = sim_cutoff;
    std::vector<int> occupation(m, 0);
    for (int mode = 0, k = 0; mode < m; ++mode)
      if (mode != p.pattern.heralded_mode) occupation[mode] = p.pattern.counts[k++];
    for (int mode = 0; mode < m; ++mode) base = base * c + occupation[mode];
    stride = detail::mode_stride(p.pattern.heralded_mode, m, c);
    target = p.target.resized(heralded_cutoff).amplitudes();
  }
};

struct Forward {
  std::vector<FockVector> inputs;
  std::vector<ComplexVector<double>> states;  // states[0] input, states[l] after tape op l
  ComplexVector<double> heralded;
};

Forward run_forward(const Context& ctx, const std::vector<TapeOp>& tape, const ModeParams& modes, bool keep_states) {
  Forward fw;
  const int c = ctx.sim_cutoff;
  for (const auto& in : modes.inputs) fw.inputs.push_back(input_fock(in, c, ctx.problem.pad).state);
  ComplexVector<double> psi = product_input(fw.inputs, c);
  if (keep_states) fw.states.push_back(psi);
  for (const auto& op : tape) {
    if (op.beamsplitter)
      apply_real_beamsplitter(psi, ctx.problem.mode_count, c, op.i, op.j, op.x, c - 1);
    else
      apply_phase(psi, ctx.problem.mode_count, c, op.i, op.x);
    if (keep_states) fw.states.push_back(psi);
  }
  fw.heralded.resize(ctx.heralded_cutoff);
  for (int k = 0; k < ctx.heralded_cutoff; ++k) fw.heralded(k) = psi(ctx.base + k * ctx.stride);
  return fw;
}

Evaluation score(const Context& ctx, const ComplexVector<double>& A) {
  Evaluation e;
  e.probability = A.squaredNorm();
  if (e.probability >= kZeroProbability) {
    e.fidelity = std::clamp(std::norm(ctx.target.dot(A)) / e.probability, 0.0, 1.0);
    e.heralded_tail = A.tail(ctx.heralded_cutoff - ctx.problem.cutoff).squaredNorm() / e.probability;
  }
  e.reward = ctx.problem.fidelity_weight * e.fidelity + ctx.problem.probability_weight * e.probability;
  return e;
}

void check_params(const ParameterLayout& layout, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != layout.size())
    throw DimensionError(fmt::format("expected {} parameters, got {}", layout.size(), params.size()));
  for (std::size_t k = 0; k < layout.squeezed_modes.size(); ++k) check_squeezing(params[layout.r(static_cast<int>(k))]);
}

Evaluation evaluate_impl(const Context& ctx, const std::vector<double>& params, bool with_gradient) {
  const auto& problem = ctx.problem;
  check_params(ctx.layout, params);
  if (!problem.parity_feasible()) {
    Evaluation e;
    e.feasible = false;
    if (with_gradient) e.gradient.assign(params.size(), 0.0);
    return e;
  }
  const ModeParams modes = mode_inputs(problem, ctx.layout, params);
  const auto tape = build_tape(ctx.layout, params);
  const bool adjoint = with_gradient && !problem.include_displacement;
  Forward fw = run_forward(ctx, tape, modes, adjoint);
  Evaluation e = score(ctx, fw.heralded);
  if (!with_gradient) return e;

  e.gradient.assign(params.size(), 0.0);
  if (!adjoint) {
    // Displaced inputs: central differences over every parameter.
    constexpr double h = 1e-6;
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto plus = params, minus = params;
      plus[k] += h;
      minus[k] -= h;
      const bool is_r = k < ctx.layout.squeezed_modes.size();
      if (is_r) {
        plus[k] = std::min(plus[k], kMaxSqueezing);
        minus[k] = std::max(minus[k], -kMaxSqueezing);
      }
      const double up = evaluate_impl(ctx, plus, false).reward, down = evaluate_impl(ctx, minus, false).reward;
      e.gradient[k] = (up - down) / (plus[k] - minus[k]);
    }
    return e;
  }
  if (e.probability < kZeroProbability) return e;

  const int m = problem.mode_count;
  const int c = ctx.sim_cutoff;
  const auto& A = fw.heralded;
  const std::complex<double> o = ctx.target.dot(A);
  const double p = e.probability;
  ComplexVector<double> g = problem.fidelity_weight * (o * ctx.target / p - (std::norm(o) / (p * p)) * A) + problem.probability_weight * A;

  ComplexVector<double> lambda = ComplexVector<double>::Zero(fw.states.back().size());
  for (int k = 0; k < ctx.heralded_cutoff; ++k) lambda(ctx.base + k * ctx.stride) = g(k);

  for (int l = static_cast<int>(tape.size()); l >= 1; --l) {
    const TapeOp& op = tape[l - 1];
    const ComplexVector<double>& psi = fw.states[l];
    if (op.beamsplitter) {
      const ComplexVector<double> k_psi = beamsplitter_generator(psi, m, c, op.i, op.j);
      e.gradient[op.param] += op.sign * 2.0 * std::real(lambda.dot(k_psi));
      apply_real_beamsplitter(lambda, m, c, op.i, op.j, -op.x, c - 1);
    } else {
      ComplexVector<double> n_psi = psi;
      apply_number(n_psi, m, c, op.i);
      // K = i n
      e.gradient[op.param] += op.sign * 2.0 * std::real(std::complex<double>(0, 1) * lambda.dot(n_psi));
      apply_phase(lambda, m, c, op.i, -op.x);
    }
  }

  for (int mode = 0; mode < m; ++mode) {
    const int idx = modes.r_param[mode];
    if (idx < 0) continue;
    const auto longer = input_fock(modes.inputs[mode], c + 2, problem.pad).state;
    std::vector<FockVector> factors = fw.inputs;
    factors[mode] = squeeze_derivative(longer, c);
    const ComplexVector<double> d_psi = product_input(factors, c);
    e.gradient[idx] += 2.0 * std::real(lambda.dot(d_psi));
  }
  return e;
}

}  // namespace

CircuitSpec circuit_for(const OptimizationProblem& problem, const std::vector<double>& params, int cutoff) {
  const ParameterLayout layout(problem);
  check_params(layout, params);
  CircuitSpec spec;
  spec.mode_count = problem.mode_count;
  spec.cutoff = cutoff;
  spec.inputs = mode_inputs(problem, layout, params).inputs;
  std::vector<double> thetas, phis, phases;
  for (int k = 0; k < static_cast<int>(layout.pairs.size()); ++k) {
    thetas.push_back(params[layout.theta(k)]);
    phis.push_back(params[layout.phi(k)]);
  }
  for (int m = 0; m < problem.mode_count; ++m) phases.push_back(params[layout.phase(m)]);
  spec.mesh = rectangular_mesh(problem.mode_count, thetas, phis, phases);
  return spec;
}

Evaluation evaluate(const OptimizationProblem& problem, const std::vector<double>& params) {
  problem.validate();
  return evaluate_impl(Context(problem), params, false);
}

Evaluation evaluate_with_gradient(const OptimizationProblem& problem, const std::vector<double>& params) {
  problem.validate();
  return evaluate_impl(Context(problem), params, true);
}

std::optional<FockVector> heralded_state(const OptimizationProblem& problem, const std::vector<double>& params) {
  problem.validate();
  const Context ctx(problem);
  check_params(ctx.layout, params);
  const auto fw = run_forward(ctx, build_tape(ctx.layout, params), mode_inputs(problem, ctx.layout, params), false);
  const double p = fw.heralded.squaredNorm();
  if (p < kZeroProbability) return std::nullopt;
  return FockVector(fw.heralded / std::sqrt(p));
}

namespace {

/// Optimization coordinates: r = r_max sin(u) for squeezings, identity otherwise.
struct Coordinates {
  int squeezers;

  std::vector<double> to_physical(const Eigen::VectorXd& x) const {
    std::vector<double> p(x.data(), x.data() + x.size());
    for (int k = 0; k < squeezers; ++k) p[k] = kMaxSqueezing * std::sin(x[k]);
    return p;
  }

  Eigen::VectorXd chain(const Eigen::VectorXd& x, const std::vector<double>& grad) const {
    Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(grad.data(), static_cast<Eigen::Index>(grad.size()));
    for (int k = 0; k < squeezers; ++k) g[k] *= kMaxSqueezing * std::cos(x[k]);
    return g;
  }
};

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

}  // namespace

OptimizationResult optimize_restart(const OptimizationProblem& problem, int restart, std::uint64_t seed) {
  problem.validate();
  const Context ctx(problem);
  const ParameterLayout& layout = ctx.layout;
  const int n = layout.size();
  const Coordinates coords{static_cast<int>(layout.squeezed_modes.size())};

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> squeeze(0.1, 0.9 * kMaxSqueezing);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> shift(-0.5, 0.5);
  Eigen::VectorXd x(n);
  for (int k = 0; k < n; ++k) {
    if (k < coords.squeezers)
      x[k] = std::asin(squeeze(rng) / kMaxSqueezing);
    else if (k < layout.phase(layout.mode_count))
      x[k] = angle(rng);
    else
      x[k] = shift(rng);
  }

  auto objective = [&](const Eigen::VectorXd& at, Eigen::VectorXd* grad) {
    const auto phys = coords.to_physical(at);
    const Evaluation e = evaluate_impl(ctx, phys, grad != nullptr);
    if (grad) *grad = coords.chain(at, e.gradient);
    return e.reward;
  };

  OptimizationResult result;
  result.restart = restart;
  result.n_T = problem.pattern.total();

  // BFGS ascent with Armijo backtracking; H approximates the inverse of -Hessian.
  Eigen::VectorXd g(n);
  double f = objective(x, &g);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  bool fresh = true;
  for (int it = 0; it < problem.max_iterations; ++it) {
    result.iterations = it + 1;
    if (g.cwiseAbs().maxCoeff() < 1e-10) {
      result.converged = true;
      break;
    }
    Eigen::VectorXd d = H * g;
    if (d.dot(g) <= 0.0) {
      H.setIdentity();
      d = g;
      fresh = true;
    }
    const double longest = d.cwiseAbs().maxCoeff();
    if (longest > 0.5) d *= 0.5 / longest;
    const double slope = d.dot(g);
    double step = 1.0, f_new = f;
    Eigen::VectorXd x_new;
    bool accepted = false;
    while (step > 1e-12) {
      x_new = x + step * d;
      f_new = objective(x_new, nullptr);
      if (f_new >= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (fresh) {
        result.converged = true;
        break;
      }
      H.setIdentity();
      fresh = true;
      continue;
    }
    Eigen::VectorXd g_new(n);
    f_new = objective(x_new, &g_new);
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g - g_new;  // curvature of -reward
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
      fresh = false;
    }
    const double delta = f_new - f;
    x = x_new;
    g = g_new;
    f = f_new;
    result.trace.push_back(f);
    if (std::abs(delta) < 1e-8 && s.cwiseAbs().maxCoeff() < 1e-8) {
      result.converged = true;
      break;
    }
  }

  result.params = coords.to_physical(x);
  for (int k = coords.squeezers; k < layout.phase(layout.mode_count); ++k) result.params[k] = wrap_angle(result.params[k]);
  const Evaluation e = evaluate_impl(ctx, result.params, false);
  result.fidelity = e.fidelity;
  result.probability = e.probability;
  result.reward = e.reward;
  return result;
}

std::vector<OptimizationResult> optimize(const OptimizationProblem& problem, int restarts, std::uint64_t seed, int threads) {
  problem.validate();
  if (restarts < 1) throw ValidationError("restarts must be >= 1");
  if (!problem.parity_feasible())
    throw ConvergenceError(fmt::format("pattern ({}) cannot herald the target parity with {} single photon(s); no result",
                                       problem.pattern.to_string(), problem.single_photon_count()));
  std::vector<OptimizationResult> results(restarts);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, restarts);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < restarts; r = next++) results[r] = optimize_restart(problem, r, seed);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::stable_sort(results.begin(), results.end(), [](const OptimizationResult& a, const OptimizationResult& b) {
    if (a.reward != b.reward) return a.reward > b.reward;
    return a.restart < b.restart;
  });
  return results;
}

std::vector<OptimizationResult> pareto_frontier(const std::vector<OptimizationResult>& results) {
  std::vector<OptimizationResult> sorted = results;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.fidelity != b.fidelity) return a.fidelity > b.fidelity;
    return a.probability > b.probability;
  });
  std::vector<OptimizationResult> frontier;
  double best_p = -1.0;
  for (const auto& r : sorted) {
    // Restarts landing on the same optimum differ only by rounding; keep one.
    if (r.probability > best_p + 1e-6) {
      frontier.push_back(r);
      best_p = r.probability;
    }
  }
  return frontier;
}

GradientCheck gradient_check(const OptimizationProblem& problem, const std::vector<double>& params, double step) {
  const Evaluation e = evaluate_with_gradient(problem, params);
  const int n = static_cast<int>(params.size());
  Eigen::VectorXd analytic = Eigen::Map<const Eigen::VectorXd>(e.gradient.data(), n);
  Eigen::VectorXd numeric(n);
  for (int k = 0; k < n; ++k) {
    auto plus = params, minus = params;
    plus[k] += step;
    minus[k] -= step;
    numeric[k] = (evaluate(problem, plus).reward - evaluate(problem, minus).reward) / (2.0 * step);
  }
  GradientCheck out;
  out.gradient_norm = analytic.norm();
  const double scale = std::max(analytic.cwiseAbs().maxCoeff(), 1e-8);
  out.max_relative_deviation = (analytic - numeric).cwiseAbs().maxCoeff() / scale;
  if (out.gradient_norm > 0) {
    const Eigen::VectorXd dir = analytic / out.gradient_norm;
    std::vector<double> plus = params, minus = params;
    for (int k = 0; k < n; ++k) {
      plus[k] += step * dir[k];
      minus[k] -= step * dir[k];
    }
    const double fd = (evaluate(problem, plus).reward - evaluate(problem, minus).reward) / (2.0 * step);
    out.directional_deviation = std::abs(fd - out.gradient_norm) / out.gradient_norm;
  }
  return out;
}

}  // namespace gbsherald
