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

#include "gbsherald/records.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "gbsherald/errors.hpp"
#include "gbsherald/targets.hpp"
#include "gbsherald/version.hpp"

namespace gbsherald {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

struct FieldParser {
  const std::string& source;
  int line;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, line, what); }

  double real(const std::string& key, const std::string& v) const {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0') fail(fmt::format("'{}' expects a number, got '{}'", key, v));
    return x;
  }

  long long integer(const std::string& key, const std::string& v) const {
    long long x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) fail(fmt::format("'{}' expects an integer, got '{}'", key, v));
    return x;
  }

  std::uint64_t unsigned_integer(const std::string& key, const std::string& v) const {
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) fail(fmt::format("'{}' expects an unsigned integer, got '{}'", key, v));
    return x;
  }

  bool boolean(const std::string& key, const std::string& v) const {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(fmt::format("'{}' expects true or false, got '{}'", key, v));
  }

  std::vector<int> int_list(const std::string& key, const std::string& v) const {
    std::vector<int> out;
    for (const auto& item : split(v, ',')) out.push_back(static_cast<int>(integer(key, item)));
    return out;
  }

  std::vector<double> real_list(const std::string& key, const std::string& v) const {
    std::vector<double> out;
    for (const auto& item : split(v, ',')) out.push_back(real(key, item));
    return out;
  }

  std::complex<double> complex(const std::string& key, const std::string& v) const {
    const auto parts = real_list(key, v);
    if (parts.size() == 1) return {parts[0], 0.0};
    if (parts.size() == 2) return {parts[0], parts[1]};
    fail(fmt::format("'{}' expects 're' or 're,im'", key));
  }
};

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + fmt::format("{:.17g}", v[k]);
  return s;
}

/// Applies a definition field; returns false for unknown keys.
bool set_definition_field(ExperimentDefinition& def, const std::string& key, const std::string& value, const FieldParser& parse) {
  if (key == "modes") def.modes = static_cast<int>(parse.integer(key, value));
  else if (key == "photons") def.photons = parse.int_list(key, value);
  else if (key == "squeeze_photons") def.squeeze_photons = parse.boolean(key, value);
  else if (key == "pattern") def.pattern = parse.int_list(key, value);
  else if (key == "heralded_mode") def.heralded_mode = static_cast<int>(parse.integer(key, value));
  else if (key == "target") {
    if (value != "cat" && value != "cat_odd" && value != "gkp_core" && value != "gkp_canonical")
      parse.fail("target must be one of cat, cat_odd, gkp_core, gkp_canonical");
    def.target = value;
  } else if (key == "alpha") def.alpha = parse.complex(key, value);
  else if (key == "delta") def.delta = parse.real(key, value);
  else if (key == "cutoff") def.cutoff = static_cast<int>(parse.integer(key, value));
  else if (key == "pad") def.pad = static_cast<int>(parse.integer(key, value));
  else if (key == "weights") {
    const auto w = parse.real_list(key, value);
    if (w.size() != 2) parse.fail("weights expects 'fidelity,probability'");
    def.fidelity_weight = w[0];
    def.probability_weight = w[1];
  } else if (key == "include_displacement") def.include_displacement = parse.boolean(key, value);
  else if (key == "max_iterations") def.max_iterations = static_cast<int>(parse.integer(key, value));
  else if (key == "seed") def.seed = parse.unsigned_integer(key, value);
  else if (key == "restarts") def.restarts = static_cast<int>(parse.integer(key, value));
  else if (key == "min_fidelity") def.min_fidelity = parse.real(key, value);
  else return false;
  return true;
}

void check_definition(const ExperimentDefinition& def, const FieldParser& parse) {
  if (def.id.empty()) parse.fail("experiment id must not be empty");
  if (def.restarts < 1) parse.fail("restarts must be >= 1");
  if (static_cast<int>(def.pattern.size()) != def.modes - 1)
    parse.fail(fmt::format("block '{}': pattern needs {} counts for {} modes", def.id, def.modes - 1, def.modes));
  try {
    def.problem().validate();
  } catch (const Error& e) {
    parse.fail(fmt::format("block '{}': {}", def.id, e.what()));
  }
}

}  // namespace

int default_cutoff() {
  if (const char* env = std::getenv("GBSHERALD_CUTOFF")) {
    int v = 0;
    const std::string s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v >= 2) return v;
    throw ValidationError("GBSHERALD_CUTOFF must be an integer >= 2");
  }
  return kDefaultCutoff;
}

FockVector build_target(const ExperimentDefinition& def) {
  const int dh = def.cutoff + def.pad;
  if (def.target == "cat") return cat_state(def.alpha, CatParity::even, dh);
  if (def.target == "cat_odd") return cat_state(def.alpha, CatParity::odd, dh);
  if (def.target == "gkp_core") return gkp_core_target(def.delta).core;
  if (def.target == "gkp_canonical") {
    GkpParameters params{def.delta, def.delta, 0};
    while (true) {
      try {
        params.validate();
        break;
      } catch (const DomainError&) {
        ++params.lattice_halfwidth;
      }
    }
    return gkp_canonical(params, dh).state;
  }
  throw ValidationError("unknown target '" + def.target + "'");
}

OptimizationProblem ExperimentDefinition::problem() const {
  OptimizationProblem p;
  p.mode_count = modes;
  p.photon_modes = photons;
  p.squeeze_photons = squeeze_photons;
  p.pattern = HeraldPattern{pattern, heralded_mode};
  p.target = build_target(*this);
  p.cutoff = cutoff;
  p.pad = pad;
  p.fidelity_weight = fidelity_weight;
  p.probability_weight = probability_weight;
  p.include_displacement = include_displacement;
  p.max_iterations = max_iterations;
  return p;
}

std::vector<ExperimentDefinition> parse_config(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool header = false;
  std::vector<ExperimentDefinition> out;
  std::vector<int> block_lines;
  std::map<std::string, int> seen_ids;
  const int cutoff = default_cutoff();
  while (std::getline(in, raw)) {
    ++lineno;
    const FieldParser parse{source, lineno};
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "gbsherald-config v1") parse.fail("expected header 'gbsherald-config v1'");
      header = true;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') parse.fail("unterminated block header");
      ExperimentDefinition def;
      def.id = trim(line.substr(1, line.size() - 2));
      def.cutoff = cutoff;
      if (def.id.empty() || def.id.find_first_of(" \t=") != std::string::npos) parse.fail("block id must be non-empty without spaces or '='");
      if (seen_ids.count(def.id)) parse.fail(fmt::format("duplicate block '{}' (first on line {})", def.id, seen_ids[def.id]));
      seen_ids[def.id] = lineno;
      out.push_back(def);
      block_lines.push_back(lineno);
      continue;
    }
    if (out.empty()) parse.fail("setting outside of a [block]");
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse.fail("expected 'key = value'");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (!set_definition_field(out.back(), key, value, parse)) parse.fail(fmt::format("unknown key '{}'", key));
  }
  if (!header) throw ParseError(source, lineno, "empty config");
  if (out.empty()) throw ParseError(source, lineno, "config defines no experiments");
  for (std::size_t k = 0; k < out.size(); ++k) check_definition(out[k], FieldParser{source, block_lines[k]});
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::vector<ExperimentDefinition> load_config(const std::string& path) { return parse_config(read_file(path), path); }

RunRecord make_record(const ExperimentDefinition& def, const OptimizationResult& result, double wall_s) {
  RunRecord r;
  r.def = def;
  r.single_photons = static_cast<int>(def.photons.size());
  r.restart = result.restart;
  r.one_minus_F = 1.0 - result.fidelity;
  r.p = result.probability;
  r.n_T = result.n_T;
  r.reward = result.reward;
  r.iterations = result.iterations;
  r.params = result.params;
  r.wall_s = wall_s;
  r.version = kVersion;
  return r;
}

std::string format_record(const RunRecord& r) {
  const auto& d = r.def;
  std::string s = fmt::format("id={} modes={} n={} photons={} squeeze_photons={} pattern={} heralded_mode={} target={} alpha={:.17g},{:.17g} delta={:.17g}",
                              d.id, d.modes, r.single_photons, d.photons.empty() ? "-" : join(d.photons), d.squeeze_photons ? "true" : "false",
                              join(d.pattern), d.heralded_mode, d.target, d.alpha.real(), d.alpha.imag(), d.delta);
  s += fmt::format(" cutoff={} pad={} weights={:.17g},{:.17g} include_displacement={} max_iterations={} seed={} restarts={} restart={}", d.cutoff,
                   d.pad, d.fidelity_weight, d.probability_weight, d.include_displacement ? "true" : "false", d.max_iterations, d.seed, d.restarts,
                   r.restart);
  if (d.min_fidelity) s += fmt::format(" min_fidelity={:.17g}", *d.min_fidelity);
  s += fmt::format(" one_minus_F={:.17g} p={:.17g} n_T={} reward={:.17g} iterations={}", r.one_minus_F, r.p, r.n_T, r.reward, r.iterations);
  if (r.params) s += " params=" + join(*r.params);
  s += fmt::format(" wall_s={:.3f} version={}", r.wall_s, r.version.empty() ? kVersion : r.version);
  return s;
}

RunRecord parse_record(const std::string& line, const std::string& source, int lineno) {
  const FieldParser parse{source, lineno};
  RunRecord r;
  bool has_n = false, has_F = false, has_p = false;
  std::istringstream in(line);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) parse.fail("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq), value = token.substr(eq + 1);
    if (key == "id") r.def.id = value;
    else if (key == "n") r.single_photons = static_cast<int>(parse.integer(key, value)), has_n = true;
    else if (key == "photons") r.def.photons = value == "-" ? std::vector<int>{} : parse.int_list(key, value);
    else if (key == "restart") r.restart = static_cast<int>(parse.integer(key, value));
    else if (key == "one_minus_F") r.one_minus_F = parse.real(key, value), has_F = true;
    else if (key == "p") r.p = parse.real(key, value), has_p = true;
    else if (key == "n_T") r.n_T = static_cast<int>(parse.integer(key, value));
    else if (key == "reward") r.reward = parse.real(key, value);
    else if (key == "iterations") r.iterations = static_cast<int>(parse.integer(key, value));
    else if (key == "params") r.params = parse.real_list(key, value);
    else if (key == "wall_s") r.wall_s = parse.real(key, value);
    else if (key == "version") r.version = value;
    else if (!set_definition_field(r.def, key, value, parse)) parse.fail(fmt::format("unknown field '{}'", key));
  }
  if (r.def.id.empty()) parse.fail("record has no id");
  if (!has_F || !has_p) parse.fail("record needs one_minus_F and p");
  if (!has_n) r.single_photons = static_cast<int>(r.def.photons.size());
  if (!(r.one_minus_F >= 0.0 && r.one_minus_F <= 1.0) || !(r.p >= 0.0 && r.p <= 1.0)) parse.fail("one_minus_F and p must lie in [0, 1]");
  return r;
}

std::vector<RunRecord> parse_results(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool header = false;
  std::vector<RunRecord> out;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "gbsherald-results v1") throw ParseError(source, lineno, "expected header 'gbsherald-results v1'");
      header = true;
      continue;
    }
    out.push_back(parse_record(line, source, lineno));
  }
  if (!header) throw ParseError(source, lineno, "empty results file");
  return out;
}

std::vector<RunRecord> load_results(const std::string& path) { return parse_results(read_file(path), path); }

void append_records(const std::string& path, const std::vector<RunRecord>& records) {
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  bool empty = true;
  {
    std::ifstream probe(path, std::ios::binary | std::ios::ate);
    empty = !probe || probe.tellg() <= 0;
  }
  std::string chunk;
  if (empty) chunk += "gbsherald-results v1\n";
  for (const auto& r : records) chunk += format_record(r) + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw NotFoundError("cannot open '" + path + "' for appending");
  out.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

OptimizationResult rerun(const RunRecord& record) {
  return optimize_restart(record.def.problem(), record.restart, record.def.seed);
}

}  // namespace gbsherald
