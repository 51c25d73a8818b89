// Copyright 2026 The Superpose Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "superpose/io.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace superpose::io {
namespace {

namespace fs = std::filesystem;

std::string at(const std::string& where, const std::string& key) { return where + "." + key; }
std::string idx(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected an object");
}

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  require_object(j, where);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(at(where, it.key()), "unknown field");
  }
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  require_object(j, where);
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(at(where, key), "missing required field");
  return *it;
}

double as_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where, "expected a finite number");
  return v;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where, "expected an integer");
  return j.get<int>();
}

std::uint64_t as_u64(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ConfigError(where, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) throw ConfigError(where, "expected true or false");
  return j.get<bool>();
}

std::vector<double> as_numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], idx(where, i)));
  return out;
}

std::vector<int> as_ints(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], idx(where, i)));
  return out;
}

Complex as_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return {as_number(j, where), 0.0};
  if (j.is_array() && j.size() == 2) return {as_number(j[0], idx(where, 0)), as_number(j[1], idx(where, 1))};
  throw ConfigError(where, "expected a number or [re, im]");
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

StateVector as_ket(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where, "expected an array of amplitudes");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_complex(j[i], idx(where, i));
  try {
    return StateVector(std::move(v), Tolerances{.norm = 1e-9});
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
}

Matrix as_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where, "expected a square complex matrix");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string wr = idx(where, r);
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != n) throw ConfigError(wr, "row has the wrong length");
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = as_complex(j[r][c], idx(wr, c));
    }
  }
  return m;
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Axis as_axis(const Json& j, const std::string& where) {
  const std::string s = as_string(j, where);
  if (s == "x") return Axis::kX;
  if (s == "y") return Axis::kY;
  if (s == "z") return Axis::kZ;
  throw ConfigError(where, "axis must be x, y or z");
}

const char* axis_name(Axis a) { return a == Axis::kX ? "x" : a == Axis::kY ? "y" : "z"; }

// Loads a field that is either an inline object or a path to a JSON file.
Json inline_or_file(const Json& j, const fs::path& base_dir, const std::string& where, fs::path* file_dir) {
  if (j.is_string()) {
    const fs::path p = base_dir / j.get<std::string>();
    if (file_dir) *file_dir = p.parent_path();
    return read_json_file(p);
  }
  if (file_dir) *file_dir = base_dir;
  require_object(j, where);
  return j;
}

}  // namespace

Json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream where;
    where << path.string() << ":" << line << ":" << col;
    throw ConfigError(where.str(), "invalid JSON syntax");
  }
}

void write_json_file(const fs::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

nmr::Molecule molecule_from_json(const Json& j, const std::string& where) {
  // "notes" is free text for provenance remarks and is not interpreted.
  reject_unknown(j, {"notes", "spins", "couplings"}, where);
  if (j.contains("notes")) as_string(j["notes"], at(where, "notes"));
  const Json& spins = require(j, "spins", where);
  if (!spins.is_array()) throw ConfigError(at(where, "spins"), "expected an array");
  std::vector<nmr::Spin> out_spins;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    const std::string w = idx(at(where, "spins"), i);
    reject_unknown(spins[i], {"name", "shift_hz", "t1_s", "t2_s", "gyro_rel"}, w);
    nmr::Spin s;
    s.name = as_string(require(spins[i], "name", w), at(w, "name"));
    s.shift_hz = as_number(require(spins[i], "shift_hz", w), at(w, "shift_hz"));
    s.t1_s = as_number(require(spins[i], "t1_s", w), at(w, "t1_s"));
    s.t2_s = as_number(require(spins[i], "t2_s", w), at(w, "t2_s"));
    s.gyro_rel = spins[i].contains("gyro_rel") ? as_number(spins[i]["gyro_rel"], at(w, "gyro_rel")) : 1.0;
    out_spins.push_back(std::move(s));
  }
  std::vector<nmr::Coupling> out_couplings;
  if (j.contains("couplings")) {
    const Json& cs = j["couplings"];
    if (!cs.is_array()) throw ConfigError(at(where, "couplings"), "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string w = idx(at(where, "couplings"), i);
      reject_unknown(cs[i], {"i", "j", "j_hz", "regime"}, w);
      nmr::Coupling c;
      c.i = as_int(require(cs[i], "i", w), at(w, "i"));
      c.j = as_int(require(cs[i], "j", w), at(w, "j"));
      c.j_hz = as_number(require(cs[i], "j_hz", w), at(w, "j_hz"));
      if (cs[i].contains("regime")) {
        try {
          c.regime = nmr::parse_regime(as_string(cs[i]["regime"], at(w, "regime")));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(at(w, "regime"), e.what());
        }
      }
      out_couplings.push_back(c);
    }
  }
  try {
    return nmr::Molecule(std::move(out_spins), std::move(out_couplings));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
}

Json molecule_to_json(const nmr::Molecule& mol) {
  Json spins = Json::array();
  for (const nmr::Spin& s : mol.spins()) {
    spins.push_back({{"name", s.name}, {"shift_hz", s.shift_hz}, {"t1_s", s.t1_s}, {"t2_s", s.t2_s}, {"gyro_rel", s.gyro_rel}});
  }
  Json couplings = Json::array();
  for (const nmr::Coupling& c : mol.couplings()) {
    couplings.push_back({{"i", c.i}, {"j", c.j}, {"j_hz", c.j_hz}, {"regime", nmr::regime_name(c.regime)}});
  }
  return {{"spins", spins}, {"couplings", couplings}};
}

nmr::Molecule load_molecule(const fs::path& path) { return molecule_from_json(read_json_file(path), path.string()); }

grape::ControlPulse pulse_from_json(const Json& j, const std::string& where) {
  require_object(j, where);
  grape::ControlPulse p;
  p.dt_s = as_number(require(j, "dt_s", where), at(where, "dt_s"));
  const Json& ch = require(j, "channels", where);
  if (!ch.is_array()) throw ConfigError(at(where, "channels"), "expected an array of names");
  for (std::size_t i = 0; i < ch.size(); ++i) p.channels.push_back(as_string(ch[i], idx(at(where, "channels"), i)));
  const Json& amps = require(j, "amplitudes", where);
  if (!amps.is_array()) throw ConfigError(at(where, "amplitudes"), "expected an array of arrays");
  for (std::size_t i = 0; i < amps.size(); ++i) p.amplitudes.push_back(as_numbers(amps[i], idx(at(where, "amplitudes"), i)));
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
  return p;
}

Json pulse_to_json(const grape::ControlPulse& pulse) {
  return {{"dt_s", pulse.dt_s}, {"channels", pulse.channels}, {"amplitudes", pulse.amplitudes}};
}

grape::ControlPulse load_pulse(const fs::path& path) { return pulse_from_json(read_json_file(path), path.string()); }

noise::NoiseModel noise_from_json(const Json& j, const fs::path& base_dir, const std::string& where) {
  reject_unknown(j, {"relaxation", "prep_error", "coherent_error", "readout_sigma", "seed"}, where);
  noise::NoiseModel m = noise::NoiseModel::defaults();
  if (j.contains("relaxation")) {
    const std::string w = at(where, "relaxation");
    const Json& r = j["relaxation"];
    reject_unknown(r, {"enabled", "t1_t2", "max_step_s"}, w);
    if (r.contains("enabled")) m.relaxation.enabled = as_bool(r["enabled"], at(w, "enabled"));
    if (r.contains("max_step_s")) m.relaxation.max_step_s = as_number(r["max_step_s"], at(w, "max_step_s"));
    if (r.contains("t1_t2")) {
      const Json& list = r["t1_t2"];
      if (!list.is_array()) throw ConfigError(at(w, "t1_t2"), "expected an array of [T1, T2] pairs");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string wi = idx(at(w, "t1_t2"), i);
        const std::vector<double> pair = as_numbers(list[i], wi);
        if (pair.size() != 2) throw ConfigError(wi, "expected [T1, T2]");
        if (!(pair[1] > 0.0) || !(pair[0] >= pair[1])) throw ConfigError(wi, "relaxation times must satisfy T1 >= T2 > 0");
        m.relaxation.t1_t2_overrides.emplace_back(pair[0], pair[1]);
      }
    }
  }
  if (j.contains("prep_error")) m.prep_error = as_number(j["prep_error"], at(where, "prep_error"));
  if (j.contains("readout_sigma")) m.readout_sigma = as_number(j["readout_sigma"], at(where, "readout_sigma"));
  if (j.contains("seed")) m.seed = as_u64(j["seed"], at(where, "seed"));
  if (j.contains("coherent_error")) {
    const std::string w = at(where, "coherent_error");
    const Json& c = j["coherent_error"];
    reject_unknown(c, {"kind", "strength", "pulse_file"}, w);
    if (c.contains("kind")) {
      try {
        m.coherent.kind = noise::parse_coherent_kind(as_string(c["kind"], at(w, "kind")));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(at(w, "kind"), e.what());
      }
    }
    if (c.contains("strength")) m.coherent.strength = as_number(c["strength"], at(w, "strength"));
    if (c.contains("pulse_file")) {
      const fs::path p = base_dir / as_string(c["pulse_file"], at(w, "pulse_file"));
      m.coherent.pulse_file = p.string();
      m.coherent.pulse = load_pulse(p);
    }
  }
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
  return m;
}

Json noise_to_json(const noise::NoiseModel& m) {
  Json pairs = Json::array();
  for (const auto& [t1, t2] : m.relaxation.t1_t2_overrides) pairs.push_back({t1, t2});
  Json relax = {{"enabled", m.relaxation.enabled}, {"max_step_s", m.relaxation.max_step_s}};
  if (!pairs.empty()) relax["t1_t2"] = pairs;
  Json coherent = {{"kind", noise::coherent_kind_name(m.coherent.kind)}, {"strength", m.coherent.strength}};
  if (!m.coherent.pulse_file.empty()) coherent["pulse_file"] = m.coherent.pulse_file;
  return {{"relaxation", relax},
          {"prep_error", m.prep_error},
          {"coherent_error", coherent},
          {"readout_sigma", m.readout_sigma},
          {"seed", m.seed}};
}

nmr::PulseProgram program_from_json(const Json& j, const std::string& where) {
  reject_unknown(j, {"events"}, where);
  const Json& events = require(j, "events", where);
  if (!events.is_array()) throw ConfigError(at(where, "events"), "expected an array");
  std::vector<nmr::Event> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::string w = idx(at(where, "events"), i);
    const Json& e = events[i];
    const std::string type = as_string(require(e, "type", w), at(w, "type"));
    if (type == "rotation") {
      reject_unknown(e, {"type", "qubit", "axis", "angle"}, w);
      out.emplace_back(nmr::IdealRotation{as_int(require(e, "qubit", w), at(w, "qubit")),
                                          as_axis(require(e, "axis", w), at(w, "axis")),
                                          as_number(require(e, "angle", w), at(w, "angle"))});
    } else if (type == "shaped_pulse") {
      reject_unknown(e, {"type", "pulse"}, w);
      out.emplace_back(nmr::ShapedPulse{pulse_from_json(require(e, "pulse", w), at(w, "pulse"))});
    } else if (type == "free_evolution") {
      reject_unknown(e, {"type", "duration_s"}, w);
      out.emplace_back(nmr::FreeEvolution{as_number(require(e, "duration_s", w), at(w, "duration_s"))});
    } else if (type == "crusher") {
      reject_unknown(e, {"type", "qubits"}, w);
      out.emplace_back(nmr::Crusher{e.contains("qubits") ? as_ints(e["qubits"], at(w, "qubits")) : std::vector<int>{}});
    } else if (type == "pi_refocus") {
      reject_unknown(e, {"type", "qubits"}, w);
      out.emplace_back(nmr::PiRefocus{as_ints(require(e, "qubits", w), at(w, "qubits"))});
    } else if (type == "gate") {
      reject_unknown(e, {"type", "matrix", "duration_s", "label"}, w);
      Matrix m = as_matrix(require(e, "matrix", w), at(w, "matrix"));
      const double d = e.contains("duration_s") ? as_number(e["duration_s"], at(w, "duration_s")) : 0.0;
      const std::string label = e.contains("label") ? as_string(e["label"], at(w, "label")) : "gate";
      try {
        out.emplace_back(nmr::Gate{Operator(std::move(m), true, Tolerances{.unitary = 1e-8}), d, label});
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(at(w, "matrix"), ex.what());
      }
    } else if (type == "delay") {
      reject_unknown(e, {"type", "duration_s"}, w);
      out.emplace_back(nmr::Delay{as_number(require(e, "duration_s", w), at(w, "duration_s"))});
    } else {
      throw ConfigError(at(w, "type"), "unknown event type '" + type + "'");
    }
  }
  return nmr::PulseProgram(std::move(out));
}

Json program_to_json(const nmr::PulseProgram& program) {
  Json events = Json::array();
  for (const nmr::Event& e : program.events()) {
    if (const auto* r = std::get_if<nmr::IdealRotation>(&e)) {
      events.push_back({{"type", "rotation"}, {"qubit", r->qubit}, {"axis", axis_name(r->axis)}, {"angle", r->angle}});
    } else if (const auto* p = std::get_if<nmr::ShapedPulse>(&e)) {
      events.push_back({{"type", "shaped_pulse"}, {"pulse", pulse_to_json(p->pulse)}});
    } else if (const auto* f = std::get_if<nmr::FreeEvolution>(&e)) {
      events.push_back({{"type", "free_evolution"}, {"duration_s", f->duration_s}});
    } else if (const auto* c = std::get_if<nmr::Crusher>(&e)) {
      events.push_back({{"type", "crusher"}, {"qubits", c->qubits}});
    } else if (const auto* pi = std::get_if<nmr::PiRefocus>(&e)) {
      events.push_back({{"type", "pi_refocus"}, {"qubits", pi->qubits}});
    } else if (const auto* g = std::get_if<nmr::Gate>(&e)) {
      events.push_back({{"type", "gate"}, {"matrix", matrix_json(g->unitary.matrix())}, {"duration_s", g->duration_s}, {"label", g->label}});
    } else if (const auto* d = std::get_if<nmr::Delay>(&e)) {
      events.push_back({{"type", "delay"}, {"duration_s", d->duration_s}});
    }
  }
  return {{"events", events}};
}

double parse_angle(const std::string& text) {
  // "pi", "-pi", "pi/N", "K*pi/N", "K*pi" or a plain number of radians
  const auto pos = text.find("pi");
  if (pos == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw std::invalid_argument("cannot parse angle '" + text + "'");
    return v;
  }
  double k = 1.0, n = 1.0;
  const std::string head = text.substr(0, pos);
  const std::string tail = text.substr(pos + 2);
  if (head == "-") {
    k = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') throw std::invalid_argument("cannot parse angle '" + text + "'");
    k = parse_angle(head.substr(0, head.size() - 1));
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw std::invalid_argument("cannot parse angle '" + text + "'");
    n = parse_angle(tail.substr(1));
    if (n == 0.0) throw std::invalid_argument("angle divides by zero");
  }
  return k * std::numbers::pi / n;
}

Operator parse_target(const std::string& spec, int num_qubits, const fs::path& base_dir) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  if (spec == "cswap") {
    if (num_qubits != 3) throw std::invalid_argument("the cswap target needs a three-spin molecule");
    return protocol::controlled_swap();
  }
  if (spec == "identity") return Operator(Matrix::Identity(dim, dim), true);
  if (spec.rfind("rot:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(spec.substr(4));
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw std::invalid_argument("rotation target must be rot:<qubit>:<axis>:<angle>");
    int qubit = 0;
    try {
      qubit = std::stoi(parts[0]);
    } catch (const std::exception&) {
      throw std::invalid_argument("rotation qubit '" + parts[0] + "' is not an integer");
    }
    Axis axis;
    if (parts[1] == "x") {
      axis = Axis::kX;
    } else if (parts[1] == "y") {
      axis = Axis::kY;
    } else if (parts[1] == "z") {
      axis = Axis::kZ;
    } else {
      throw std::invalid_argument("rotation axis must be x, y or z");
    }
    return grape::local_rotation_target(num_qubits, qubit, axis, parse_angle(parts[2]));
  }
  if (spec.rfind("file:", 0) == 0) {
    const fs::path p = base_dir / spec.substr(5);
    Matrix m = as_matrix(read_json_file(p), p.string());
    if (m.rows() != dim) throw ConfigError(p.string(), "target dimension does not match the molecule");
    try {
      return Operator(std::move(m), true, Tolerances{.unitary = 1e-8});
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p.string(), e.what());
    }
  }
  throw std::invalid_argument("unknown target '" + spec + "' (cswap, identity, rot:q:axis:angle, file:path)");
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig c;
  for (int k = 0; k < 12; ++k) c.theta_grid.push_back(k * std::numbers::pi / 12);
  c.overlap1_grid = {0.4, 0.55, 0.7, 0.85, 1.0};
  c.overlap2_grid = {0.4, 0.55, 0.7, 0.85, 1.0};
  return c;
}

ExperimentConfig config_from_json(const Json& j, const fs::path& base_dir) {
  const std::string root = "$";
  reject_unknown(j,
                 {"molecule", "group", "custom_task", "theta_grid", "noise", "n_trials", "mode", "reduction",
                  "post_selection_floor", "seed", "uncertainty_map", "grape", "plots"},
                 root);
  ExperimentConfig c = ExperimentConfig::defaults();
  c.base_dir = base_dir;
  if (j.contains("molecule")) {
    fs::path dir;
    const Json doc = inline_or_file(j["molecule"], base_dir, at(root, "molecule"), &dir);
    c.molecule = molecule_from_json(doc, j["molecule"].is_string() ? j["molecule"].get<std::string>() : at(root, "molecule"));
  }
  if (j.contains("group")) {
    c.group = as_string(j["group"], at(root, "group"));
    if (c.group == "a") c.group = "A";
    if (c.group == "b") c.group = "B";
    if (c.group != "A" && c.group != "B" && c.group != "custom") {
      throw ConfigError(at(root, "group"), "group must be A, B or custom");
    }
  }
  if (j.contains("custom_task")) {
    const std::string w = at(root, "custom_task");
    const Json& t = j["custom_task"];
    reject_unknown(t, {"phi1", "phi2", "chi", "alpha", "beta"}, w);
    try {
      c.custom_task.emplace(as_ket(require(t, "phi1", w), at(w, "phi1")), as_ket(require(t, "phi2", w), at(w, "phi2")),
                            as_ket(require(t, "chi", w), at(w, "chi")), as_complex(require(t, "alpha", w), at(w, "alpha")),
                            as_complex(require(t, "beta", w), at(w, "beta")));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(w, e.what());
    }
  }
  if (c.group == "custom" && !c.custom_task) throw ConfigError(at(root, "custom_task"), "group 'custom' needs a custom_task");
  if (j.contains("theta_grid")) {
    c.theta_grid = as_numbers(j["theta_grid"], at(root, "theta_grid"));
    if (c.theta_grid.empty()) throw ConfigError(at(root, "theta_grid"), "grid must not be empty");
    for (std::size_t i = 0; i < c.theta_grid.size(); ++i) {
      if (c.theta_grid[i] < 0.0 || c.theta_grid[i] > std::numbers::pi) {
        throw ConfigError(idx(at(root, "theta_grid"), i), "angle must lie in [0, pi]");
      }
    }
  }
  if (j.contains("noise")) {
    fs::path dir;
    const Json doc = inline_or_file(j["noise"], base_dir, at(root, "noise"), &dir);
    c.noise = noise_from_json(doc, dir, j["noise"].is_string() ? j["noise"].get<std::string>() : at(root, "noise"));
  }
  if (j.contains("n_trials")) {
    c.n_trials = as_int(j["n_trials"], at(root, "n_trials"));
    if (c.n_trials < 1) throw ConfigError(at(root, "n_trials"), "must be >= 1");
  }
  if (j.contains("mode")) {
    try {
      c.mode = noise::parse_mode(as_string(j["mode"], at(root, "mode")));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(at(root, "mode"), e.what());
    }
  }
  if (j.contains("reduction")) {
    const std::string r = as_string(j["reduction"], at(root, "reduction"));
    if (r == "projection") {
      c.reduction = noise::Reduction::kProjection;
    } else if (r == "trace_out") {
      c.reduction = noise::Reduction::kTraceOut;
    } else {
      throw ConfigError(at(root, "reduction"), "reduction must be projection or trace_out");
    }
  }
  if (j.contains("post_selection_floor")) {
    c.post_selection_floor = as_number(j["post_selection_floor"], at(root, "post_selection_floor"));
    if (!(c.post_selection_floor > 0.0)) throw ConfigError(at(root, "post_selection_floor"), "must be > 0");
  }
  if (j.contains("seed")) c.noise.seed = as_u64(j["seed"], at(root, "seed"));
  if (j.contains("uncertainty_map")) {
    const std::string w = at(root, "uncertainty_map");
    const Json& u = j["uncertainty_map"];
    reject_unknown(u, {"overlap1", "overlap2"}, w);
    if (u.contains("overlap1")) c.overlap1_grid = as_numbers(u["overlap1"], at(w, "overlap1"));
    if (u.contains("overlap2")) c.overlap2_grid = as_numbers(u["overlap2"], at(w, "overlap2"));
    for (const auto* grid : {&c.overlap1_grid, &c.overlap2_grid}) {
      if (grid->empty()) throw ConfigError(w, "overlap grids must not be empty");
      for (double o : *grid) {
        if (!(o > 0.0 && o <= 1.0)) throw ConfigError(w, "overlap values must lie in (0, 1]");
      }
    }
  }
  if (j.contains("grape")) {
    const std::string w = at(root, "grape");
    const Json& g = j["grape"];
    reject_unknown(g, {"target", "duration_s", "segments", "goal", "max_iterations", "seed", "ensemble"}, w);
    if (g.contains("target")) c.grape.target = as_string(g["target"], at(w, "target"));
    if (g.contains("duration_s")) c.grape.duration_s = as_number(g["duration_s"], at(w, "duration_s"));
    if (g.contains("segments")) c.grape.segments = as_int(g["segments"], at(w, "segments"));
    if (g.contains("goal")) c.grape.goal = as_number(g["goal"], at(w, "goal"));
    if (g.contains("max_iterations")) c.grape.max_iterations = as_int(g["max_iterations"], at(w, "max_iterations"));
    if (g.contains("seed")) c.grape.seed = as_u64(g["seed"], at(w, "seed"));
    if (g.contains("ensemble")) {
      const Json& e = g["ensemble"];
      if (!e.is_array() || e.empty()) throw ConfigError(at(w, "ensemble"), "expected a non-empty array");
      c.grape.ensemble.clear();
      for (std::size_t i = 0; i < e.size(); ++i) {
        const std::string wi = idx(at(w, "ensemble"), i);
        reject_unknown(e[i], {"rf_scale", "shift_offset_hz", "weight"}, wi);
        grape::EnsembleMember m;
        if (e[i].contains("rf_scale")) m.rf_scale = as_number(e[i]["rf_scale"], at(wi, "rf_scale"));
        if (e[i].contains("shift_offset_hz")) m.shift_offset_hz = as_number(e[i]["shift_offset_hz"], at(wi, "shift_offset_hz"));
        m.weight = as_number(require(e[i], "weight", wi), at(wi, "weight"));
        c.grape.ensemble.push_back(m);
      }
    }
    if (c.grape.segments < 1) throw ConfigError(at(w, "segments"), "must be >= 1");
    if (!(c.grape.duration_s >= 0.0)) throw ConfigError(at(w, "duration_s"), "must be >= 0");
    if (!(c.grape.goal > 0.0 && c.grape.goal <= 1.0)) throw ConfigError(at(w, "goal"), "must lie in (0, 1]");
    if (c.grape.max_iterations < 0) throw ConfigError(at(w, "max_iterations"), "must be >= 0");
  }
  if (j.contains("plots")) c.plots = as_bool(j["plots"], at(root, "plots"));
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  const Json doc = read_json_file(path);
  return config_from_json(doc, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

}  // namespace superpose::io
