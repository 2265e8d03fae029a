// Copyright 2026 The micprob Authors
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


// Command-line front end. Talks to the library only through micprob.h.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "micprob/micprob.h"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitComputation = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void invalid(const std::string& msg) { throw CliError{kExitValidation, msg}; }

void check(mp_status s) {
  if (s == MP_OK) return;
  const std::string msg = std::string(mp_status_name(s)) + ": " + mp_last_error();
  throw CliError{mp_status_is_validation(s) ? kExitValidation : kExitComputation, msg};
}

struct Globals {
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
};

Globals g;

// ---- I/O ----

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw CliError{kExitValidation, "cannot write " + g.out};
  f << text;
}

void emit(const json& j) { emit(j.dump(2) + "\n"); }

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) invalid("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    invalid(path + ": " + e.what());
  }
}

// Complex entries are [re, im] pairs or plain numbers.
std::complex<double> read_complex(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
  invalid("complex entries must be numbers or [re, im] pairs");
}

// Square complex matrix as interleaved row-major doubles.
std::vector<double> read_cmatrix(const json& m, int& dim) {
  if (!m.is_array() || m.empty()) invalid("matrix must be a non-empty array of rows");
  const int n = static_cast<int>(m.size());
  if (dim > 0 && n != dim) invalid("matrix has dimension " + std::to_string(n) + ", expected " + std::to_string(dim));
  dim = n;
  std::vector<double> out;
  for (const auto& row : m) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) invalid("matrix must be square");
    for (const auto& x : row) {
      const auto z = read_complex(x);
      out.push_back(z.real());
      out.push_back(z.imag());
    }
  }
  return out;
}

std::vector<double> read_cmatrices(const json& list, int& dim) {
  if (!list.is_array() || list.empty()) invalid("expected a non-empty list of matrices");
  std::vector<double> out;
  for (const auto& m : list) {
    const auto one = read_cmatrix(m, dim);
    out.insert(out.end(), one.begin(), one.end());
  }
  return out;
}

std::vector<double> read_rmatrix(const json& m, int rows, int cols) {
  if (!m.is_array() || static_cast<int>(m.size()) != rows) invalid("real matrix must have " + std::to_string(rows) + " rows");
  std::vector<double> out;
  for (const auto& row : m) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols) invalid("real matrix must have " + std::to_string(cols) + " columns");
    for (const auto& x : row) {
      if (!x.is_number()) invalid("real matrix entries must be numbers");
      out.push_back(x.get<double>());
    }
  }
  return out;
}

int count_rows(const json& m) {
  if (!m.is_array() || m.empty()) invalid("matrix must be a non-empty array of rows");
  return static_cast<int>(m.size());
}

std::vector<double> read_vector(const json& v, int n) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) invalid("vector must have " + std::to_string(n) + " entries");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) invalid("vector entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

json cmatrix_json(const double* data, int dim) {
  json m = json::array();
  for (int r = 0; r < dim; ++r) {
    json row = json::array();
    for (int c = 0; c < dim; ++c) row.push_back({data[2 * (r * dim + c)], data[2 * (r * dim + c) + 1]});
    m.push_back(row);
  }
  return m;
}

json rmatrix_json(const double* data, int rows, int cols) {
  json m = json::array();
  for (int r = 0; r < rows; ++r) m.push_back(std::vector<double>(data + r * cols, data + (r + 1) * cols));
  return m;
}

json verdict_json(const mp_verdict& v) {
  return {{"verdict", v.is_physical ? "physical" : "not physical"},
          {"is_physical", static_cast<bool>(v.is_physical)},
          {"boundary", static_cast<bool>(v.boundary)},
          {"effective_degree", v.effective_degree},
          {"poly_coeffs", std::vector<double>(v.poly_coeffs, v.poly_coeffs + v.degree + 1)},
          {"minors", std::vector<double>(v.minors, v.minors + v.effective_degree)}};
}

// ---- frames ----

struct FrameDeleter {
  void operator()(mp_frame* f) const { mp_frame_free(f); }
};
using Frame = std::unique_ptr<mp_frame, FrameDeleter>;

Frame sic_qubit() {
  mp_frame* f = nullptr;
  check(mp_frame_build_sic_qubit(&f));
  return Frame(f);
}

Frame frame_from_object(const json& j) {
  mp_frame* f = nullptr;
  if (j.contains("effects")) {
    int dim = 0;
    const auto e = read_cmatrices(j["effects"], dim);
    check(mp_frame_from_effects(dim, static_cast<int>(j["effects"].size()), e.data(), g.tol, &f));
  } else if (j.contains("kets")) {
    const json& kets = j["kets"];
    if (!kets.is_array() || kets.empty()) invalid("kets must be a non-empty list");
    const int dim = static_cast<int>(kets[0].size());
    std::vector<double> flat;
    for (const auto& k : kets) {
      if (!k.is_array() || static_cast<int>(k.size()) != dim) invalid("kets must share one dimension");
      for (const auto& x : k) {
        const auto z = read_complex(x);
        flat.push_back(z.real());
        flat.push_back(z.imag());
      }
    }
    if (static_cast<int>(kets.size()) != dim * dim) invalid("a SIC needs d^2 kets");
    check(mp_frame_build_sic_from_kets(dim, flat.data(), g.tol, &f));
  } else if (j.contains("tensor")) {
    const json& parts = j["tensor"];
    if (!parts.is_array() || parts.size() < 1) invalid("tensor needs a list of frames");
    Frame acc;
    for (const auto& part : parts) {
      Frame next = frame_from_object(part.is_string() ? json(part) : part);
      if (!acc) {
        acc = std::move(next);
        continue;
      }
      mp_frame* t = nullptr;
      check(mp_frame_tensor(acc.get(), next.get(), &t));
      acc.reset(t);
    }
    return acc;
  } else if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "sic" || s == "sic2") return sic_qubit();
    return frame_from_object(load_json(s));
  } else {
    invalid("frame needs effects, kets, tensor, \"sic\" or a file path");
  }
  return Frame(f);
}

// A frame entry of an input document; relative paths resolve against the
// document's directory. Missing entries mean the qubit SIC.
Frame resolve_frame(const json& doc, const std::string& key, const std::string& doc_path) {
  if (!doc.contains(key)) return sic_qubit();
  const json& v = doc[key];
  if (v.is_string() && v != "sic" && v != "sic2") {
    fs::path p(v.get<std::string>());
    if (p.is_relative() && !fs::exists(p)) p = fs::path(doc_path).parent_path() / p;
    return frame_from_object(load_json(p.string()));
  }
  return frame_from_object(v);
}

std::vector<double> frame_effects(const mp_frame* f) {
  std::vector<double> e(static_cast<size_t>(mp_frame_size(f)) * mp_frame_dim(f) * mp_frame_dim(f) * 2);
  check(mp_frame_effects(f, e.data()));
  return e;
}

json frame_json(const mp_frame* f, bool full) {
  const int dim = mp_frame_dim(f), n = mp_frame_size(f);
  const auto e = frame_effects(f);
  json effects = json::array();
  for (int k = 0; k < n; ++k) effects.push_back(cmatrix_json(e.data() + 2 * k * dim * dim, dim));
  json j = {{"dim", dim}, {"effects", effects}};
  if (!full) return j;
  std::vector<double> d(e.size()), gram(n * n), ginv(n * n);
  double cond = 0.0;
  check(mp_frame_duals(f, d.data()));
  check(mp_frame_gram(f, gram.data()));
  check(mp_frame_gram_inverse(f, ginv.data()));
  check(mp_frame_gram_condition(f, &cond));
  json duals = json::array();
  for (int k = 0; k < n; ++k) duals.push_back(cmatrix_json(d.data() + 2 * k * dim * dim, dim));
  j["duals"] = duals;
  j["gram"] = rmatrix_json(gram.data(), n, n);
  j["gram_inverse"] = rmatrix_json(ginv.data(), n, n);
  j["gram_condition"] = cond;
  return j;
}

// ---- commands ----

void frame_build_sic(int dim, const std::string& kets_path) {
  Frame f;
  if (!kets_path.empty()) {
    f = frame_from_object(json{{"kets", load_json(kets_path)}});
  } else if (dim == 2) {
    f = sic_qubit();
  } else {
    invalid("only the qubit SIC is built in; pass --kets for dimension " + std::to_string(dim));
  }
  emit(frame_json(f.get(), true));
}

void frame_validate(const std::string& path) {
  json j = load_json(path);
  json report;
  try {
    Frame f = frame_from_object(j.contains("frame") ? j["frame"] : j);
    double c, d, t, cond;
    check(mp_frame_residuals(f.get(), &c, &d, &t));
    check(mp_frame_gram_condition(f.get(), &cond));
    report = {{"valid", true},
              {"dim", mp_frame_dim(f.get())},
              {"size", mp_frame_size(f.get())},
              {"completeness_residual", c},
              {"duality_residual", d},
              {"dual_trace_residual", t},
              {"gram_condition", cond}};
  } catch (const CliError& e) {
    if (e.code != kExitValidation) throw;
    report = {{"valid", false}, {"reason", e.message}};
  }
  emit(report);
}

void frame_tensor(const std::string& a, const std::string& b) {
  Frame fa = frame_from_object(json(a)), fb = frame_from_object(json(b));
  mp_frame* t = nullptr;
  check(mp_frame_tensor(fa.get(), fb.get(), &t));
  Frame ft(t);
  emit(frame_json(ft.get(), false));
}

std::vector<double> state_p(const json& doc, const mp_frame* f) {
  if (doc.contains("p")) return read_vector(doc["p"], mp_frame_size(f));
  if (doc.contains("rho")) {
    int dim = mp_frame_dim(f);
    const auto rho = read_cmatrix(doc["rho"], dim);
    std::vector<double> p(mp_frame_size(f));
    check(mp_state_to_prob(f, rho.data(), p.data()));
    return p;
  }
  invalid("state needs \"p\" or \"rho\"");
}

void state_to_prob(const std::string& path) {
  const json doc = load_json(path);
  Frame f = resolve_frame(doc, "frame", path);
  if (!doc.contains("rho")) invalid("state to-prob needs \"rho\"");
  emit(json{{"p", state_p(doc, f.get())}});
}

void state_from_prob(const std::string& path) {
  const json doc = load_json(path);
  Frame f = resolve_frame(doc, "frame", path);
  const int dim = mp_frame_dim(f.get());
  const auto p = read_vector(doc.value("p", json()), mp_frame_size(f.get()));
  std::vector<double> rho(2 * dim * dim);
  check(mp_state_from_prob(f.get(), p.data(), rho.data()));
  emit(json{{"rho", cmatrix_json(rho.data(), dim)}});
}

void state_check(const std::string& path) {
  const json doc = load_json(path);
  Frame f = resolve_frame(doc, "frame", path);
  const auto p = state_p(doc, f.get());
  mp_verdict v;
  check(mp_state_check(f.get(), p.data(), g.tol, &v));
  emit(verdict_json(v));
}

void state_purity(const std::string& path) {
  const json doc = load_json(path);
  Frame f = resolve_frame(doc, "frame", path);
  const auto p = state_p(doc, f.get());
  double purity = 0.0;
  int pure = 0;
  check(mp_state_purity(f.get(), p.data(), g.tol, &purity, &pure));
  emit(json{{"purity", purity}, {"is_pure", static_cast<bool>(pure)}});
}

struct Channel {
  Frame in, out;
  std::vector<double> s;
};

Channel load_channel(const std::string& path) {
  const json doc = load_json(path);
  Channel c{resolve_frame(doc, "in_frame", path), resolve_frame(doc, "out_frame", path), {}};
  const int nin = mp_frame_size(c.in.get()), nout = mp_frame_size(c.out.get());
  c.s.resize(static_cast<size_t>(nin) * nout);
  if (doc.contains("kraus")) {
    const json& ops = doc["kraus"];
    if (!ops.is_array() || ops.empty()) invalid("kraus must be a non-empty list");
    const int din = mp_frame_dim(c.in.get()), dout = mp_frame_dim(c.out.get());
    std::vector<double> flat;
    for (const auto& op : ops) {
      if (!op.is_array() || static_cast<int>(op.size()) != dout) invalid("Kraus operators must have d_out rows");
      for (const auto& row : op) {
        if (!row.is_array() || static_cast<int>(row.size()) != din) invalid("Kraus operators must have d_in columns");
        for (const auto& x : row) {
          const auto z = read_complex(x);
          flat.push_back(z.real());
          flat.push_back(z.imag());
        }
      }
    }
    check(mp_channel_kraus_to_pstoch(c.in.get(), c.out.get(), static_cast<int>(ops.size()), flat.data(), g.tol, c.s.data()));
  } else if (doc.contains("pstoch")) {
    c.s = read_rmatrix(doc["pstoch"], nout, nin);
  } else {
    invalid("channel needs \"kraus\" or \"pstoch\"");
  }
  return c;
}

void channel_to_pstoch(const std::string& path) {
  const Channel c = load_channel(path);
  emit(json{{"pstoch", rmatrix_json(c.s.data(), mp_frame_size(c.out.get()), mp_frame_size(c.in.get()))}});
}

void channel_apply(const std::string& channel_path, const std::string& state_path) {
  const Channel c = load_channel(channel_path);
  const json doc = load_json(state_path);
  const auto p = state_p(doc, c.in.get());
  std::vector<double> q(mp_frame_size(c.out.get()));
  check(mp_channel_apply(c.in.get(), c.out.get(), c.s.data(), p.data(), q.data()));
  emit(json{{"p", q}});
}

void channel_check(const std::string& path) {
  const Channel c = load_channel(path);
  mp_verdict v;
  check(mp_channel_check(c.in.get(), c.out.get(), c.s.data(), g.tol, &v));
  json j = verdict_json(v);
  j["verdict"] = v.is_physical ? "completely positive" : "not completely positive";
  emit(j);
}

void channel_choi(const std::string& path) {
  const Channel c = load_channel(path);
  std::vector<double> choi(c.s.size());
  check(mp_channel_choi(c.in.get(), c.out.get(), c.s.data(), choi.data()));
  emit(json{{"choi", choi}});
}

struct Measurement {
  Frame frame;
  int rows = 0;
  std::vector<double> matrix;
  json labels;
};

Measurement load_measurement(const std::string& path) {
  const json doc = load_json(path);
  Measurement m{resolve_frame(doc, "frame", path), 0, {}, doc.value("labels", json())};
  const int n = mp_frame_size(m.frame.get());
  if (doc.contains("effects")) {
    int dim = mp_frame_dim(m.frame.get());
    const auto e = read_cmatrices(doc["effects"], dim);
    m.rows = static_cast<int>(doc["effects"].size());
    m.matrix.resize(static_cast<size_t>(m.rows) * n);
    check(mp_measure_povm_to_map(m.frame.get(), m.rows, e.data(), g.tol, m.matrix.data()));
  } else if (doc.contains("pstoch_rows")) {
    m.rows = count_rows(doc["pstoch_rows"]);
    m.matrix = read_rmatrix(doc["pstoch_rows"], m.rows, n);
  } else {
    invalid("measurement needs \"effects\" or \"pstoch_rows\"");
  }
  if (m.labels.is_null()) {
    m.labels = json::array();
    for (int i = 0; i < m.rows; ++i) m.labels.push_back(std::to_string(i));
  }
  return m;
}

void measure_probs(const std::string& mpath, const std::string& spath) {
  const Measurement m = load_measurement(mpath);
  const auto p = state_p(load_json(spath), m.frame.get());
  std::vector<double> q(m.rows);
  check(mp_measure_probs(m.frame.get(), m.rows, m.matrix.data(), p.data(), q.data()));
  emit(json{{"labels", m.labels}, {"probs", q}});
}

void measure_check(const std::string& path) {
  const Measurement m = load_measurement(path);
  int valid = 0;
  std::vector<int> rows(m.rows);
  check(mp_measure_check(m.frame.get(), m.rows, m.matrix.data(), g.tol, &valid, rows.data()));
  json per = json::array();
  for (int r : rows) per.push_back(static_cast<bool>(r));
  emit(json{{"verdict", valid ? "valid" : "invalid"}, {"valid", static_cast<bool>(valid)}, {"rows", per}});
}

void measure_mean(const std::string& opath, const std::string& spath) {
  const json doc = load_json(opath);
  Frame f = resolve_frame(doc, "frame", opath);
  int dim = mp_frame_dim(f.get());
  if (!doc.contains("observable")) invalid("observable file needs \"observable\"");
  const auto o = read_cmatrix(doc["observable"], dim);
  const auto p = state_p(load_json(spath), f.get());
  double mean = 0.0;
  check(mp_measure_mean(f.get(), o.data(), p.data(), g.tol, &mean));
  emit(json{{"mean", mean}});
}

// Generator from a model document ({hamiltonian, noise_ops}) or an explicit
// {generator} matrix.
std::vector<double> load_generator(const json& doc, const mp_frame* f) {
  const int n = mp_frame_size(f);
  if (doc.contains("generator")) return read_rmatrix(doc["generator"], n, n);
  int dim = mp_frame_dim(f);
  std::vector<double> h(2 * dim * dim, 0.0);
  if (doc.contains("hamiltonian")) h = read_cmatrix(doc["hamiltonian"], dim);
  std::vector<double> ops;
  int count = 0;
  if (doc.contains("noise_ops") && !doc["noise_ops"].empty()) {
    ops = read_cmatrices(doc["noise_ops"], dim);
    count = static_cast<int>(doc["noise_ops"].size());
  }
  std::vector<double> l(static_cast<size_t>(n) * n);
  check(mp_dyn_generator(f, h.data(), count, ops.empty() ? nullptr : ops.data(), g.tol, l.data()));
  return l;
}

void dyn_generator(const std::string& path) {
  const json doc = load_json(path);
  Frame f = resolve_frame(doc, "frame", path);
  const int n = mp_frame_size(f.get());
  const auto l = load_generator(doc, f.get());
  emit(json{{"generator", rmatrix_json(l.data(), n, n)}});
}

void dyn_evolve(const std::string& path, const std::string& state_path, double t) {
  const json doc = load_json(path);
  Frame f = resolve_frame(doc, "frame", path);
  const auto l = load_generator(doc, f.get());
  const auto p0 = state_p(load_json(state_path), f.get());
  std::vector<double> p(p0.size());
  check(mp_dyn_evolve(f.get(), l.data(), p0.data(), t, p.data()));
  emit(json{{"t", t}, {"p", p}});
}

void dyn_check(const std::string& path, const std::string& form) {
  const json doc = load_json(path);
  Frame f = resolve_frame(doc, "frame", path);
  const auto l = load_generator(doc, f.get());
  int valid = 0;
  mp_verdict v;
  check(mp_dyn_check_generator(f.get(), l.data(), form == "dissipator" ? 1 : 0, g.tol, &valid, &v));
  json j = verdict_json(v);
  j["verdict"] = valid ? "valid generator" : "not a valid generator";
  j["valid"] = static_cast<bool>(valid);
  emit(j);
}

void dyn_project(const std::string& path) {
  const json doc = load_json(path);
  Frame f = resolve_frame(doc, "frame", path);
  const int n = mp_frame_size(f.get());
  const auto m = doc.contains("matrix") ? read_rmatrix(doc["matrix"], n, n) : load_generator(doc, f.get());
  std::vector<double> out(m.size());
  check(mp_dyn_project_unitary(f.get(), m.data(), out.data()));
  emit(json{{"projection", rmatrix_json(out.data(), n, n)}});
}

void dyn_table(double x) {
  json rows = json::array();
  for (int i = 0; i < mp_dyn_table_count(); ++i) {
    double m[16];
    check(mp_dyn_table_matrix(i, x, m));
    rows.push_back({{"channel", mp_dyn_table_name(i)}, {"x", x}, {"pstoch", rmatrix_json(m, 4, 4)}});
  }
  emit(rows);
}

struct OptFlags {
  int restarts = -1;
  int iterations = -1;
  double tau_tol = -1.0;
};

mp_optimizer_config optimizer(const OptFlags& o) {
  mp_optimizer_config cfg;
  mp_optimizer_config_default(&cfg);
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  if (o.restarts >= 0) cfg.restarts = o.restarts;
  if (o.iterations >= 0) cfg.iterations = o.iterations;
  if (o.tau_tol > 0.0) cfg.tau_tol = o.tau_tol;
  return cfg;
}

void tau_crit_cmd(const std::string& kind, double theta, const std::string& family, const OptFlags& o) {
  const mp_optimizer_config cfg = optimizer(o);
  double tau = 0.0;
  int empty = 0;
  long evals = 0;
  check(mp_tau_crit(kind.c_str(), theta, family.c_str(), &cfg, &tau, &empty, &evals));
  emit(json{{"kind", kind}, {"theta", theta}, {"family", family}, {"seed", g.seed},
            {"tau_crit", tau}, {"empty", static_cast<bool>(empty)}, {"evaluations", evals}});
}

void min_negativity_cmd(const std::string& kind, double theta, double tau, const std::string& family,
                        const OptFlags& o) {
  const mp_optimizer_config cfg = optimizer(o);
  double n = 0.0;
  long evals = 0;
  check(mp_min_negativity(kind.c_str(), theta, tau, family.c_str(), &cfg, &n, &evals));
  emit(json{{"kind", kind}, {"theta", theta}, {"tau", tau}, {"family", family}, {"seed", g.seed},
            {"negativity", n}, {"evaluations", evals}});
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw CliError{kExitUsage, "--theta-grid expects start:stop:count"};
  double a, b;
  int n;
  try {
    a = std::stod(parts[0]);
    b = std::stod(parts[1]);
    n = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw CliError{kExitUsage, "--theta-grid expects start:stop:count"};
  }
  if (n < 1) throw CliError{kExitUsage, "--theta-grid needs at least one point"};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

void scan_cmd(const std::string& kind, const std::string& grid, const std::string& family, const OptFlags& o) {
  const mp_optimizer_config cfg = optimizer(o);
  const auto thetas = parse_grid(grid);
  char* csv = nullptr;
  check(mp_scan_csv(kind.c_str(), thetas.data(), static_cast<int>(thetas.size()), family.c_str(), &cfg, &csv));
  const std::string text(csv);
  mp_string_free(csv);
  emit(text);
}

struct CircuitDeleter {
  void operator()(mp_circuit* c) const { mp_circuit_free(c); }
};
struct RunDeleter {
  void operator()(mp_run* r) const { mp_run_free(r); }
};

std::unique_ptr<mp_circuit, CircuitDeleter> load_circuit(const std::string& path) {
  const json doc = load_json(path);
  mp_circuit* raw = nullptr;
  if (!doc.contains("n") || !doc["n"].is_number_integer()) invalid("circuit needs an integer \"n\"");
  check(mp_circuit_new(doc["n"].get<int>(), &raw));
  std::unique_ptr<mp_circuit, CircuitDeleter> c(raw);
  for (const auto& op : doc.value("ops", json::array())) {
    if (op.contains("measure")) {
      const auto t = op["measure"].get<std::vector<int>>();
      check(mp_circuit_add_measure(c.get(), static_cast<int>(t.size()), t.data()));
    } else if (op.contains("gate") || op.contains("unitary")) {
      if (!op.contains("targets")) invalid("gate needs \"targets\"");
      const auto t = op["targets"].get<std::vector<int>>();
      if (op.contains("unitary")) {
        int dim = 0;
        const auto u = read_cmatrix(op["unitary"], dim);
        if (dim != (t.size() == 1 ? 2 : 4)) invalid("unitary size does not match its targets");
        check(mp_circuit_add_unitary(c.get(), static_cast<int>(t.size()), t.data(), u.data()));
      } else {
        check(mp_circuit_add_gate(c.get(), op["gate"].get<std::string>().c_str(), static_cast<int>(t.size()), t.data()));
      }
    } else {
      invalid("each op needs \"gate\", \"unitary\" or \"measure\"");
    }
  }
  return c;
}

std::string bits(long index, int width) {
  std::string s(width, '0');
  for (int i = 0; i < width; ++i)
    if ((index >> (width - 1 - i)) & 1) s[i] = '1';
  return s;
}

void circuit_run(const std::string& path, long shots, const std::string& trace_path) {
  auto c = load_circuit(path);
  mp_run* raw = nullptr;
  check(mp_circuit_run(c.get(), trace_path.empty() ? 0 : 1, &raw));
  std::unique_ptr<mp_run, RunDeleter> r(raw);
  const int m = mp_run_num_measured(r.get());
  std::vector<int> qubits(m);
  check(mp_run_measured(r.get(), qubits.data()));
  std::vector<double> probs(1L << m);
  check(mp_run_probs(r.get(), probs.data()));
  json pj = json::object();
  for (size_t i = 0; i < probs.size(); ++i) pj[bits(static_cast<long>(i), m)] = probs[i];
  json out = {{"measured", qubits}, {"probabilities", pj}};
  if (shots > 0) {
    std::vector<long> counts(probs.size());
    check(mp_run_sample(r.get(), shots, g.seed, counts.data()));
    json cj = json::object();
    for (size_t i = 0; i < counts.size(); ++i) cj[bits(static_cast<long>(i), m)] = counts[i];
    out["shots"] = shots;
    out["seed"] = g.seed;
    out["counts"] = cj;
  }
  if (!trace_path.empty()) {
    std::ofstream f(trace_path, std::ios::binary);
    if (!f) invalid("cannot write " + trace_path);
    const long size = mp_run_register_size(r.get());
    f << "step";
    for (long k = 0; k < size; ++k) f << ",p" << k;
    f << '\n';
    std::vector<double> p(size);
    for (int s = 0; s < mp_run_trace_steps(r.get()); ++s) {
      check(mp_run_trace_step(r.get(), s, p.data()));
      f << s + 1;
      for (double v : p) f << ',' << format17(v);
      f << '\n';
    }
  }
  emit(out);
}

void gate_table(const std::string& name) {
  int size = 0;
  check(mp_gate_table(name.c_str(), &size, nullptr));
  std::vector<double> m(static_cast<size_t>(size) * size);
  check(mp_gate_table(name.c_str(), &size, m.data()));
  std::string text;
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) text += (c ? "," : "") + format17(m[r * size + c]);
    text += '\n';
  }
  emit(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability-space quantum mechanics over MIC-POVM frames"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", g.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--threads", g.threads, "Thread budget")->check(CLI::Range(1, 1024));
  app.add_option("--out", g.out, "Output file (default: stdout)");

  std::string a, b;
  int dim = 2;
  std::string kets;
  double t = 0.0, x = 1.0, theta = 0.0, tau = 1.0;
  long shots = 0;
  std::string trace, form = "full", kind, family = "sic", grid, gate;
  OptFlags opt;
  std::function<void()> action;

  auto* frame = app.add_subcommand("frame", "Frame construction and checks")->require_subcommand(1);
  auto* fb = frame->add_subcommand("build-sic", "Build a SIC-POVM frame");
  fb->add_option("--dim", dim, "Hilbert-space dimension");
  fb->add_option("--kets", kets, "JSON list of d^2 fiducial kets");
  fb->callback([&] { action = [&] { frame_build_sic(dim, kets); }; });
  auto* fv = frame->add_subcommand("validate", "Validate a frame file");
  fv->add_option("file", a)->required();
  fv->callback([&] { action = [&] { frame_validate(a); }; });
  auto* ft = frame->add_subcommand("tensor", "Product of two frames");
  ft->add_option("a", a)->required();
  ft->add_option("b", b)->required();
  ft->callback([&] { action = [&] { frame_tensor(a, b); }; });

  auto* state = app.add_subcommand("state", "States as probability vectors")->require_subcommand(1);
  for (auto [name, fn] : std::vector<std::pair<std::string, void (*)(const std::string&)>>{
           {"to-prob", state_to_prob}, {"from-prob", state_from_prob}, {"check", state_check}, {"purity", state_purity}}) {
    auto* sc = state->add_subcommand(name);
    sc->add_option("file", a)->required();
    sc->callback([&, fn] { action = [&, fn] { fn(a); }; });
  }

  auto* channel = app.add_subcommand("channel", "Channels as pseudostochastic maps")->require_subcommand(1);
  for (auto [name, fn] : std::vector<std::pair<std::string, void (*)(const std::string&)>>{
           {"to-pstoch", channel_to_pstoch}, {"check", channel_check}, {"choi", channel_choi}}) {
    auto* sc = channel->add_subcommand(name);
    sc->add_option("file", a)->required();
    sc->callback([&, fn] { action = [&, fn] { fn(a); }; });
  }
  auto* ca = channel->add_subcommand("apply", "Apply a channel to a state");
  ca->add_option("channel", a)->required();
  ca->add_option("state", b)->required();
  ca->callback([&] { action = [&] { channel_apply(a, b); }; });

  auto* measure = app.add_subcommand("measure", "Measurements and observables")->require_subcommand(1);
  auto* mpb = measure->add_subcommand("probs", "Outcome probabilities");
  mpb->add_option("measurement", a)->required();
  mpb->add_option("state", b)->required();
  mpb->callback([&] { action = [&] { measure_probs(a, b); }; });
  auto* mc = measure->add_subcommand("check", "Validity of a measurement matrix");
  mc->add_option("measurement", a)->required();
  mc->callback([&] { action = [&] { measure_check(a); }; });
  auto* mm = measure->add_subcommand("mean", "Mean of an observable");
  mm->add_option("observable", a)->required();
  mm->add_option("state", b)->required();
  mm->callback([&] { action = [&] { measure_mean(a, b); }; });

  auto* dyn = app.add_subcommand("dyn", "Generators and time evolution")->require_subcommand(1);
  auto* dg = dyn->add_subcommand("generator", "Generator matrix of a model");
  dg->add_option("model", a)->required();
  dg->callback([&] { action = [&] { dyn_generator(a); }; });
  auto* de = dyn->add_subcommand("evolve", "Evolve a state");
  de->add_option("model", a)->required();
  de->add_option("state", b)->required();
  de->add_option("--t", t, "Time")->required();
  de->callback([&] { action = [&] { dyn_evolve(a, b, t); }; });
  auto* dc = dyn->add_subcommand("check-generator", "GKSL validity of a generator");
  dc->add_option("model", a)->required();
  dc->add_option("--form", form, "full | dissipator")->check(CLI::IsMember({"full", "dissipator"}));
  dc->callback([&] { action = [&] { dyn_check(a, form); }; });
  auto* dp = dyn->add_subcommand("project-unitary", "Hamiltonian part of a matrix");
  dp->add_option("file", a)->required();
  dp->callback([&] { action = [&] { dyn_project(a); }; });
  auto* dt = dyn->add_subcommand("table", "Reference qubit channel matrices");
  dt->add_option("--x", x, "t / tau (or omega t)");
  dt->callback([&] { action = [&] { dyn_table(x); }; });

  auto* cls = app.add_subcommand("classicality", "Negativity and critical times")->require_subcommand(1);
  auto add_opt_flags = [&](CLI::App* sc) {
    sc->add_option("--kind", kind, "depol | deph | damp")->required()->check(CLI::IsMember({"depol", "deph", "damp"}));
    sc->add_option("--family", family, "sic | pmic | mic")->check(CLI::IsMember({"sic", "pmic", "mic"}));
    sc->add_option("--restarts", opt.restarts, "Optimizer restarts");
    sc->add_option("--iterations", opt.iterations, "Iterations per restart");
    sc->add_option("--tau-tol", opt.tau_tol, "Bisection width");
  };
  auto* mn = cls->add_subcommand("min-negativity", "Minimal negativity over a POVM family");
  add_opt_flags(mn);
  mn->add_option("--theta", theta, "Polar angle of the field");
  mn->add_option("--tau", tau, "Decoherence time")->required();
  mn->callback([&] { action = [&] { min_negativity_cmd(kind, theta, tau, family, opt); }; });
  auto* tc = cls->add_subcommand("tau-crit", "Critical decoherence time at one angle");
  add_opt_flags(tc);
  tc->add_option("--theta", theta, "Polar angle of the field");
  tc->callback([&] { action = [&] { tau_crit_cmd(kind, theta, family, opt); }; });
  auto* sc = cls->add_subcommand("scan", "Critical time over an angle grid (CSV)");
  add_opt_flags(sc);
  sc->add_option("--theta-grid", grid, "start:stop:count")->required();
  sc->callback([&] { action = [&] { scan_cmd(kind, grid, family, opt); }; });

  auto* circ = app.add_subcommand("circuit", "Qubit circuits in probability space")->require_subcommand(1);
  auto* cr = circ->add_subcommand("run", "Run a circuit program");
  cr->add_option("program", a)->required();
  cr->add_option("--shots", shots, "Sampled shots");
  cr->add_option("--emit-trace", trace, "CSV of the register after each gate");
  cr->callback([&] { action = [&] { circuit_run(a, shots, trace); }; });
  auto* gt = circ->add_subcommand("gate-table", "Pseudostochastic map of a gate (CSV)");
  gt->add_option("--gate", gate, "h x t s cz cx swap iswap")->required();
  gt->callback([&] { action = [&] { gate_table(gate); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  try {
    action();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return 0;
}
