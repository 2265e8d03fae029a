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


#include <cstring>
#include <string>

#include "micprob/channels.hpp"
#include "micprob/circuits.hpp"
#include "micprob/classicality.hpp"
#include "micprob/dynamics.hpp"
#include "micprob/linalg.hpp"
#include "micprob/measurements.hpp"
#include "micprob/micprob.h"

struct mp_frame {
  micprob::FramePtr ptr;
};

struct mp_circuit {
  micprob::CircuitProgram program;
};

struct mp_run {
  micprob::RunResult result;
};

namespace {

using namespace micprob;

thread_local std::string g_last_error;

static_assert(static_cast<int>(ErrorCode::kDimensionMismatch) == MP_ERR_DIMENSION_MISMATCH);
static_assert(static_cast<int>(ErrorCode::kTargetOutOfRange) == MP_ERR_TARGET_OUT_OF_RANGE);
static_assert(static_cast<int>(ErrorCode::kInternal) == MP_ERR_INTERNAL);

mp_status to_status(ErrorCode code) { return static_cast<mp_status>(static_cast<int>(code)); }

mp_status set_error(mp_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Null pointers are a C-level failure with no core error code.
struct NullArgument {
  std::string what;
};

template <class F>
mp_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return MP_OK;
  } catch (const NullArgument& e) {
    return set_error(MP_ERR_NULL_ARGUMENT, e.what);
  } catch (const Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::exception& e) {
    return set_error(MP_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(MP_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw NullArgument{std::string("null argument: ") + what};
}

CMatrix read_complex(const double* data, int rows, int cols) {
  return linalg::complex_from_interleaved(std::span<const double>(data, static_cast<std::size_t>(rows) * cols * 2),
                                          rows, cols);
}

void write_complex(const CMatrix& m, double* out) {
  linalg::complex_to_interleaved(m, std::span<double>(out, static_cast<std::size_t>(m.size()) * 2));
}

std::vector<CMatrix> read_complex_list(const double* data, int count, int rows, int cols) {
  std::vector<CMatrix> out;
  const std::size_t stride = static_cast<std::size_t>(rows) * cols * 2;
  for (int i = 0; i < count; ++i) out.push_back(read_complex(data + i * stride, rows, cols));
  return out;
}

RMatrix read_real(const double* data, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(data, rows, cols);
}

void write_real(const RMatrix& m, double* out) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(out, m.rows(), m.cols()) = m;
}

RVector read_vec(const double* data, Eigen::Index n) { return Eigen::Map<const RVector>(data, n); }

void write_vec(const RVector& v, double* out) { Eigen::Map<RVector>(out, v.size()) = v; }

void fill_verdict(const PhysicalityVerdict& v, int degree, mp_verdict* out) {
  std::memset(out, 0, sizeof(*out));
  out->is_physical = v.is_physical ? 1 : 0;
  out->boundary = v.boundary ? 1 : 0;
  out->degree = degree;
  out->effective_degree = v.effective_degree;
  for (std::size_t i = 0; i < v.poly_coeffs.size() && i <= MP_MAX_DEGREE; ++i) out->poly_coeffs[i] = v.poly_coeffs[i];
  for (std::size_t i = 0; i < v.minors.size() && i < MP_MAX_DEGREE; ++i) out->minors[i] = v.minors[i];
  if (v.failure_reason) g_last_error = *v.failure_reason;
}

const FramePtr& frame_of(const mp_frame* f) {
  need(f, "frame");
  return f->ptr;
}

OptimizerConfig to_config(const mp_optimizer_config* c) {
  OptimizerConfig cfg;
  if (c == nullptr) return cfg;
  cfg.restarts = c->restarts;
  cfg.iterations = c->iterations;
  cfg.convergence = c->convergence;
  cfg.tau_tol = c->tau_tol;
  cfg.zero_tol = c->zero_tol;
  cfg.tau_start = c->tau_start;
  cfg.tau_stop = c->tau_stop;
  cfg.tau_grid = c->tau_grid;
  cfg.tau_limit = c->tau_limit;
  cfg.seed = c->seed;
  cfg.threads = c->threads;
  return cfg;
}

mp_frame* wrap(FramePtr f) { return new mp_frame{std::move(f)}; }

}  // namespace

extern "C" {

const char* mp_status_name(mp_status status) {
  switch (status) {
    case MP_OK: return "Ok";
    case MP_ERR_NULL_ARGUMENT: return "NullArgument";
    default:
      if (status > 0 && status <= MP_ERR_INTERNAL) return error_name(static_cast<ErrorCode>(status));
      return "Unknown";
  }
}

int mp_status_is_validation(mp_status status) {
  switch (status) {
    case MP_OK:
    case MP_ERR_BRACKET_NOT_FOUND:
    case MP_ERR_INFEASIBLE_PARAMETERS:
    case MP_ERR_INTERNAL: return 0;
    default: return 1;
  }
}

const char* mp_last_error(void) { return g_last_error.c_str(); }

mp_status mp_frame_build_sic_qubit(mp_frame** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(build_sic_qubit());
  });
}

mp_status mp_frame_build_sic_from_kets(int dim, const double* kets, double tol, mp_frame** out) {
  return guarded([&] {
    need(kets, "kets");
    need(out, "out");
    if (dim < 1) fail(ErrorCode::kInvalidArgument, "dimension must be positive");
    std::vector<CVector> v;
    for (int k = 0; k < dim * dim; ++k) v.push_back(read_complex(kets + k * dim * 2, dim, 1).col(0));
    *out = wrap(build_sic_from_fiducials(v, tol));
  });
}

mp_status mp_frame_from_effects(int dim, int count, const double* effects, double tol, mp_frame** out) {
  return guarded([&] {
    need(effects, "effects");
    need(out, "out");
    if (dim < 1 || count < 1) fail(ErrorCode::kInvalidArgument, "dimension and count must be positive");
    *out = wrap(build_mic_from_effects(read_complex_list(effects, count, dim, dim), tol));
  });
}

mp_status mp_frame_tensor(const mp_frame* a, const mp_frame* b, mp_frame** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(tensor(frame_of(a), frame_of(b)));
  });
}

void mp_frame_free(mp_frame* frame) { delete frame; }

int mp_frame_dim(const mp_frame* frame) { return frame ? frame->ptr->dim() : 0; }
int mp_frame_size(const mp_frame* frame) { return frame ? frame->ptr->size() : 0; }

mp_status mp_frame_effects(const mp_frame* frame, double* out) {
  return guarded([&] {
    need(out, "out");
    const auto& f = frame_of(frame);
    const std::size_t stride = static_cast<std::size_t>(f->dim()) * f->dim() * 2;
    for (int k = 0; k < f->size(); ++k) write_complex(f->effect(k), out + k * stride);
  });
}

mp_status mp_frame_duals(const mp_frame* frame, double* out) {
  return guarded([&] {
    need(out, "out");
    const auto& f = frame_of(frame);
    const std::size_t stride = static_cast<std::size_t>(f->dim()) * f->dim() * 2;
    for (int k = 0; k < f->size(); ++k) write_complex(f->dual(k), out + k * stride);
  });
}

mp_status mp_frame_gram(const mp_frame* frame, double* out) {
  return guarded([&] {
    need(out, "out");
    write_real(frame_of(frame)->gram(), out);
  });
}

mp_status mp_frame_gram_inverse(const mp_frame* frame, double* out) {
  return guarded([&] {
    need(out, "out");
    write_real(frame_of(frame)->gram_inverse(), out);
  });
}

mp_status mp_frame_gram_condition(const mp_frame* frame, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = frame_of(frame)->gram_condition();
  });
}

mp_status mp_frame_residuals(const mp_frame* frame, double* completeness, double* duality, double* dual_trace) {
  return guarded([&] {
    need(completeness, "completeness");
    need(duality, "duality");
    need(dual_trace, "dual_trace");
    const auto& f = frame_of(frame);
    CMatrix total = CMatrix::Zero(f->dim(), f->dim());
    double dual_err = 0.0;
    double trace_err = 0.0;
    for (int k = 0; k < f->size(); ++k) {
      total += f->effect(k);
      trace_err = std::max(trace_err, std::abs(f->dual(k).trace() - 1.0));
      for (int l = 0; l < f->size(); ++l) {
        dual_err = std::max(dual_err, std::abs(linalg::trace_product(f->effect(l), f->dual(k)) - (l == k ? 1.0 : 0.0)));
      }
    }
    *completeness = linalg::max_abs(total - CMatrix::Identity(f->dim(), f->dim()));
    *duality = dual_err;
    *dual_trace = trace_err;
  });
}

mp_status mp_frame_transition(const mp_frame* target, const mp_frame* source, double* out) {
  return guarded([&] {
    need(out, "out");
    write_real(transition_matrix(frame_of(target), frame_of(source)).matrix, out);
  });
}

mp_status mp_state_to_prob(const mp_frame* frame, const double* rho, double* p) {
  return guarded([&] {
    need(rho, "rho");
    need(p, "p");
    const auto& f = frame_of(frame);
    write_vec(to_prob(read_complex(rho, f->dim(), f->dim()), f).p, p);
  });
}

mp_status mp_state_from_prob(const mp_frame* frame, const double* p, double* rho) {
  return guarded([&] {
    need(p, "p");
    need(rho, "rho");
    const auto& f = frame_of(frame);
    write_complex(from_prob(ProbVector(f, read_vec(p, f->size()))), rho);
  });
}

mp_status mp_state_check(const mp_frame* frame, const double* p, double tol, mp_verdict* out) {
  return guarded([&] {
    need(p, "p");
    need(out, "out");
    const auto& f = frame_of(frame);
    if (f->dim() > MP_MAX_DEGREE) fail(ErrorCode::kInvalidArgument, "dimension exceeds MP_MAX_DEGREE");
    const PhysicalityVerdict v = is_physical(ProbVector(f, read_vec(p, f->size())), tol);
    fill_verdict(v, f->dim(), out);
  });
}

mp_status mp_state_purity(const mp_frame* frame, const double* p, double tol, double* purity, int* is_pure_out) {
  return guarded([&] {
    need(p, "p");
    need(purity, "purity");
    need(is_pure_out, "is_pure");
    const auto& f = frame_of(frame);
    const ProbVector v(f, read_vec(p, f->size()));
    *purity = hs_inner(v, v);
    *is_pure_out = is_pure(v, tol) ? 1 : 0;
  });
}

mp_status mp_channel_kraus_to_pstoch(const mp_frame* in, const mp_frame* out, int num_ops, const double* ops,
                                     double tol, double* s) {
  return guarded([&] {
    need(ops, "ops");
    need(s, "s");
    const auto& fi = frame_of(in);
    const auto& fo = frame_of(out);
    if (num_ops < 1) fail(ErrorCode::kInvalidArgument, "at least one Kraus operator is required");
    const KrausChannel k{read_complex_list(ops, num_ops, fo->dim(), fi->dim())};
    write_real(kraus_to_map(k, fi, fo, tol).matrix, s);
  });
}

mp_status mp_channel_apply(const mp_frame* in, const mp_frame* out, const double* s, const double* p, double* p_out) {
  return guarded([&] {
    need(s, "s");
    need(p, "p");
    need(p_out, "p_out");
    const auto& fi = frame_of(in);
    const auto& fo = frame_of(out);
    const PseudoStochasticMap m{fi, fo, read_real(s, fo->size(), fi->size())};
    write_vec(map_apply(m, ProbVector(fi, read_vec(p, fi->size()))).p, p_out);
  });
}

mp_status mp_channel_check(const mp_frame* in, const mp_frame* out, const double* s, double tol, mp_verdict* verdict) {
  return guarded([&] {
    need(s, "s");
    need(verdict, "verdict");
    const auto& fi = frame_of(in);
    const auto& fo = frame_of(out);
    if (fi->dim() * fo->dim() > MP_MAX_DEGREE) fail(ErrorCode::kInvalidArgument, "dimension exceeds MP_MAX_DEGREE");
    const PseudoStochasticMap m{fi, fo, read_real(s, fo->size(), fi->size())};
    fill_verdict(is_cptp(m, tol), fi->dim() * fo->dim(), verdict);
  });
}

mp_status mp_channel_choi(const mp_frame* in, const mp_frame* out, const double* s, double* choi) {
  return guarded([&] {
    need(s, "s");
    need(choi, "choi");
    const auto& fi = frame_of(in);
    const auto& fo = frame_of(out);
    const PseudoStochasticMap m{fi, fo, read_real(s, fo->size(), fi->size())};
    write_vec(choi_prob(m, max_entangled_prob(fi)).p, choi);
  });
}

mp_status mp_measure_povm_to_map(const mp_frame* frame, int m, const double* effects, double tol, double* matrix) {
  return guarded([&] {
    need(effects, "effects");
    need(matrix, "matrix");
    const auto& f = frame_of(frame);
    if (m < 1) fail(ErrorCode::kInvalidArgument, "at least one effect is required");
    write_real(povm_to_map(read_complex_list(effects, m, f->dim(), f->dim()), f, tol).matrix, matrix);
  });
}

mp_status mp_measure_probs(const mp_frame* frame, int m, const double* matrix, const double* p, double* q) {
  return guarded([&] {
    need(matrix, "matrix");
    need(p, "p");
    need(q, "q");
    const auto& f = frame_of(frame);
    const MeasurementMap mm{f, read_real(matrix, m, f->size()), {}};
    write_vec(outcome_probs(mm, ProbVector(f, read_vec(p, f->size()))), q);
  });
}

mp_status mp_measure_check(const mp_frame* frame, int m, const double* matrix, double tol, int* valid, int* row_valid) {
  return guarded([&] {
    need(matrix, "matrix");
    need(valid, "valid");
    need(row_valid, "row_valid");
    const auto& f = frame_of(frame);
    const MeasurementMap mm{f, read_real(matrix, m, f->size()), {}};
    const MeasurementVerdict v = is_valid_measurement(mm, tol);
    *valid = v.valid ? 1 : 0;
    for (int i = 0; i < m; ++i) row_valid[i] = v.rows[i].is_physical ? 1 : 0;
  });
}

mp_status mp_measure_mean(const mp_frame* frame, const double* observable, const double* p, double tol, double* mean) {
  return guarded([&] {
    need(observable, "observable");
    need(p, "p");
    need(mean, "mean");
    const auto& f = frame_of(frame);
    const Observable o = observable_from_operator(read_complex(observable, f->dim(), f->dim()), f, tol);
    *mean = observable_mean(o, ProbVector(f, read_vec(p, f->size())));
  });
}

mp_status mp_dyn_generator(const mp_frame* frame, const double* hamiltonian, int num_noise, const double* noise_ops,
                           double tol, double* l) {
  return guarded([&] {
    need(hamiltonian, "hamiltonian");
    need(l, "l");
    const auto& f = frame_of(frame);
    std::vector<CMatrix> ops;
    if (num_noise > 0) {
      need(noise_ops, "noise_ops");
      ops = read_complex_list(noise_ops, num_noise, f->dim(), f->dim());
    }
    write_real(gksl_generator(read_complex(hamiltonian, f->dim(), f->dim()), ops, f, tol).matrix, l);
  });
}

mp_status mp_dyn_evolve(const mp_frame* frame, const double* l, const double* p0, double t, double* p) {
  return guarded([&] {
    need(l, "l");
    need(p0, "p0");
    need(p, "p");
    const auto& f = frame_of(frame);
    const GeneratorMatrix g{f, read_real(l, f->size(), f->size()), GeneratorKind::kGksl};
    write_vec(evolve(g, ProbVector(f, read_vec(p0, f->size())), t).p, p);
  });
}

mp_status mp_dyn_check_generator(const mp_frame* frame, const double* l, int form, double tol, int* valid,
                                 mp_verdict* verdict) {
  return guarded([&] {
    need(l, "l");
    need(valid, "valid");
    const auto& f = frame_of(frame);
    const GeneratorMatrix g{f, read_real(l, f->size(), f->size()), GeneratorKind::kGksl};
    const GeneratorVerdict v =
        is_gksl_generator(g, form == 1 ? GeneratorCheckForm::kDissipatorOnly : GeneratorCheckForm::kFull, tol);
    *valid = v.valid ? 1 : 0;
    if (verdict != nullptr) fill_verdict(v.positivity, f->dim() * f->dim(), verdict);
  });
}

mp_status mp_dyn_project_unitary(const mp_frame* frame, const double* m, double* out) {
  return guarded([&] {
    need(m, "m");
    need(out, "out");
    const auto& f = frame_of(frame);
    write_real(project_unitary(read_real(m, f->size(), f->size()), f, gell_mann_basis(f->dim())).matrix, out);
  });
}

int mp_dyn_table_count(void) { return static_cast<int>(reference_channels().size()); }

const char* mp_dyn_table_name(int index) {
  if (index < 0 || index >= mp_dyn_table_count()) return nullptr;
  return reference_channel_name(reference_channels()[index]);
}

mp_status mp_dyn_table_matrix(int index, double x, double* out16) {
  return guarded([&] {
    need(out16, "out16");
    if (index < 0 || index >= mp_dyn_table_count()) fail(ErrorCode::kInvalidArgument, "table index out of range");
    const FramePtr f = circuit_frame();
    write_real(kraus_to_map(reference_kraus(reference_channels()[index], x), f, f).matrix, out16);
  });
}

void mp_optimizer_config_default(mp_optimizer_config* c) {
  if (c == nullptr) return;
  const OptimizerConfig d;
  c->restarts = d.restarts;
  c->iterations = d.iterations;
  c->convergence = d.convergence;
  c->tau_tol = d.tau_tol;
  c->zero_tol = d.zero_tol;
  c->tau_start = d.tau_start;
  c->tau_stop = d.tau_stop;
  c->tau_grid = d.tau_grid;
  c->tau_limit = d.tau_limit;
  c->seed = d.seed;
  c->threads = d.threads;
}

mp_status mp_min_negativity(const char* kind, double theta, double tau, const char* family,
                            const mp_optimizer_config* cfg, double* negativity_out, long* evaluations) {
  return guarded([&] {
    need(kind, "kind");
    need(family, "family");
    need(negativity_out, "negativity");
    const NegativityReport r =
        min_negativity({parse_decoherence(kind), theta, tau, 0.0}, make_family(parse_family(family)), to_config(cfg));
    *negativity_out = r.negativity;
    if (evaluations != nullptr) *evaluations = r.evaluations;
  });
}

mp_status mp_tau_crit(const char* kind, double theta, const char* family, const mp_optimizer_config* cfg,
                      double* tau_out, int* empty, long* evaluations) {
  return guarded([&] {
    need(kind, "kind");
    need(family, "family");
    need(tau_out, "tau_crit");
    const TauCritResult r = tau_crit(parse_decoherence(kind), theta, make_family(parse_family(family)), to_config(cfg));
    *tau_out = r.tau_crit;
    if (empty != nullptr) *empty = r.empty ? 1 : 0;
    if (evaluations != nullptr) *evaluations = r.evaluations;
  });
}

mp_status mp_scan_csv(const char* kind, const double* thetas, int count, const char* family,
                      const mp_optimizer_config* cfg, char** csv) {
  return guarded([&] {
    need(kind, "kind");
    need(family, "family");
    need(thetas, "thetas");
    need(csv, "csv");
    const OptimizerConfig c = to_config(cfg);
    const DecoherenceKind k = parse_decoherence(kind);
    const PovmFamily fam = make_family(parse_family(family));
    const auto rows = scan(k, std::vector<double>(thetas, thetas + count), fam, c);
    const std::string text = scan_to_csv(rows, k, fam, c.seed);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *csv = buf;
  });
}

void mp_string_free(char* s) { delete[] s; }

mp_status mp_circuit_new(int n, mp_circuit** out) {
  return guarded([&] {
    need(out, "out");
    if (n < 1 || n > kMaxQubits) fail(ErrorCode::kInvalidArgument, "qubit count out of range");
    *out = new mp_circuit{{n, {}}};
  });
}

mp_status mp_circuit_grover(const char* secret, mp_circuit** out) {
  return guarded([&] {
    need(secret, "secret");
    need(out, "out");
    *out = new mp_circuit{grover_program(secret)};
  });
}

void mp_circuit_free(mp_circuit* circuit) { delete circuit; }

int mp_circuit_qubits(const mp_circuit* circuit) { return circuit ? circuit->program.n : 0; }

namespace {

// Rejects bad targets when the instruction is added rather than at run time.
std::vector<int> checked_targets(const mp_circuit* circuit, int count, const int* targets, int expected) {
  if (count < 1 || (expected > 0 && count != expected)) {
    fail(ErrorCode::kTargetOutOfRange, "wrong number of targets");
  }
  std::vector<int> out(targets, targets + count);
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 0 || out[i] >= circuit->program.n) fail(ErrorCode::kTargetOutOfRange, "target qubit out of range");
    for (size_t j = 0; j < i; ++j)
      if (out[j] == out[i]) fail(ErrorCode::kTargetOutOfRange, "repeated target qubit");
  }
  return out;
}

}  // namespace

mp_status mp_circuit_add_gate(mp_circuit* circuit, const char* name, int num_targets, const int* targets) {
  return guarded([&] {
    need(circuit, "circuit");
    need(name, "name");
    need(targets, "targets");
    if (gate_unitaries().count(name) == 0) fail(ErrorCode::kInvalidArgument, std::string("unknown gate '") + name + "'");
    const int width = gate_unitaries().at(name).rows() == 2 ? 1 : 2;
    circuit->program.ops.push_back(
        {Instruction::Kind::kGate, name, {}, checked_targets(circuit, num_targets, targets, width)});
  });
}

mp_status mp_circuit_add_unitary(mp_circuit* circuit, int num_targets, const int* targets, const double* unitary) {
  return guarded([&] {
    need(circuit, "circuit");
    need(targets, "targets");
    need(unitary, "unitary");
    if (num_targets != 1 && num_targets != 2) fail(ErrorCode::kTargetOutOfRange, "one or two targets expected");
    const int dim = num_targets == 1 ? 2 : 4;
    circuit->program.ops.push_back({Instruction::Kind::kGate, "", read_complex(unitary, dim, dim),
                                    checked_targets(circuit, num_targets, targets, num_targets)});
  });
}

mp_status mp_circuit_add_measure(mp_circuit* circuit, int num_targets, const int* targets) {
  return guarded([&] {
    need(circuit, "circuit");
    need(targets, "targets");
    circuit->program.ops.push_back(
        {Instruction::Kind::kMeasure, "", {}, checked_targets(circuit, num_targets, targets, 0)});
  });
}

mp_status mp_circuit_run(const mp_circuit* circuit, int keep_trace, mp_run** out) {
  return guarded([&] {
    need(circuit, "circuit");
    need(out, "out");
    *out = new mp_run{run(circuit->program, keep_trace != 0)};
  });
}

void mp_run_free(mp_run* r) { delete r; }

int mp_run_num_measured(const mp_run* r) { return r ? static_cast<int>(r->result.record.qubits.size()) : 0; }

mp_status mp_run_measured(const mp_run* r, int* qubits) {
  return guarded([&] {
    need(r, "run");
    need(qubits, "qubits");
    std::copy(r->result.record.qubits.begin(), r->result.record.qubits.end(), qubits);
  });
}

mp_status mp_run_probs(const mp_run* r, double* probs) {
  return guarded([&] {
    need(r, "run");
    need(probs, "probs");
    write_vec(r->result.record.probs, probs);
  });
}

long mp_run_register_size(const mp_run* r) { return r ? static_cast<long>(r->result.final_state.p.size()) : 0; }

mp_status mp_run_register(const mp_run* r, double* p) {
  return guarded([&] {
    need(r, "run");
    need(p, "p");
    write_vec(r->result.final_state.p, p);
  });
}

int mp_run_trace_steps(const mp_run* r) { return r ? static_cast<int>(r->result.trace.size()) : 0; }

mp_status mp_run_trace_step(const mp_run* r, int step, double* p) {
  return guarded([&] {
    need(r, "run");
    need(p, "p");
    if (step < 0 || step >= static_cast<int>(r->result.trace.size())) fail(ErrorCode::kInvalidArgument, "step out of range");
    write_vec(r->result.trace[step], p);
  });
}

mp_status mp_run_sample(const mp_run* r, long shots, uint64_t seed, long* counts) {
  return guarded([&] {
    need(r, "run");
    need(counts, "counts");
    const auto c = sample(r->result.record, shots, seed);
    std::copy(c.begin(), c.end(), counts);
  });
}

mp_status mp_gate_table(const char* name, int* size, double* out) {
  return guarded([&] {
    need(name, "name");
    need(size, "size");
    const auto it = gate_unitaries().find(name);
    if (it == gate_unitaries().end()) fail(ErrorCode::kInvalidArgument, std::string("unknown gate '") + name + "'");
    *size = it->second.rows() == 2 ? 4 : 16;
    if (out == nullptr) return;
    write_real(*size == 4 ? single_qubit_map(it->second) : two_qubit_map(it->second), out);
  });
}

}  // extern "C"
