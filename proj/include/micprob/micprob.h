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


/* C interface to micprob. Every function returns an mp_status; on failure
 * mp_last_error() describes the problem for the calling thread. Complex
 * matrices are passed as row-major interleaved (re, im) doubles, real
 * matrices as row-major doubles. Output buffers are caller-owned and must
 * have the documented size. */

#ifndef MICPROB_MICPROB_H_
#define MICPROB_MICPROB_H_

#include <stdint.h>

#if defined(_WIN32)
#define MP_API __declspec(dllexport)
#else
#define MP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mp_status {
  MP_OK = 0,
  MP_ERR_DIMENSION_MISMATCH = 1,
  MP_ERR_FRAME_MISMATCH = 2,
  MP_ERR_SHAPE_MISMATCH = 3,
  MP_ERR_NOT_POSITIVE = 4,
  MP_ERR_NOT_NORMALIZED = 5,
  MP_ERR_FRAME_SINGULAR = 6,
  MP_ERR_SYMMETRY_VIOLATION = 7,
  MP_ERR_NOT_HERMITIAN = 8,
  MP_ERR_NOT_TRACE_PRESERVING = 9,
  MP_ERR_NOT_PSEUDOSTOCHASTIC = 10,
  MP_ERR_NOT_UNITARY = 11,
  MP_ERR_NOT_GENERATOR_SHAPED = 12,
  MP_ERR_TARGET_OUT_OF_RANGE = 13,
  MP_ERR_BRACKET_NOT_FOUND = 14,
  MP_ERR_INFEASIBLE_PARAMETERS = 15,
  MP_ERR_INVALID_ARGUMENT = 16,
  MP_ERR_INTERNAL = 17,
  MP_ERR_NULL_ARGUMENT = 18
} mp_status;

/* Error name such as "NotPositive". */
MP_API const char* mp_status_name(mp_status status);
/* Nonzero for input-validation failures, zero for computation failures. */
MP_API int mp_status_is_validation(mp_status status);
MP_API const char* mp_last_error(void);

#define MP_MAX_DEGREE 64

typedef struct mp_verdict {
  int is_physical;
  int boundary;
  int degree;           /* d */
  int effective_degree; /* d' after removing zero eigenvalues */
  double poly_coeffs[MP_MAX_DEGREE + 1]; /* b_0 .. b_d */
  double minors[MP_MAX_DEGREE];          /* Delta_1 .. Delta_d' */
} mp_verdict;

/* ---- frames ---- */

typedef struct mp_frame mp_frame;

MP_API mp_status mp_frame_build_sic_qubit(mp_frame** out);
/* d*d kets of dimension d, interleaved complex (d*d*d*2 doubles). */
MP_API mp_status mp_frame_build_sic_from_kets(int dim, const double* kets, double tol, mp_frame** out);
/* count effects of size dim x dim (count*dim*dim*2 doubles). */
MP_API mp_status mp_frame_from_effects(int dim, int count, const double* effects, double tol,
                                       mp_frame** out);
MP_API mp_status mp_frame_tensor(const mp_frame* a, const mp_frame* b, mp_frame** out);
MP_API void mp_frame_free(mp_frame* frame);

MP_API int mp_frame_dim(const mp_frame* frame);
MP_API int mp_frame_size(const mp_frame* frame);
MP_API mp_status mp_frame_effects(const mp_frame* frame, double* out);    /* size*dim*dim*2 */
MP_API mp_status mp_frame_duals(const mp_frame* frame, double* out);      /* size*dim*dim*2 */
MP_API mp_status mp_frame_gram(const mp_frame* frame, double* out);       /* size*size */
MP_API mp_status mp_frame_gram_inverse(const mp_frame* frame, double* out);
MP_API mp_status mp_frame_gram_condition(const mp_frame* frame, double* out);
/* Max deviations of sum E_k from I, of Tr(E_l e_k) from delta, of Tr(e_k)
 * from 1. */
MP_API mp_status mp_frame_residuals(const mp_frame* frame, double* completeness, double* duality,
                                    double* dual_trace);
/* M_mn = Tr(E_m f_n), size*size. */
MP_API mp_status mp_frame_transition(const mp_frame* target, const mp_frame* source, double* out);

/* ---- states ---- */

MP_API mp_status mp_state_to_prob(const mp_frame* frame, const double* rho, double* p);
MP_API mp_status mp_state_from_prob(const mp_frame* frame, const double* p, double* rho);
MP_API mp_status mp_state_check(const mp_frame* frame, const double* p, double tol, mp_verdict* out);
/* purity = Tr(rho^2) through the Hilbert-Schmidt form. */
MP_API mp_status mp_state_purity(const mp_frame* frame, const double* p, double tol, double* purity,
                                 int* is_pure);

/* ---- channels (maps are size_out x size_in) ---- */

MP_API mp_status mp_channel_kraus_to_pstoch(const mp_frame* in, const mp_frame* out, int num_ops,
                                            const double* ops, double tol, double* s);
MP_API mp_status mp_channel_apply(const mp_frame* in, const mp_frame* out, const double* s,
                                  const double* p, double* p_out);
MP_API mp_status mp_channel_check(const mp_frame* in, const mp_frame* out, const double* s, double tol,
                                  mp_verdict* verdict);
/* Choi probability vector over in (x) out, size_in*size_out. */
MP_API mp_status mp_channel_choi(const mp_frame* in, const mp_frame* out, const double* s,
                                 double* choi);

/* ---- measurements (m rows over the frame) ---- */

MP_API mp_status mp_measure_povm_to_map(const mp_frame* frame, int m, const double* effects, double tol,
                                        double* matrix);
MP_API mp_status mp_measure_probs(const mp_frame* frame, int m, const double* matrix, const double* p,
                                  double* q);
/* row_valid has m entries. */
MP_API mp_status mp_measure_check(const mp_frame* frame, int m, const double* matrix, double tol,
                                  int* valid, int* row_valid);
/* Mean of a Hermitian observable (dim x dim interleaved). */
MP_API mp_status mp_measure_mean(const mp_frame* frame, const double* observable, const double* p,
                                 double tol, double* mean);

/* ---- dynamics (generators are size x size) ---- */

MP_API mp_status mp_dyn_generator(const mp_frame* frame, const double* hamiltonian, int num_noise,
                                  const double* noise_ops, double tol, double* l);
MP_API mp_status mp_dyn_evolve(const mp_frame* frame, const double* l, const double* p0, double t,
                               double* p);
/* form 0: full generator, 1: generator minus its unitary projection. */
MP_API mp_status mp_dyn_check_generator(const mp_frame* frame, const double* l, int form, double tol,
                                        int* valid, mp_verdict* verdict);
MP_API mp_status mp_dyn_project_unitary(const mp_frame* frame, const double* m, double* out);

/* Reference single-qubit channels on the qubit SIC frame at x = t/tau (or
 * omega t). */
MP_API int mp_dyn_table_count(void);
MP_API const char* mp_dyn_table_name(int index);
MP_API mp_status mp_dyn_table_matrix(int index, double x, double* out16);

/* ---- classicality ---- */

typedef struct mp_optimizer_config {
  int restarts;
  int iterations;
  double convergence;
  double tau_tol;
  double zero_tol;
  double tau_start;
  double tau_stop;
  int tau_grid;
  double tau_limit;
  uint64_t seed;
  int threads;
} mp_optimizer_config;

MP_API void mp_optimizer_config_default(mp_optimizer_config* cfg);

/* kind: depol | deph | damp; family: sic | pmic | mic. */
MP_API mp_status mp_min_negativity(const char* kind, double theta, double tau, const char* family,
                                   const mp_optimizer_config* cfg, double* negativity,
                                   long* evaluations);
MP_API mp_status mp_tau_crit(const char* kind, double theta, const char* family,
                             const mp_optimizer_config* cfg, double* tau_crit, int* empty,
                             long* evaluations);
/* CSV text, released with mp_string_free. */
MP_API mp_status mp_scan_csv(const char* kind, const double* thetas, int count, const char* family,
                             const mp_optimizer_config* cfg, char** csv);
MP_API void mp_string_free(char* s);

/* ---- circuits ---- */

typedef struct mp_circuit mp_circuit;
typedef struct mp_run mp_run;

MP_API mp_status mp_circuit_new(int n, mp_circuit** out);
MP_API mp_status mp_circuit_grover(const char* secret, mp_circuit** out);
MP_API void mp_circuit_free(mp_circuit* circuit);
MP_API int mp_circuit_qubits(const mp_circuit* circuit);
MP_API mp_status mp_circuit_add_gate(mp_circuit* circuit, const char* name, int num_targets,
                                     const int* targets);
/* Explicit 2x2 or 4x4 unitary, interleaved complex. */
MP_API mp_status mp_circuit_add_unitary(mp_circuit* circuit, int num_targets, const int* targets,
                                        const double* unitary);
MP_API mp_status mp_circuit_add_measure(mp_circuit* circuit, int num_targets, const int* targets);

MP_API mp_status mp_circuit_run(const mp_circuit* circuit, int keep_trace, mp_run** out);
MP_API void mp_run_free(mp_run* run);
MP_API int mp_run_num_measured(const mp_run* run);
MP_API mp_status mp_run_measured(const mp_run* run, int* qubits);
MP_API mp_status mp_run_probs(const mp_run* run, double* probs); /* 2^m */
MP_API long mp_run_register_size(const mp_run* run);             /* 4^n */
MP_API mp_status mp_run_register(const mp_run* run, double* p);
MP_API int mp_run_trace_steps(const mp_run* run);
MP_API mp_status mp_run_trace_step(const mp_run* run, int step, double* p);
MP_API mp_status mp_run_sample(const mp_run* run, long shots, uint64_t seed, long* counts);

/* Pseudostochastic map of a library gate (h x t s cz cx swap iswap); size
 * receives 4 or 16, out needs size*size doubles (pass NULL to query). */
MP_API mp_status mp_gate_table(const char* name, int* size, double* out);

#ifdef __cplusplus
}
#endif

#endif /* MICPROB_MICPROB_H_ */
