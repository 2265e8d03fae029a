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


// Exercises the shared library from plain C.

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "micprob/micprob.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static double max_diff(const double* a, const double* b, int n) {
  double m = 0.0;
  for (int i = 0; i < n; ++i) m = fmax(m, fabs(a[i] - b[i]));
  return m;
}

static void test_frames_and_states(void) {
  mp_frame* f = NULL;
  EXPECT(mp_frame_build_sic_qubit(&f) == MP_OK);
  EXPECT(mp_frame_dim(f) == 2 && mp_frame_size(f) == 4);
  double gram[16], ginv[16];
  EXPECT(mp_frame_gram(f, gram) == MP_OK);
  EXPECT(mp_frame_gram_inverse(f, ginv) == MP_OK);
  for (int i = 0; i < 16; ++i) {
    EXPECT(fabs(gram[i] - (i % 5 == 0 ? 0.25 : 1.0 / 12.0)) < 1e-12);
    EXPECT(fabs(ginv[i] - (i % 5 == 0 ? 5.0 : -1.0)) < 1e-12);
  }
  double c, d, t;
  EXPECT(mp_frame_residuals(f, &c, &d, &t) == MP_OK);
  EXPECT(c < 1e-12 && d < 1e-12 && t < 1e-12);

  const double rho0[8] = {1, 0, 0, 0, 0, 0, 0, 0};
  double p[4], back[8];
  EXPECT(mp_state_to_prob(f, rho0, p) == MP_OK);
  const double hi = (3.0 + sqrt(3.0)) / 12.0, lo = (3.0 - sqrt(3.0)) / 12.0;
  const double expect[4] = {hi, hi, lo, lo};
  EXPECT(max_diff(p, expect, 4) < 1e-12);
  EXPECT(mp_state_from_prob(f, p, back) == MP_OK);
  EXPECT(max_diff(back, rho0, 8) < 1e-12);

  mp_verdict v;
  EXPECT(mp_state_check(f, p, 1e-9, &v) == MP_OK);
  EXPECT(v.is_physical && v.boundary && v.effective_degree == 1);
  const double corner[4] = {1, 0, 0, 0};
  EXPECT(mp_state_check(f, corner, 1e-9, &v) == MP_OK);
  EXPECT(!v.is_physical);
  const double unnormalized[4] = {1, 1, 0, 0};
  EXPECT(mp_state_check(f, unnormalized, 1e-9, &v) == MP_ERR_NOT_NORMALIZED);
  EXPECT(strlen(mp_last_error()) > 0);
  EXPECT(strcmp(mp_status_name(MP_ERR_NOT_NORMALIZED), "NotNormalized") == 0);
  EXPECT(mp_status_is_validation(MP_ERR_NOT_NORMALIZED));
  EXPECT(!mp_status_is_validation(MP_ERR_BRACKET_NOT_FOUND));

  double purity;
  int pure;
  EXPECT(mp_state_purity(f, p, 1e-9, &purity, &pure) == MP_OK);
  EXPECT(fabs(purity - 1.0) < 1e-12 && pure);

  mp_frame* ff = NULL;
  EXPECT(mp_frame_tensor(f, f, &ff) == MP_OK);
  EXPECT(mp_frame_size(ff) == 16 && mp_frame_dim(ff) == 4);

  double m[16];
  EXPECT(mp_frame_transition(f, f, m) == MP_OK);
  EXPECT(fabs(m[0] - 1.0) < 1e-12 && fabs(m[1]) < 1e-12);
  EXPECT(mp_frame_transition(f, ff, m) == MP_ERR_DIMENSION_MISMATCH);

  EXPECT(mp_frame_build_sic_qubit(NULL) == MP_ERR_NULL_ARGUMENT);
  mp_frame_free(ff);
  mp_frame_free(f);
}

static void test_channels_and_dynamics(void) {
  mp_frame* f = NULL;
  mp_frame_build_sic_qubit(&f);
  const double id[8] = {1, 0, 0, 0, 0, 0, 1, 0};
  double s[16];
  EXPECT(mp_channel_kraus_to_pstoch(f, f, 1, id, 1e-9, s) == MP_OK);
  for (int i = 0; i < 16; ++i) EXPECT(fabs(s[i] - (i % 5 == 0 ? 1.0 : 0.0)) < 1e-12);
  mp_verdict v;
  EXPECT(mp_channel_check(f, f, s, 1e-9, &v) == MP_OK && v.is_physical);
  const double half[8] = {0.5, 0, 0, 0, 0, 0, 0.5, 0};
  EXPECT(mp_channel_kraus_to_pstoch(f, f, 1, half, 1e-9, s) == MP_ERR_NOT_TRACE_PRESERVING);

  EXPECT(mp_dyn_table_count() == 7);
  double row[16];
  EXPECT(mp_dyn_table_matrix(1, 0.5, row) == MP_OK);  // depolarization
  const double e = exp(-0.5);
  EXPECT(fabs(row[0] - (1 + 3 * e) / 4) < 1e-12 && fabs(row[1] - (1 - e) / 4) < 1e-12);
  EXPECT(mp_dyn_table_matrix(99, 0.5, row) == MP_ERR_INVALID_ARGUMENT);

  // Depolarizing generator, evolution and validity.
  const double zero_h[8] = {0};
  double ops[24] = {0};
  const double k = 0.5;
  ops[2] = k; ops[4] = k;                   // sigma_x / 2
  ops[8 + 3] = -k; ops[8 + 5] = k;          // sigma_y / 2
  ops[16 + 0] = k; ops[16 + 6] = -k;        // sigma_z / 2
  double l[16];
  EXPECT(mp_dyn_generator(f, zero_h, 3, ops, 1e-9, l) == MP_OK);
  EXPECT(fabs(l[0] + 0.75) < 1e-12 && fabs(l[1] - 0.25) < 1e-12);
  int valid = 0;
  EXPECT(mp_dyn_check_generator(f, l, 0, 1e-9, &valid, &v) == MP_OK && valid);
  double neg[16];
  for (int i = 0; i < 16; ++i) neg[i] = -l[i];
  EXPECT(mp_dyn_check_generator(f, neg, 1, 1e-9, &valid, &v) == MP_OK && !valid);
  const double uniform[4] = {0.25, 0.25, 0.25, 0.25};
  double p[4];
  EXPECT(mp_dyn_evolve(f, l, uniform, 2.0, p) == MP_OK);
  EXPECT(max_diff(p, uniform, 4) < 1e-12);
  double proj[16];
  EXPECT(mp_dyn_project_unitary(f, l, proj) == MP_OK);
  for (int i = 0; i < 16; ++i) EXPECT(fabs(proj[i]) < 1e-10);

  // Read-out of sigma_z.
  const double z[8] = {1, 0, 0, 0, 0, 0, -1, 0};
  double mean;
  const double rho0[8] = {1, 0, 0, 0, 0, 0, 0, 0};
  double p0[4];
  mp_state_to_prob(f, rho0, p0);
  EXPECT(mp_measure_mean(f, z, p0, 1e-9, &mean) == MP_OK && fabs(mean - 1.0) < 1e-12);
  const double proj01[16] = {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0};
  double mm[8], q[2];
  EXPECT(mp_measure_povm_to_map(f, 2, proj01, 1e-9, mm) == MP_OK);
  EXPECT(mp_measure_probs(f, 2, mm, p0, q) == MP_OK);
  EXPECT(fabs(q[0] - 1.0) < 1e-12 && fabs(q[1]) < 1e-12);
  int rows[2];
  EXPECT(mp_measure_check(f, 2, mm, 1e-9, &valid, rows) == MP_OK && valid && rows[0] && rows[1]);
  mp_frame_free(f);
}

static void test_classicality(void) {
  mp_optimizer_config cfg;
  mp_optimizer_config_default(&cfg);
  cfg.restarts = 4;
  cfg.iterations = 200;
  cfg.tau_tol = 0.01;
  cfg.tau_grid = 8;
  double n;
  long evals;
  EXPECT(mp_min_negativity("depol", 0.0, 0.3, "sic", &cfg, &n, &evals) == MP_OK);
  EXPECT(n == 0.0 && evals > 0);
  EXPECT(mp_min_negativity("noise", 0.0, 0.3, "sic", &cfg, &n, &evals) == MP_ERR_INVALID_ARGUMENT);
  double tau;
  int empty;
  EXPECT(mp_tau_crit("depol", 0.0, "sic", &cfg, &tau, &empty, &evals) == MP_OK);
  EXPECT(!empty && fabs(tau - 0.5) < 0.02);
  const double thetas[2] = {0.0, 1.0};
  char* csv = NULL;
  EXPECT(mp_scan_csv("depol", thetas, 2, "sic", &cfg, &csv) == MP_OK);
  EXPECT(csv && strncmp(csv, "theta,tau_crit,family,kind,seed,evaluations\n", 44) == 0);
  mp_string_free(csv);
}

static void test_circuits(void) {
  mp_circuit* c = NULL;
  EXPECT(mp_circuit_grover("10", &c) == MP_OK);
  mp_run* r = NULL;
  EXPECT(mp_circuit_run(c, 1, &r) == MP_OK);
  EXPECT(mp_run_num_measured(r) == 2);
  double probs[4];
  EXPECT(mp_run_probs(r, probs) == MP_OK);
  EXPECT(fabs(probs[2] - 1.0) < 1e-9);
  long counts[4];
  EXPECT(mp_run_sample(r, 1024, 7, counts) == MP_OK && counts[2] == 1024);
  EXPECT(mp_run_register_size(r) == 16);
  EXPECT(mp_run_trace_steps(r) > 0);
  mp_run_free(r);
  mp_circuit_free(c);

  EXPECT(mp_circuit_new(2, &c) == MP_OK);
  const int t0[1] = {0};
  const int bad[1] = {7};
  EXPECT(mp_circuit_add_gate(c, "h", 1, t0) == MP_OK);
  EXPECT(mp_circuit_add_gate(c, "h", 1, bad) == MP_ERR_TARGET_OUT_OF_RANGE);
  EXPECT(mp_circuit_add_gate(c, "nope", 1, t0) == MP_ERR_INVALID_ARGUMENT);
  EXPECT(mp_circuit_add_measure(c, 1, t0) == MP_OK);
  EXPECT(mp_circuit_run(c, 0, &r) == MP_OK);
  double two[2];
  EXPECT(mp_run_probs(r, two) == MP_OK && fabs(two[0] - 0.5) < 1e-12);
  mp_run_free(r);
  mp_circuit_free(c);

  int size = 0;
  EXPECT(mp_gate_table("cz", &size, NULL) == MP_OK && size == 16);
  double* table = malloc(sizeof(double) * size * size);
  EXPECT(mp_gate_table("cz", &size, table) == MP_OK);
  double minimum = 0;
  for (int i = 0; i < size * size; ++i) minimum = fmin(minimum, table[i]);
  EXPECT(minimum <= -0.01);
  free(table);
}

int main(void) {
  test_frames_and_states();
  test_channels_and_dynamics();
  test_classicality();
  test_circuits();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
