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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "micprob/dynamics.hpp"
#include "micprob/linalg.hpp"
#include "oracle.hpp"
#include "table_fixtures.hpp"

using namespace micprob;

namespace {

// Reference patterns for the spin model, sin and cos parts.
RMatrix sin_pattern() {
  RMatrix m(4, 4);
  m << 0, -1, 1, 0, 1, 0, 0, -1, -1, 0, 0, 1, 0, 1, -1, 0;
  return m;
}

RMatrix cos_pattern() {
  RMatrix m(4, 4);
  m << 0, -1, 0, 1, 1, 0, -1, 0, 0, 1, 0, -1, -1, 0, 1, 0;
  return m;
}

CMatrix spin_h(double theta) {
  return 0.5 * (std::sin(theta) * linalg::pauli_x() + std::cos(theta) * linalg::pauli_z());
}

CMatrix lowering() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

// Tr(E_i L(e_j)) for a superoperator given in the standard formalism.
RMatrix sandwich(const FramePtr& f, const std::function<CMatrix(const CMatrix&)>& l) {
  RMatrix out(f->size(), f->size());
  for (int j = 0; j < f->size(); ++j) {
    const CMatrix img = l(f->dual(j));
    for (int i = 0; i < f->size(); ++i) out(i, j) = (f->effect(i) * img).trace().real();
  }
  return out;
}

std::vector<CMatrix> random_ops(int d, int count, std::mt19937_64& rng, bool traceless) {
  std::normal_distribution<double> g;
  std::vector<CMatrix> ops;
  for (int k = 0; k < count; ++k) {
    CMatrix a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng)) * 0.4;
    if (traceless) a -= a.trace() / static_cast<double>(d) * CMatrix::Identity(d, d);
    ops.push_back(a);
  }
  return ops;
}

}  // namespace

TEST_CASE("operator bases satisfy the three conditions") {
  for (int d = 2; d <= 4; ++d) {
    const OperatorBasis b = gell_mann_basis(d);
    CHECK(static_cast<int>(b.size()) == d * d - 1);
    validate_basis(b, d);
    for (size_t i = 0; i < b.size(); ++i) {
      CHECK(std::abs(b[i].trace()) <= 1e-12);
      CHECK(linalg::max_abs(b[i] - b[i].adjoint()) <= 1e-12);
      for (size_t j = 0; j < b.size(); ++j)
        CHECK(std::abs((b[i] * b[j]).trace() - (i == j ? 2.0 : 0.0)) <= 1e-12);
    }
  }
  OperatorBasis bad = gell_mann_basis(2);
  bad[0] = linalg::identity(2);
  CHECK_THROWS_AS(validate_basis(bad, 2), Error);

  std::mt19937_64 rng(1);
  const CMatrix h = oracle::random_hermitian(3, rng);
  const OperatorBasis b = gell_mann_basis(3);
  const auto nu = hamiltonian_coeffs(h, b);
  CMatrix rebuilt = nu[0] * CMatrix::Identity(3, 3);
  for (size_t i = 0; i < b.size(); ++i) rebuilt += nu[i + 1] * b[i];
  CHECK(linalg::max_abs(rebuilt - h) <= 1e-12);
}

TEST_CASE("Hamiltonian generators: structure and gauge") {
  const FramePtr f = build_sic_qubit();
  CHECK(linalg::max_abs(hamiltonian_generator(linalg::identity(2), f).matrix) <= 1e-12);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int d = 2; d <= 3; ++d) {
    const FramePtr g = d == 2 ? f : build_mic_from_effects(oracle::random_mic_effects(d, rng));
    for (int t = 0; t < 10; ++t) {
      const CMatrix h = oracle::random_hermitian(d, rng);
      const RMatrix m = hamiltonian_generator(h, g).matrix;
      CHECK(linalg::max_abs(m.colwise().sum()) <= 1e-10);
      const RMatrix ti = g->gram_inverse();
      CHECK(linalg::max_abs(m.transpose() * ti + ti * m) <= 1e-9);
      const CMatrix shifted = h + u(rng) * CMatrix::Identity(d, d);
      CHECK(linalg::max_abs(hamiltonian_generator(shifted, g).matrix - m) <= 1e-12);
      const auto comm = [&](const CMatrix& x) -> CMatrix { return Complex(0, -1) * (h * x - x * h); };
      CHECK(linalg::max_abs(sandwich(g, comm) - m) <= 1e-10);
      if (d == 2) CHECK(linalg::max_abs(m + m.transpose()) <= 1e-10);
    }
  }
  CMatrix nh = linalg::pauli_x();
  nh(0, 1) = 3.0;
  CHECK_THROWS_AS(hamiltonian_generator(nh, f), Error);
}

TEST_CASE("spin Hamiltonian generator vs the reference patterns (scale and axis caveats)") {
  // The reference carries sin/4 and cos/4 prefactors; the definition with
  // H = (sin sigma_x + cos sigma_z) / 2 gives sin/2 on the first pattern.
  // The second reference pattern is the sigma_y generator, not sigma_z.
  const FramePtr f = build_sic_qubit();
  const RMatrix hz = hamiltonian_generator(0.5 * linalg::pauli_z(), f).matrix;
  CHECK(linalg::max_abs(hamiltonian_generator(0.5 * linalg::pauli_y(), f).matrix - cos_pattern() / 2.0) <= 1e-12);
  CHECK(linalg::max_abs(hz - cos_pattern() / 2.0) > 0.5);
  RMatrix z_pattern(4, 4);
  z_pattern << 0, 0, 1, -1, 0, 0, -1, 1, -1, 1, 0, 0, 1, -1, 0, 0;
  CHECK(linalg::max_abs(hz - z_pattern / 2.0) <= 1e-12);
  for (double theta : {0.0, 0.4, 1.3, 2.9}) {
    const RMatrix m = hamiltonian_generator(spin_h(theta), f).matrix;
    const RMatrix expect = std::sin(theta) / 2.0 * sin_pattern() + std::cos(theta) / 2.0 * z_pattern;
    CHECK(linalg::max_abs(m - expect) <= 1e-12);
  }
}

TEST_CASE("unitary maps") {
  const FramePtr f = build_sic_qubit();
  const GeneratorMatrix hz = hamiltonian_generator(0.5 * linalg::pauli_z(), f);
  CHECK(linalg::max_abs(unitary_map(hz, 0.0).matrix - RMatrix::Identity(4, 4)) <= 1e-12);
  for (double x : {0.3, 1.0, 3.0}) {
    CHECK(linalg::max_abs(unitary_map(hz, x).matrix - fixtures::table_row(ReferenceChannel::kRotationZ, x)) <= 1e-9);
  }
  std::mt19937_64 rng(3);
  for (int d = 2; d <= 3; ++d) {
    const FramePtr g = d == 2 ? f : build_mic_from_effects(oracle::random_mic_effects(d, rng));
    const GeneratorMatrix h = hamiltonian_generator(oracle::random_hermitian(d, rng), g);
    const RMatrix ti = g->gram_inverse();
    for (double t = 0.0; t <= 10.0; t += 1.25) {
      const RMatrix u = unitary_map(h, t).matrix;
      CHECK(linalg::max_abs(u.transpose() * ti * u - ti) <= 1e-8);
      if (d == 2) CHECK(linalg::max_abs(u.rowwise().sum() - RVector::Ones(4)) <= 1e-9);
    }
    CHECK(linalg::max_abs(unitary_map(h, 0.7).matrix * unitary_map(h, 1.1).matrix - unitary_map(h, 1.8).matrix) <= 1e-9);
  }
  GeneratorMatrix notham = hz;
  notham.kind = GeneratorKind::kGksl;
  CHECK_THROWS_AS(unitary_map(notham, 1.0), Error);
}

TEST_CASE("basis generators") {
  const FramePtr f = build_sic_qubit();
  const auto hs = basis_generators(f, gell_mann_basis(2));
  REQUIRE(hs.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(linalg::max_abs(hs[i].matrix.colwise().sum()) <= 1e-12);
    for (size_t j = 0; j < 3; ++j)
      CHECK(std::abs((hs[i].matrix * hs[j].matrix).trace() - (i == j ? -8.0 : 0.0)) <= 1e-9);
  }
  std::mt19937_64 rng(4);
  const FramePtr g = build_mic_from_effects(oracle::random_mic_effects(3, rng));
  const auto h3 = basis_generators(g, gell_mann_basis(3));
  for (size_t i = 0; i < h3.size(); ++i)
    for (size_t j = 0; j < h3.size(); ++j)
      CHECK(std::abs((h3[i].matrix * h3[j].matrix).trace() - (i == j ? -12.0 : 0.0)) <= 1e-9);

  // Least-squares decomposition of the spin generator over H^(1..3).
  const double theta = 0.8;
  const RMatrix target = hamiltonian_generator(spin_h(theta), f).matrix;
  RMatrix a(16, 3);
  for (int i = 0; i < 3; ++i) a.col(i) = hs[i].matrix.reshaped();
  const RVector c = a.colPivHouseholderQr().solve(RVector(target.reshaped()));
  CHECK(std::abs(c(0) - std::sin(theta) / 2.0) <= 1e-12);
  CHECK(std::abs(c(1)) <= 1e-12);
  CHECK(std::abs(c(2) - std::cos(theta) / 2.0) <= 1e-12);
}

TEST_CASE("unitary projection") {
  const FramePtr f = build_sic_qubit();
  const OperatorBasis b2 = gell_mann_basis(2);
  const GeneratorMatrix h = hamiltonian_generator(spin_h(0.6), f);
  CHECK(linalg::max_abs(project_unitary(h.matrix, f, b2).matrix - h.matrix) <= 1e-10);
  CHECK(linalg::max_abs(project_unitary(RMatrix::Zero(4, 4), f, b2).matrix) <= 1e-15);
  std::vector<CMatrix> depol;
  for (const CMatrix& s : b2) depol.push_back(s / 2.0);
  CHECK(linalg::max_abs(project_unitary(dissipator_matrix(depol, f).matrix, f, b2).matrix) <= 1e-10);

  std::mt19937_64 rng(5);
  for (int d = 2; d <= 3; ++d) {
    const FramePtr g = d == 2 ? f : build_mic_from_effects(oracle::random_mic_effects(d, rng));
    const OperatorBasis b = gell_mann_basis(d);
    for (int t = 0; t < 5; ++t) {
      const CMatrix hh = oracle::random_hermitian(d, rng);
      // Traceless noise operators fix the split between H and D.
      const GeneratorMatrix l = gksl_generator(hh, random_ops(d, 2, rng, true), g);
      const RMatrix p = project_unitary(l.matrix, g, b).matrix;
      CHECK(linalg::max_abs(p - hamiltonian_generator(hh, g).matrix) <= 1e-8);
      CHECK(linalg::max_abs(project_unitary(p, g, b).matrix - p) <= 1e-10);
    }
  }
}

TEST_CASE("depolarizing dissipator matches the reference matrix") {
  const FramePtr f = build_sic_qubit();
  const double tau = 0.7;
  std::vector<CMatrix> ops{linalg::pauli_x(), linalg::pauli_y(), linalg::pauli_z()};
  for (auto& a : ops) a /= 2.0 * std::sqrt(tau);
  RMatrix expect = RMatrix::Constant(4, 4, 1.0);
  expect.diagonal().setConstant(-3.0);
  expect /= 4.0 * tau;
  CHECK(linalg::max_abs(dissipator_matrix(ops, f).matrix - expect) <= 1e-12);
  CHECK(linalg::max_abs(dissipator_matrix({}, f).matrix) == 0.0);
}

TEST_CASE("dephasing dissipator is twice the reference matrix (rate caveat)") {
  // sigma_z / sqrt(tau) damps coherences at 2 / tau; the reference encodes 1 / tau.
  const FramePtr f = build_sic_qubit();
  const double tau = 1.3;
  RMatrix pattern(4, 4);
  pattern << -1, 1, 0, 0, 1, -1, 0, 0, 0, 0, -1, 1, 0, 0, 1, -1;
  const RMatrix d = dissipator_matrix({linalg::pauli_z() / std::sqrt(tau)}, f).matrix;
  CHECK(linalg::max_abs(d - pattern / tau) <= 1e-12);
  CHECK(linalg::max_abs(d - 2.0 * pattern / (2.0 * tau)) <= 1e-12);
  // The table's e^{-t/tau} dephasing channel corresponds to the reference matrix.
  const RMatrix half = dissipator_matrix({linalg::pauli_z() / std::sqrt(2.0 * tau)}, f).matrix;
  CHECK(linalg::max_abs(propagator({f, half, GeneratorKind::kDissipator}, 0.9 * tau).matrix -
                        fixtures::table_row(ReferenceChannel::kDephasing, 0.9)) <= 1e-10);
}

TEST_CASE("damping dissipator of sigma^- flips the sqrt(3) term of the reference matrix (convention caveat)") {
  const FramePtr f = build_sic_qubit();
  const double tau = 0.9;
  RMatrix a(4, 4), b(4, 4);
  a << -2, 0, 1, 1, 0, -2, 1, 1, 1, 1, -2, 0, 1, 1, 0, -2;
  b << 1, 1, 1, 1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1, -1, -1;
  const RMatrix d = dissipator_matrix({lowering() / std::sqrt(tau)}, f).matrix;
  CHECK(linalg::max_abs(d - (a / (4.0 * tau) - b / (4.0 * std::sqrt(3.0) * tau))) <= 1e-12);
  // Ground truth: the standard-formalism sandwich of the damping dissipator.
  const std::vector<CMatrix> ops{lowering() / std::sqrt(tau)};
  CHECK(linalg::max_abs(d - sandwich(f, [&](const CMatrix& x) { return oracle::lindblad(CMatrix::Zero(2, 2), ops, x); })) <= 1e-12);
  // The reference matrix and the damping table row both belong to |0><1|,
  // decay towards |0>.
  const RMatrix up = dissipator_matrix({lowering().adjoint() / std::sqrt(tau)}, f).matrix;
  CHECK(linalg::max_abs(up - (a / (4.0 * tau) + b / (4.0 * std::sqrt(3.0) * tau))) <= 1e-12);
  CHECK(linalg::max_abs(propagator({f, up, GeneratorKind::kDissipator}, 1.7 * tau).matrix -
                        fixtures::table_row(ReferenceChannel::kDamping, 1.7)) <= 1e-10);
}

TEST_CASE("dissipators match the standard-formalism sandwich") {
  std::mt19937_64 rng(6);
  for (int d = 2; d <= 3; ++d) {
    const FramePtr g = build_mic_from_effects(oracle::random_mic_effects(d, rng));
    for (int t = 0; t < 5; ++t) {
      const auto ops = random_ops(d, 3, rng, false);
      const CMatrix h = oracle::random_hermitian(d, rng);
      const GeneratorMatrix l = gksl_generator(h, ops, g);
      CHECK(linalg::max_abs(l.matrix.colwise().sum()) <= 1e-10);
      CHECK(linalg::max_abs(l.matrix - sandwich(g, [&](const CMatrix& x) { return oracle::lindblad(h, ops, x); })) <= 1e-10);
      CHECK(linalg::max_abs(dissipator_matrix(ops, g).matrix + hamiltonian_generator(h, g).matrix - l.matrix) <= 1e-12);
    }
  }
  const FramePtr f = build_sic_qubit();
  const CMatrix h = spin_h(0.3);
  CHECK(linalg::max_abs(gksl_generator(h, {}, f).matrix - hamiltonian_generator(h, f).matrix) <= 1e-15);
  CMatrix nh = linalg::pauli_x();
  nh(1, 0) = 0.0;
  CHECK_THROWS_AS(gksl_generator(nh, {}, f), Error);
}

TEST_CASE("evolution") {
  const FramePtr f = build_sic_qubit();
  const double tau = 0.8;
  std::vector<CMatrix> depol{linalg::pauli_x(), linalg::pauli_y(), linalg::pauli_z()};
  for (auto& a : depol) a /= 2.0 * std::sqrt(tau);
  const GeneratorMatrix l = gksl_generator(CMatrix::Zero(2, 2), depol, f);
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const ProbVector p0 = to_prob(zero, f);
  CHECK(linalg::max_abs(evolve(l, p0, 0.0).p - p0.p) == 0.0);
  for (double x : {0.3, 1.0, 3.0}) {
    const RVector expect = fixtures::table_row(ReferenceChannel::kDepolarization, x) * p0.p;
    CHECK(linalg::max_abs(evolve(l, p0, x * tau).p - expect) <= 1e-10);
  }
  const ProbVector uniform(f, RVector::Constant(4, 0.25));
  const GeneratorMatrix deph = gksl_generator(spin_h(0.0), {linalg::pauli_z()}, f);
  for (double t : {0.5, 5.0}) {
    CHECK(linalg::max_abs(evolve(l, uniform, t).p - uniform.p) <= 1e-12);
    CHECK(linalg::max_abs(evolve(deph, uniform, t).p - uniform.p) <= 1e-12);
  }
  CHECK_THROWS_AS(evolve(l, p0, -1.0), Error);
  std::mt19937_64 rng(7);
  CHECK_THROWS_AS(evolve(l, to_prob(zero, build_mic_from_effects(oracle::random_mic_effects(2, rng))), 1.0), Error);
}

TEST_CASE("evolution agrees with master-equation integration") {
  std::mt19937_64 rng(8);
  for (int d = 2; d <= 3; ++d) {
    for (int t = 0; t < 3; ++t) {
      const FramePtr g = build_mic_from_effects(oracle::random_mic_effects(d, rng));
      const CMatrix h = oracle::random_hermitian(d, rng);
      const auto ops = random_ops(d, 2, rng, false);
      const CMatrix rho0 = oracle::random_state(d, rng);
      const GeneratorMatrix l = gksl_generator(h, ops, g);
      for (double time : {0.4, 1.5}) {
        const ProbVector p = evolve(l, to_prob(rho0, g), time);
        const RVector ref = oracle::born(oracle::integrate_master(h, ops, rho0, time), g->effects());
        CHECK(linalg::max_abs(p.p - ref) <= 1e-7);
        CHECK(is_physical(p).is_physical);
      }
      CHECK(linalg::max_abs(propagator(l, 0.3).matrix * propagator(l, 0.9).matrix - propagator(l, 1.2).matrix) <= 1e-8);
    }
  }
}

TEST_CASE("generator validity fixtures") {
  const FramePtr f = build_sic_qubit();
  std::vector<CMatrix> depol{linalg::pauli_x(), linalg::pauli_y(), linalg::pauli_z()};
  for (auto& a : depol) a /= 2.0;
  GeneratorMatrix l = gksl_generator(spin_h(0.5), depol, f);
  for (auto form : {GeneratorCheckForm::kFull, GeneratorCheckForm::kDissipatorOnly}) {
    CHECK(is_gksl_generator(l, form).valid);
    CHECK_FALSE(is_gksl_generator({f, -l.matrix, GeneratorKind::kGksl}, form).valid);
    CHECK(is_gksl_generator(hamiltonian_generator(spin_h(1.0), f), form).valid);
  }
  RMatrix broken = l.matrix;
  broken(0, 0) += 0.1;
  try {
    is_gksl_generator({f, broken, GeneratorKind::kGksl});
    FAIL("expected NotGeneratorShaped");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotGeneratorShaped);
  }
}

TEST_CASE("generator validity agrees with the conditional positivity oracle") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FramePtr f = build_sic_qubit();
  int valid = 0, invalid = 0;
  for (int t = 0; t < 60; ++t) {
    const CMatrix h = oracle::random_hermitian(2, rng);
    // three operators give a full-rank block on the complement of Phi
    const auto good = random_ops(2, 3, rng, false);
    const auto bad = random_ops(2, 1, rng, false);
    const double lam = u(rng);
    const auto super = [&](const CMatrix& x) -> CMatrix {
      return oracle::lindblad(h, good, x) - lam * oracle::lindblad(CMatrix::Zero(2, 2), bad, x);
    };
    const double lmin = oracle::ccp_min_eig(super, 2);
    if (std::abs(lmin) < 1e-8) continue;
    const GeneratorMatrix l{f, sandwich(f, super), GeneratorKind::kGksl};
    CHECK(is_gksl_generator(l, GeneratorCheckForm::kFull).valid == (lmin > 0));
    CHECK(is_gksl_generator(l, GeneratorCheckForm::kDissipatorOnly).valid == (lmin > 0));
    (lmin > 0 ? valid : invalid)++;
  }
  CHECK(valid > 10);
  CHECK(invalid > 10);
}

TEST_CASE("Heisenberg picture") {
  const FramePtr f = build_sic_qubit();
  const double tau = 0.6;
  // decay towards |0>
  const GeneratorMatrix l = gksl_generator(spin_h(0.0), {lowering().adjoint() / std::sqrt(tau)}, f);
  const Observable z = observable_from_operator(linalg::pauli_z(), f);
  CMatrix one = CMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const ProbVector p1 = to_prob(one, f);
  CHECK(linalg::max_abs(heisenberg_evolve(z.mean_row, l, 0.0) - z.mean_row) == 0.0);
  for (double t : {0.2, 1.0, 4.0}) {
    const double heis = (heisenberg_evolve(z.mean_row, l, t) * p1.p)(0);
    CHECK(std::abs(heis - observable_mean(z, evolve(l, p1, t))) <= 1e-9);
    CHECK(std::abs(heis - (1.0 - 2.0 * std::exp(-t / tau))) <= 1e-9);
  }
  const MeasurementMap pr = povm_to_map({CMatrix(one.reverse()), one}, f);
  for (double t : {0.5, 2.0})
    CHECK(linalg::max_abs(heisenberg_evolve(pr.matrix, l, t).colwise().sum() - RRow::Ones(4)) <= 1e-10);
  CHECK_THROWS_AS(heisenberg_evolve(RMatrix::Ones(2, 3), l, 1.0), Error);

  std::mt19937_64 rng(10);
  for (int t = 0; t < 5; ++t) {
    const FramePtr g = build_mic_from_effects(oracle::random_mic_effects(3, rng));
    const GeneratorMatrix lg = gksl_generator(oracle::random_hermitian(3, rng), random_ops(3, 2, rng, false), g);
    const Observable o = observable_from_operator(oracle::random_hermitian(3, rng), g);
    const ProbVector p = to_prob(oracle::random_state(3, rng), g);
    CHECK(std::abs((heisenberg_evolve(o.mean_row, lg, 0.8) * p.p)(0) - observable_mean(o, evolve(lg, p, 0.8))) <= 1e-9);
  }
}
