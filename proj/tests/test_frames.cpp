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

#include <thread>

#include "micprob/frames.hpp"
#include "micprob/linalg.hpp"
#include "micprob/states.hpp"
#include "oracle.hpp"

using namespace micprob;

namespace {

void check_frame_invariants(const FramePtr& f, double tol = 1e-9) {
  const int d = f->dim();
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& e : f->effects()) total += e;
  CHECK(linalg::max_abs(total - CMatrix::Identity(d, d)) <= tol);
  for (int k = 0; k < f->size(); ++k) {
    CHECK(std::abs(f->dual(k).trace() - 1.0) <= tol);
    CHECK(oracle::min_eig(f->effect(k)) >= -tol);
    for (int l = 0; l < f->size(); ++l) {
      CHECK(std::abs(linalg::trace_product(f->effect(l), f->dual(k)) - (l == k ? 1.0 : 0.0)) <= tol);
    }
  }
}

}  // namespace

TEST_CASE("qubit SIC Gram matrix and its inverse have the closed forms") {
  const FramePtr f = build_sic_qubit();
  for (int n = 0; n < 4; ++n) {
    for (int m = 0; m < 4; ++m) {
      CHECK(std::abs(f->gram()(n, m) - (n == m ? 0.25 : 1.0 / 12.0)) <= 1e-12);
      CHECK(std::abs(f->gram_inverse()(n, m) - (n == m ? 5.0 : -1.0)) <= 1e-12);
    }
  }
  check_frame_invariants(f, 1e-12);
  CHECK(f->gram_condition() > 1.0);
}

TEST_CASE("qubit SIC effects follow the tetrahedron") {
  const FramePtr f = build_sic_qubit();
  const double c = std::sqrt(3.0) / 12.0;
  const int signs[4][3] = {{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {-1, -1, -1}};
  for (int k = 0; k < 4; ++k) {
    const CMatrix expect = 0.25 * linalg::identity(2) +
                           c * (signs[k][0] * linalg::pauli_x() + signs[k][1] * linalg::pauli_y() +
                                signs[k][2] * linalg::pauli_z());
    CHECK(linalg::max_abs(f->effect(k) - expect) <= 1e-15);
  }
}

TEST_CASE("SIC from fiducial kets reproduces the tetrahedron frame") {
  const FramePtr ref = build_sic_qubit();
  std::vector<CVector> kets;
  for (const auto& e : ref->effects()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(e);
    kets.push_back(es.eigenvectors().col(1));  // rank one: top eigenvector
  }
  const FramePtr f = build_sic_from_fiducials(kets);
  CHECK(f->same_as(*ref));
  CHECK(linalg::max_abs(f->gram() - ref->gram()) <= 1e-12);
}

TEST_CASE("fiducial kets violating the overlap condition are rejected") {
  std::vector<CVector> basis_twice{CVector::Unit(2, 0), CVector::Unit(2, 1), CVector::Unit(2, 0), CVector::Unit(2, 1)};
  CHECK_THROWS_AS(build_sic_from_fiducials(basis_twice), Error);
  try {
    build_sic_from_fiducials(basis_twice);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSymmetryViolation);
  }

  const FramePtr ref = build_sic_qubit();
  std::vector<CVector> kets;
  for (const auto& e : ref->effects()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(e);
    kets.push_back(es.eigenvectors().col(1));
  }
  // Replace the second ket by one whose overlap with the first is 0.9.
  CVector orth = kets[1] - kets[0].dot(kets[1]) * kets[0];
  orth.normalize();
  kets[1] = std::sqrt(0.9) * kets[0] + std::sqrt(0.1) * orth;
  try {
    build_sic_from_fiducials(kets);
    FAIL("expected SymmetryViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSymmetryViolation);
  }
}

TEST_CASE("invalid effect sets report the failing condition") {
  const CMatrix half = 0.5 * linalg::identity(2);
  const CMatrix zero = CMatrix::Zero(2, 2);
  auto code_of = [](std::vector<CMatrix> e) {
    try {
      build_mic_from_effects(std::move(e));
    } catch (const Error& err) {
      return err.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code_of({half, half, zero, zero}) == ErrorCode::kFrameSingular);
  std::vector<CMatrix> doubled = build_sic_qubit()->effects();
  for (auto& e : doubled) e *= 2.0;
  CHECK(code_of(doubled) == ErrorCode::kNotNormalized);
  std::vector<CMatrix> negative = build_sic_qubit()->effects();
  negative[0] += 0.5 * linalg::pauli_z();
  negative[1] -= 0.5 * linalg::pauli_z();
  CHECK(code_of(negative) == ErrorCode::kNotPositive);
  CHECK(code_of({half, half, half}) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("SIC effects pass the general MIC constructor") {
  const FramePtr f = build_mic_from_effects(build_sic_qubit()->effects());
  CHECK(f->same_as(*build_sic_qubit()));
}

TEST_CASE("random MIC-POVMs satisfy the frame invariants") {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const FramePtr f = build_mic_from_effects(oracle::random_mic_effects(d, rng));
      check_frame_invariants(f);
      RMatrix direct(f->size(), f->size());
      for (int n = 0; n < f->size(); ++n)
        for (int m = 0; m < f->size(); ++m) direct(n, m) = (f->effect(n) * f->effect(m)).trace().real();
      CHECK(linalg::max_abs(direct - f->gram()) <= 1e-12);
    }
  }
}

TEST_CASE("structure tensors match direct triple traces and are Hermitian") {
  std::mt19937_64 rng(5);
  for (const FramePtr& f : {build_sic_qubit(), build_mic_from_effects(oracle::random_mic_effects(3, rng))}) {
    const auto& lam = f->lambda();
    const auto& lt = f->lambda_tilde();
    double imag = 0.0;
    for (int k = 0; k < f->size(); ++k) {
      CHECK(linalg::max_abs(lam[k] - lam[k].adjoint()) <= 1e-10);
      CHECK(linalg::max_abs(lt[k] - lt[k].adjoint()) <= 1e-10);
      for (int n = 0; n < f->size(); ++n) {
        for (int m = 0; m < f->size(); ++m) {
          const Complex a = (f->dual(n) * f->dual(m) * f->effect(k)).trace();
          const Complex b = (f->effect(n) * f->effect(m) * f->dual(k)).trace();
          CHECK(std::abs(lam[k](n, m) - a) <= 1e-9);
          CHECK(std::abs(lt[k](n, m) - b) <= 1e-10);
          imag = std::max(imag, std::abs(a.imag()));
        }
      }
    }
    // Non-commuting effects give genuinely complex entries.
    CHECK(imag > 1e-3);
  }
}

TEST_CASE("structure tensor cache is filled once under concurrent readers") {
  const FramePtr f = build_sic_qubit();
  std::vector<const std::vector<CMatrix>*> seen(8);
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) pool.emplace_back([&, i] { seen[i] = &f->lambda(); });
  for (auto& t : pool) t.join();
  for (int i = 1; i < 8; ++i) CHECK(seen[i] == seen[0]);
}

TEST_CASE("tensor product frame factorizes") {
  const FramePtr a = build_sic_qubit();
  std::mt19937_64 rng(3);
  const FramePtr b = build_mic_from_effects(oracle::random_mic_effects(2, rng));
  const FramePtr ab = tensor(a, b);
  CHECK(ab->dim() == 4);
  CHECK(ab->size() == 16);
  CHECK(linalg::max_abs(ab->gram() - linalg::kron(a->gram(), b->gram())) <= 1e-9);
  // Direct Gram computation as an independent check.
  RMatrix direct(16, 16);
  for (int n = 0; n < 16; ++n)
    for (int m = 0; m < 16; ++m) direct(n, m) = (ab->effect(n) * ab->effect(m)).trace().real();
  CHECK(linalg::max_abs(direct - ab->gram()) <= 1e-12);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(linalg::max_abs(ab->effect(i * 4 + j) - oracle::kron(a->effect(i), b->effect(j))) <= 1e-15);
      CHECK(linalg::max_abs(ab->dual(i * 4 + j) - oracle::kron(a->dual(i), b->dual(j))) <= 1e-9);
    }
  }
  check_frame_invariants(ab);
}

TEST_CASE("tensor with the trivial frame leaves a frame unchanged") {
  const FramePtr a = build_sic_qubit();
  CHECK(tensor(a, trivial_frame())->same_as(*a));
  CHECK(tensor(trivial_frame(), a)->same_as(*a));
}

TEST_CASE("product frames are memoized per pair") {
  const FramePtr a = build_sic_qubit();
  const FramePtr b = build_sic_qubit();
  CHECK(product_frame(a, b) == product_frame(a, b));
  CHECK(product_frame(a, b)->same_as(*tensor(a, b)));
}

TEST_CASE("transition matrices") {
  std::mt19937_64 rng(17);
  const FramePtr e = build_sic_qubit();
  const FramePtr f = build_mic_from_effects(oracle::random_mic_effects(2, rng));

  CHECK(linalg::max_abs(transition_matrix(e, e).matrix - RMatrix::Identity(4, 4)) <= 1e-12);
  const RMatrix mef = transition_matrix(e, f).matrix;
  const RMatrix mfe = transition_matrix(f, e).matrix;
  CHECK(linalg::max_abs(mef * mfe - RMatrix::Identity(4, 4)) <= 1e-8);
  CHECK(linalg::max_abs(mef.colwise().sum() - RRow::Ones(4)) <= 1e-9);
  CHECK(linalg::max_abs(mfe.colwise().sum() - RRow::Ones(4)) <= 1e-9);

  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const RVector via_f = mef * oracle::born(zero, f->effects());
  CHECK(linalg::max_abs(via_f - oracle::born(zero, e->effects())) <= 1e-12);

  // Channel and measurement matrices transform covariantly.
  const auto kraus = oracle::random_kraus(2, 2, 2, rng);
  auto channel_matrix = [&](const FramePtr& fr) {
    RMatrix s(4, 4);
    for (int k = 0; k < 4; ++k) {
      const CMatrix img = oracle::apply_kraus(kraus, fr->dual(k));
      for (int l = 0; l < 4; ++l) s(l, k) = (fr->effect(l) * img).trace().real();
    }
    return s;
  };
  CHECK(linalg::max_abs(channel_matrix(e) - mef * channel_matrix(f) * mfe) <= 1e-9);

  CMatrix proj = CMatrix::Zero(2, 2);
  proj(1, 1) = 1.0;
  auto meas_row = [&](const FramePtr& fr) {
    RRow r(4);
    for (int j = 0; j < 4; ++j) r(j) = (proj * fr->dual(j)).trace().real();
    return r;
  };
  CHECK(linalg::max_abs(meas_row(e) - meas_row(f) * mfe) <= 1e-9);

  try {
    transition_matrix(e, tensor(e, e));
    FAIL("expected DimensionMismatch");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kDimensionMismatch);
  }
}
