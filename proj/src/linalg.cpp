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

#include "micprob/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace micprob {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kFrameMismatch: return "FrameMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kFrameSingular: return "FrameSingular";
    case ErrorCode::kSymmetryViolation: return "SymmetryViolation";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNotTracePreserving: return "NotTracePreserving";
    case ErrorCode::kNotPseudoStochastic: return "NotPseudoStochastic";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kNotGeneratorShaped: return "NotGeneratorShaped";
    case ErrorCode::kTargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::kBracketNotFound: return "BracketNotFound";
    case ErrorCode::kInfeasibleParameters: return "InfeasibleParameters";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

namespace linalg {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

RMatrix kron(const RMatrix& a, const RMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

RVector kron(const RVector& a, const RVector& b) {
  RVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())) <= tol;
}

double min_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  // Tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum();
}

double trace_product_real(const CMatrix& a, const CMatrix& b) {
  return trace_product(a, b).real();
}

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

RMatrix expm(const RMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorCode::kShapeMismatch, "expm of a non-square matrix");
  return a.exp().eval();
}

bool expm_eigen(const RMatrix& a, RMatrix& out, double max_condition) {
  Eigen::EigenSolver<RMatrix> es(a);
  if (es.info() != Eigen::Success) return false;
  const CMatrix v = es.eigenvectors();
  Eigen::JacobiSVD<CMatrix> svd(v);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > max_condition) return false;
  const CVector expd = es.eigenvalues().array().exp();
  const CMatrix res = v * expd.asDiagonal() * v.inverse();
  out = res.real();
  return true;
}

CMatrix complex_from_interleaved(std::span<const double> data, int rows, int cols) {
  if (data.size() != static_cast<size_t>(2 * rows * cols)) {
    fail(ErrorCode::kShapeMismatch, "interleaved buffer has wrong length");
  }
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const size_t k = 2 * static_cast<size_t>(r * cols + c);
      m(r, c) = Complex(data[k], data[k + 1]);
    }
  }
  return m;
}

void complex_to_interleaved(const CMatrix& m, std::span<double> out) {
  if (out.size() != static_cast<size_t>(2 * m.size())) {
    fail(ErrorCode::kShapeMismatch, "interleaved buffer has wrong length");
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const size_t k = 2 * static_cast<size_t>(r * m.cols() + c);
      out[k] = m(r, c).real();
      out[k + 1] = m(r, c).imag();
    }
  }
}

}  // namespace linalg
}  // namespace micprob
