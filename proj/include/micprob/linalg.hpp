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

#pragma once

#include <span>

#include "micprob/core.hpp"

namespace micprob::linalg {

// Kronecker product with row-major multi-index (i, j) -> i * rows(b) + j.
CMatrix kron(const CMatrix& a, const CMatrix& b);
RMatrix kron(const RMatrix& a, const RMatrix& b);
RVector kron(const RVector& a, const RVector& b);

bool is_hermitian(const CMatrix& m, double tol);
bool is_unitary(const CMatrix& m, double tol);

// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const CMatrix& m);

// Real trace of A*B without forming the product.
double trace_product_real(const CMatrix& a, const CMatrix& b);
Complex trace_product(const CMatrix& a, const CMatrix& b);

// Pauli matrices sigma^(1..3) and the identity.
CMatrix identity(int dim);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

// Matrix exponential of a real matrix by scaling and squaring with a
// degree-13 Pade approximant.
RMatrix expm(const RMatrix& a);

// Matrix exponential through an eigendecomposition. Returns false when the
// eigenvector matrix condition number exceeds max_condition.
bool expm_eigen(const RMatrix& a, RMatrix& out, double max_condition = 1e8);

// Maximum absolute entry.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Interleaved (re, im) buffer <-> complex square matrix, row-major.
CMatrix complex_from_interleaved(std::span<const double> data, int rows, int cols);
void complex_to_interleaved(const CMatrix& m, std::span<double> out);

}  // namespace micprob::linalg
