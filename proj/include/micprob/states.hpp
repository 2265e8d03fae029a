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

#include <optional>
#include <string>
#include <vector>

#include "micprob/frames.hpp"

namespace micprob {

/// A state written as its Born-rule distribution over a MIC-POVM.
struct ProbVector {
  FramePtr frame;
  RVector p;

  ProbVector() = default;
  ProbVector(FramePtr f, RVector v);

  int size() const noexcept { return static_cast<int>(p.size()); }
};

/// Result of the spectrum-free positivity test.
struct PhysicalityVerdict {
  bool is_physical = false;
  // Zero eigenvalues were stripped; the operator sits on the boundary of
  // the positive cone within tolerance.
  bool boundary = false;
  int effective_degree = 0;
  std::vector<double> poly_coeffs;  // b_0 .. b_d
  std::vector<double> minors;       // Delta_1 .. Delta_d'
  std::optional<std::string> failure_reason;
};

ProbVector to_prob(const CMatrix& rho, const FramePtr& frame);
CMatrix from_prob(const ProbVector& p);

/// Tr(rho sigma) = s^T T^-1 p. Throws FrameMismatch.
double hs_inner(const ProbVector& s, const ProbVector& p);

/// (s * p)_k = Tr(sigma rho E_k) = sum_nm Lambda^(k)_nm s_n p_m, where sigma
/// and rho are the operators behind s and p. Complex unless sigma and rho
/// commute.
CVector star(const FramePtr& frame, const CVector& s, const CVector& p);
CVector star(const ProbVector& s, const ProbVector& p);

/// a_n = Tr(rho^n) = sum_l (p^{*n})_l for n = 1..d.
std::vector<double> power_traces(const ProbVector& p);

/// Same power sums for an arbitrary (possibly unnormalized) real vector.
std::vector<double> power_traces(const FramePtr& frame, const RVector& p);

/// Newton-Girard: b_0 = 1, b_n = (1/n) sum_{i=1..n} (-1)^{i-1} b_{n-i} a_i.
std::vector<double> char_poly_coeffs(const std::vector<double>& power_sums);

/// Routh-Hurwitz test that every eigenvalue encoded by the power sums is
/// nonnegative. No unit-trace assumption. `tol` is relative to the
/// eigenvalue scale.
PhysicalityVerdict positivity_from_power_sums(const std::vector<double>& power_sums,
                                              double tol = kDefaultTol);

/// Qplex membership. Throws NotNormalized when sum(p) differs from 1.
PhysicalityVerdict is_physical(const ProbVector& p, double tol = kDefaultTol);

/// Positivity of the operator sum_k p_k e_k without a normalization
/// requirement.
PhysicalityVerdict is_positive_unnormalized(const FramePtr& frame, const RVector& p,
                                            double tol = kDefaultTol);

/// p * p == p within tol.
bool is_pure(const ProbVector& p, double tol = kDefaultTol);

}  // namespace micprob
