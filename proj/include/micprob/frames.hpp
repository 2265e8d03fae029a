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

#include <memory>
#include <mutex>
#include <vector>

#include "micprob/core.hpp"

namespace micprob {

class Frame;
using FramePtr = std::shared_ptr<const Frame>;

/// A minimal informationally complete POVM together with everything derived
/// from it: Gram matrix T_nm = Tr(E_n E_m), its inverse, the dual basis
/// e_l = sum_k (T^-1)_lk E_k and the trace vector kappa_k = Tr(E_k).
///
/// Frames are immutable. The structure tensors
///   Lambda^(k)_nm       = Tr(e_n e_m E_k)
///   LambdaTilde^(k)_nm  = Tr(E_n E_m e_k)
/// are filled lazily on first use and then shared by every reader. Both are
/// Hermitian in (n, m); they are real only when the corresponding operators
/// commute, so they are stored as complex matrices.
class Frame {
 public:
  /// Validates positivity, completeness and linear independence of the
  /// effects. Throws NotPositive, NotNormalized or FrameSingular.
  static FramePtr from_effects(std::vector<CMatrix> effects, double tol = kDefaultTol);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(effects_.size()); }
  double tol() const noexcept { return tol_; }

  const std::vector<CMatrix>& effects() const noexcept { return effects_; }
  const std::vector<CMatrix>& duals() const noexcept { return duals_; }
  const CMatrix& effect(int k) const { return effects_.at(k); }
  const CMatrix& dual(int k) const { return duals_.at(k); }

  const RMatrix& gram() const noexcept { return gram_; }
  const RMatrix& gram_inverse() const noexcept { return gram_inverse_; }
  const RVector& trace_vector() const noexcept { return trace_vector_; }
  double gram_condition() const noexcept { return gram_condition_; }

  const std::vector<CMatrix>& lambda() const;
  const std::vector<CMatrix>& lambda_tilde() const;

  /// Entrywise complex conjugate of every effect (computational basis).
  FramePtr conjugate() const;

  /// Same dimension and effects equal entrywise within tolerance.
  bool same_as(const Frame& other) const;

  /// Probability vector of an operator: p_k = Tr(X E_k). Complex for
  /// non-Hermitian X.
  CVector coordinates(const CMatrix& op) const;

  /// Expansion coefficients over the effects: lambda_k = Tr(e_k X).
  CVector effect_coordinates(const CMatrix& op) const;

  /// sum_k p_k e_k
  CMatrix reconstruct(const CVector& p) const;
  CMatrix reconstruct(const RVector& p) const;

  /// sum_k c_k E_k
  CMatrix combine_effects(const RVector& c) const;

 private:
  Frame() = default;

  int dim_ = 0;
  double tol_ = kDefaultTol;
  std::vector<CMatrix> effects_;
  std::vector<CMatrix> duals_;
  RMatrix gram_;
  RMatrix gram_inverse_;
  RVector trace_vector_;
  double gram_condition_ = 0.0;

  mutable std::once_flag lambda_once_;
  mutable std::once_flag lambda_tilde_once_;
  mutable std::vector<CMatrix> lambda_;
  mutable std::vector<CMatrix> lambda_tilde_;
};

bool same_frame(const FramePtr& a, const FramePtr& b);

/// Tetrahedral qubit SIC-POVM E_k = I/4 + (sqrt(3)/12) n_k . sigma with
/// n_1 = (-1, 1, 1), n_2 = (1, -1, 1), n_3 = (1, 1, -1), n_4 = (-1, -1, -1).
FramePtr build_sic_qubit();

/// SIC-POVM from d^2 fiducial kets satisfying
/// |<psi_k|psi_l>|^2 = (d delta_kl + 1) / (d + 1); effects are |psi><psi| / d.
/// Throws SymmetryViolation or FrameSingular.
FramePtr build_sic_from_fiducials(const std::vector<CVector>& kets, double tol = kDefaultTol);

/// Validating constructor for an arbitrary MIC-POVM.
FramePtr build_mic_from_effects(std::vector<CMatrix> effects, double tol = kDefaultTol);

/// Product frame {E^A_i (x) E^B_j}, effect index i * |B| + j.
FramePtr tensor(const FramePtr& a, const FramePtr& b);

/// Memoized tensor(a, b) for frames that are combined repeatedly (Choi
/// vectors, generator checks). Returns the same pointer while a and b live.
FramePtr product_frame(const FramePtr& a, const FramePtr& b);

/// Trivial frame of the one-dimensional Hilbert space.
FramePtr trivial_frame();

struct FrameTransition {
  FramePtr source;  // F
  FramePtr target;  // E
  RMatrix matrix;   // (M_E^[F])_mn = Tr(E_m f_n); p^[E] = M p^[F]
};

/// Throws DimensionMismatch when the frames live on different spaces.
FrameTransition transition_matrix(const FramePtr& target, const FramePtr& source);

}  // namespace micprob
