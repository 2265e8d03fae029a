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

#include <functional>
#include <optional>
#include <vector>

#include "micprob/states.hpp"

namespace micprob {

/// S_lk = Tr(E^out_l Phi(e^in_k)); p_out = S p_in. Columns sum to one for a
/// trace-preserving Phi, entries may be negative.
struct PseudoStochasticMap {
  FramePtr in_frame;
  FramePtr out_frame;
  RMatrix matrix;
};

struct KrausChannel {
  std::vector<CMatrix> ops;  // V_n, d_out x d_in
};

using LinearMap = std::function<CMatrix(const CMatrix&)>;

/// Throws NotTracePreserving when sum V^dag V differs from I, or
/// DimensionMismatch.
PseudoStochasticMap kraus_to_map(const KrausChannel& channel, const FramePtr& in_frame,
                                 const FramePtr& out_frame, double tol = kDefaultTol);

/// S_lk = Tr(E^out_l Phi(e^in_k)) for any linear Phi; no checks.
PseudoStochasticMap linear_map_to_matrix(const LinearMap& phi, const FramePtr& in_frame,
                                         const FramePtr& out_frame);

/// Column sums equal one within tol.
bool is_pseudostochastic(const RMatrix& m, double tol = kDefaultTol);

ProbVector map_apply(const PseudoStochasticMap& s, const ProbVector& p);

/// Heisenberg image Phi*(M) = sum_kl S_kl Tr(e^out_k M) E^in_l.
CMatrix dual_map_action(const PseudoStochasticMap& s, const CMatrix& m_out);

PseudoStochasticMap tensor_maps(const PseudoStochasticMap& a, const PseudoStochasticMap& b);

/// Trace over the second factor: S_{l,(n m)} = delta_{l n}.
PseudoStochasticMap partial_trace_map(const FramePtr& frame_a, const FramePtr& frame_b);

/// Probability vector of (1/d) sum_nm |n><m| (x) |n><m| over frame (x) frame
/// by the Born rule.
ProbVector max_entangled_prob(const FramePtr& frame);

/// Closed form s_(nm) = (d delta_nm + 1) / (d^3 (d + 1)) of the same state
/// over conj(frame) (x) frame. Only valid for SIC frames; throws
/// SymmetryViolation otherwise.
ProbVector max_entangled_prob_conjugate_sic(const FramePtr& sic_frame);

/// p_S = (I (x) S) s with s over in (x) in; result lives on in (x) out.
ProbVector choi_prob(const PseudoStochasticMap& s, const ProbVector& max_entangled);

/// Inverse of choi_prob: S_lk = d_in sum_n Tr(e_n e_k^T) p_S(n, l).
PseudoStochasticMap map_from_choi(const ProbVector& choi, const FramePtr& in_frame,
                                  const FramePtr& out_frame);

/// Probability vectors p^(nm)_k = Tr(|psi_n><psi_m| E_k) of a matrix-unit
/// system built from a first ket (default |0>). Entries are complex for
/// n != m. Construction asserts the multiplicative relations
///   p^(nn) * p^(nn) = p^(nn),  sum_l (p^(kk) * p^(nn))_l = 0 (k != n),
///   p^(nn) * p^(nm) = p^(nm),  p^(nm) * p^(mm) = p^(nm),
/// and the vanishing of every other product.
struct MatrixUnitFrame {
  FramePtr frame;
  std::vector<CVector> kets;                 // psi_1 .. psi_d
  std::vector<std::vector<CVector>> units;   // units[n][m] = p^(nm)
};

MatrixUnitFrame build_matrix_unit_frame(const FramePtr& frame,
                                        const std::optional<CVector>& first = std::nullopt,
                                        double tol = 1e-9);

/// (1/d) sum_nm p^(nm) (x) S p^(nm).
ProbVector assemble_choi(const MatrixUnitFrame& units, const PseudoStochasticMap& s);

/// Complete positivity through the Choi probability vector. Throws
/// NotPseudoStochastic when columns do not sum to one.
PhysicalityVerdict is_cptp(const PseudoStochasticMap& s, double tol = kDefaultTol);

}  // namespace micprob
