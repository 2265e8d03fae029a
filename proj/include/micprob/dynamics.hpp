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

#include <string>
#include <vector>

#include "micprob/measurements.hpp"

namespace micprob {

enum class GeneratorKind { kHamiltonian, kDissipator, kGksl };

const char* generator_kind_name(GeneratorKind kind);

/// Real d^2 x d^2 matrix with zero column sums: p'(t) = L p(t).
struct GeneratorMatrix {
  FramePtr frame;
  RMatrix matrix;
  GeneratorKind kind = GeneratorKind::kGksl;
};

/// Traceless Hermitian sigma^(i), i = 1..d^2-1, with Tr(sigma^(i) sigma^(j)) = 2 delta_ij.
using OperatorBasis = std::vector<CMatrix>;

/// Pauli matrices for d = 2, generalized Gell-Mann matrices otherwise.
OperatorBasis gell_mann_basis(int d);

/// Throws InvalidArgument if any of the three basis conditions fails.
void validate_basis(const OperatorBasis& basis, int d, double tol = kDefaultTol);

/// nu_0 = Tr(H)/d, nu_i = Tr(H sigma^(i))/2.
std::vector<double> hamiltonian_coeffs(const CMatrix& h, const OperatorBasis& basis);

/// H_lk = i Tr(H [E_l, e_k]). Throws NotHermitian.
GeneratorMatrix hamiltonian_generator(const CMatrix& h, const FramePtr& frame,
                                      double tol = kDefaultTol);

/// exp(L t) as a map on the generator's frame.
PseudoStochasticMap propagator(const GeneratorMatrix& l, double t);

/// exp(H t) for a Hamiltonian generator; cross-checked against an
/// eigendecomposition exponential when that route is well conditioned.
/// Throws InvalidArgument for other kinds and Internal when the two
/// exponentials disagree beyond 1e-9.
PseudoStochasticMap unitary_map(const GeneratorMatrix& h, double t);

/// H^(i)_lk = i Tr(sigma^(i) [E_l, e_k]).
std::vector<GeneratorMatrix> basis_generators(const FramePtr& frame, const OperatorBasis& basis);

/// P(M) = -(1 / 4d) sum_i Tr(M H^(i)) H^(i).
GeneratorMatrix project_unitary(const RMatrix& m, const FramePtr& frame, const OperatorBasis& basis);

/// Dissipator for noise operators A_k:
///   D_ij = S_ij - sum_kl S_kl Re(LambdaTilde^(j)_il),
/// where S represents Psi(X) = sum_k A_k X A_k^dag.
GeneratorMatrix dissipator_matrix(const std::vector<CMatrix>& noise_ops, const FramePtr& frame);

/// H + D. Throws NotHermitian.
GeneratorMatrix gksl_generator(const CMatrix& h, const std::vector<CMatrix>& noise_ops,
                               const FramePtr& frame, double tol = kDefaultTol);

/// exp(L t) p0. Throws FrameMismatch, InvalidArgument for t < 0 on a
/// dissipative generator.
ProbVector evolve(const GeneratorMatrix& l, const ProbVector& p0, double t);

enum class GeneratorCheckForm {
  kFull,            // (I (x) L) applied to s
  kDissipatorOnly,  // L minus its unitary projection
};

struct GeneratorVerdict {
  bool valid = false;
  PhysicalityVerdict positivity;
  RVector p_check;  // probability vector of P (Id (x) L)(sigma) P over E (x) E
};

/// Conditional complete positivity in probability space:
///   pbar_s * (I (x) L) s * pbar_s >= 0,  pbar_s(ij) = kappa_i kappa_j - s_(ij).
/// Throws NotGeneratorShaped when a column sum differs from zero.
GeneratorVerdict is_gksl_generator(const GeneratorMatrix& l,
                                   GeneratorCheckForm form = GeneratorCheckForm::kFull,
                                   double tol = kDefaultTol);

/// M exp(L t) for measurement rows or an observable mean row.
RMatrix heisenberg_evolve(const RMatrix& m, const GeneratorMatrix& l, double t);

/// Single-qubit reference channels, parameterized by x = t / tau (or
/// omega t for rotations).
enum class ReferenceChannel {
  kIdentity,
  kDepolarization,
  kDephasing,
  kDamping,
  kRotationX,
  kRotationY,
  kRotationZ,
};

const std::vector<ReferenceChannel>& reference_channels();
const char* reference_channel_name(ReferenceChannel c);

/// Kraus operators of the channel. Depolarization relaxes to I/2, dephasing
/// damps coherences by e^{-x}, damping decays |1> to |0>, rotations are
/// exp(-i x sigma / 2).
KrausChannel reference_kraus(ReferenceChannel c, double x);

}  // namespace micprob
