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


#include "micprob/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "micprob/linalg.hpp"

namespace micprob {

namespace {

void require_generator_shape(const RMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.size() == 0) fail(ErrorCode::kNotGeneratorShaped, "generator must be square");
  const double dev = m.colwise().sum().cwiseAbs().maxCoeff();
  if (dev > tol) {
    std::ostringstream os;
    os << "generator column sums deviate from zero by " << dev;
    fail(ErrorCode::kNotGeneratorShaped, os.str());
  }
}

// i Tr(X [E_l, e_k]) for all l, k.
RMatrix commutator_generator(const CMatrix& x, const FramePtr& frame) {
  const int n = frame->size();
  RMatrix out(n, n);
  for (int k = 0; k < n; ++k) {
    const CMatrix& ek = frame->dual(k);
    const CMatrix comm = ek * x - x * ek;  // Tr(X [E_l, e_k]) = Tr(E_l [e_k, X])
    for (int l = 0; l < n; ++l) {
      out(l, k) = (Complex(0.0, 1.0) * linalg::trace_product(frame->effect(l), comm)).real();
    }
  }
  return out;
}

}  // namespace

const char* generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kHamiltonian: return "hamiltonian";
    case GeneratorKind::kDissipator: return "dissipator";
    case GeneratorKind::kGksl: return "gksl";
  }
  return "unknown";
}

OperatorBasis gell_mann_basis(int d) {
  if (d < 2) fail(ErrorCode::kInvalidArgument, "operator basis needs d >= 2");
  OperatorBasis basis;
  if (d == 2) return {linalg::pauli_x(), linalg::pauli_y(), linalg::pauli_z()};
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      CMatrix s = CMatrix::Zero(d, d);
      s(j, k) = s(k, j) = 1.0;
      basis.push_back(s);
      CMatrix a = CMatrix::Zero(d, d);
      a(j, k) = Complex(0.0, -1.0);
      a(k, j) = Complex(0.0, 1.0);
      basis.push_back(a);
    }
  }
  for (int l = 1; l < d; ++l) {
    CMatrix z = CMatrix::Zero(d, d);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) z(j, j) = c;
    z(l, l) = -l * c;
    basis.push_back(z);
  }
  return basis;
}

void validate_basis(const OperatorBasis& basis, int d, double tol) {
  if (static_cast<int>(basis.size()) != d * d - 1) {
    fail(ErrorCode::kInvalidArgument, "basis must contain d^2 - 1 operators");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].rows() != d || basis[i].cols() != d) fail(ErrorCode::kDimensionMismatch, "basis operator shape");
    if (!linalg::is_hermitian(basis[i], tol)) fail(ErrorCode::kInvalidArgument, "basis operator is not Hermitian");
    if (std::abs(basis[i].trace()) > tol) fail(ErrorCode::kInvalidArgument, "basis operator is not traceless");
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double expect = i == j ? 2.0 : 0.0;
      if (std::abs(linalg::trace_product(basis[i], basis[j]) - expect) > tol) {
        fail(ErrorCode::kInvalidArgument, "basis is not orthogonal with Tr(s_i s_j) = 2 delta_ij");
      }
    }
  }
}

std::vector<double> hamiltonian_coeffs(const CMatrix& h, const OperatorBasis& basis) {
  std::vector<double> nu{h.trace().real() / h.rows()};
  for (const auto& s : basis) nu.push_back(linalg::trace_product_real(h, s) / 2.0);
  return nu;
}

GeneratorMatrix hamiltonian_generator(const CMatrix& h, const FramePtr& frame, double tol) {
  if (h.rows() != frame->dim() || h.cols() != frame->dim()) {
    fail(ErrorCode::kDimensionMismatch, "Hamiltonian does not match the frame");
  }
  if (!linalg::is_hermitian(h, tol)) fail(ErrorCode::kNotHermitian, "Hamiltonian is not Hermitian");
  return {frame, commutator_generator(0.5 * (h + h.adjoint()), frame), GeneratorKind::kHamiltonian};
}

PseudoStochasticMap propagator(const GeneratorMatrix& l, double t) {
  return {l.frame, l.frame, linalg::expm(l.matrix * t)};
}

PseudoStochasticMap unitary_map(const GeneratorMatrix& h, double t) {
  if (h.kind != GeneratorKind::kHamiltonian) {
    fail(ErrorCode::kInvalidArgument, "unitary_map needs a Hamiltonian generator");
  }
  PseudoStochasticMap u = propagator(h, t);
  RMatrix alt;
  if (linalg::expm_eigen(h.matrix * t, alt)) {
    const double dev = linalg::max_abs(alt - u.matrix);
    if (dev > 1e-9) {
      std::ostringstream os;
      os << "matrix exponentials disagree by " << dev;
      fail(ErrorCode::kInternal, os.str());
    }
  }
  return u;
}

std::vector<GeneratorMatrix> basis_generators(const FramePtr& frame, const OperatorBasis& basis) {
  std::vector<GeneratorMatrix> out;
  out.reserve(basis.size());
  for (const auto& s : basis) {
    if (s.rows() != frame->dim()) fail(ErrorCode::kDimensionMismatch, "basis does not match the frame");
    out.push_back({frame, commutator_generator(s, frame), GeneratorKind::kHamiltonian});
  }
  return out;
}

GeneratorMatrix project_unitary(const RMatrix& m, const FramePtr& frame, const OperatorBasis& basis) {
  const int n = frame->size();
  if (m.rows() != n || m.cols() != n) fail(ErrorCode::kShapeMismatch, "matrix does not match the frame");
  RMatrix out = RMatrix::Zero(n, n);
  for (const auto& g : basis_generators(frame, basis)) out += (m * g.matrix).trace() * g.matrix;
  out *= -1.0 / (4.0 * frame->dim());
  return {frame, std::move(out), GeneratorKind::kHamiltonian};
}

GeneratorMatrix dissipator_matrix(const std::vector<CMatrix>& noise_ops, const FramePtr& frame) {
  const int n = frame->size();
  const int d = frame->dim();
  if (noise_ops.empty()) return {frame, RMatrix::Zero(n, n), GeneratorKind::kDissipator};
  for (const auto& a : noise_ops) {
    if (a.rows() != d || a.cols() != d) fail(ErrorCode::kDimensionMismatch, "noise operator does not match the frame");
  }
  const auto psi = [&noise_ops, d](const CMatrix& x) {
    CMatrix out = CMatrix::Zero(d, d);
    for (const auto& a : noise_ops) out += a * x * a.adjoint();
    return out;
  };
  const RMatrix s = linear_map_to_matrix(psi, frame, frame).matrix;
  // Psi*(I) = sum_l c_l E_l with c_l = Tr(Psi(e_l)).
  const RVector c = s.colwise().sum().transpose();
  const auto& lt = frame->lambda_tilde();
  RMatrix dmat(n, n);
  for (int j = 0; j < n; ++j) dmat.col(j) = s.col(j) - lt[j].real() * c;
  return {frame, std::move(dmat), GeneratorKind::kDissipator};
}

GeneratorMatrix gksl_generator(const CMatrix& h, const std::vector<CMatrix>& noise_ops,
                               const FramePtr& frame, double tol) {
  GeneratorMatrix g = hamiltonian_generator(h, frame, tol);
  g.matrix += dissipator_matrix(noise_ops, frame).matrix;
  g.kind = noise_ops.empty() ? GeneratorKind::kHamiltonian : GeneratorKind::kGksl;
  return g;
}

ProbVector evolve(const GeneratorMatrix& l, const ProbVector& p0, double t) {
  if (!same_frame(l.frame, p0.frame)) fail(ErrorCode::kFrameMismatch, "state and generator frames differ");
  if (t < 0.0 && l.kind != GeneratorKind::kHamiltonian) {
    fail(ErrorCode::kInvalidArgument, "dissipative evolution needs t >= 0");
  }
  return ProbVector(l.frame, linalg::expm(l.matrix * t) * p0.p);
}

GeneratorVerdict is_gksl_generator(const GeneratorMatrix& l, GeneratorCheckForm form, double tol) {
  require_generator_shape(l.matrix, std::max(tol, 1e-9) * std::max(1.0, linalg::max_abs(l.matrix)));
  const FramePtr& frame = l.frame;
  const int n = frame->size();
  RMatrix gen = l.matrix;
  if (form == GeneratorCheckForm::kDissipatorOnly) {
    gen -= project_unitary(l.matrix, frame, gell_mann_basis(frame->dim())).matrix;
  }
  const ProbVector s = max_entangled_prob(frame);
  const FramePtr pair = s.frame;
  const RVector& kappa = frame->trace_vector();
  const RVector pbar = linalg::kron(kappa, kappa) - s.p;

  // (I (x) L) s: L acts on the second factor of each block.
  RVector ls(n * n);
  for (int i = 0; i < n; ++i) ls.segment(i * n, n) = gen * s.p.segment(i * n, n);

  const CVector pb = pbar.cast<Complex>();
  const CVector sandwich = star(pair, star(pair, pb, ls.cast<Complex>()), pb);

  GeneratorVerdict v;
  v.p_check = sandwich.real();
  // P X P vanishes identically for a pure Hamiltonian; rounding residue on
  // the scale of the generator is not a spectrum.
  if (v.p_check.cwiseAbs().maxCoeff() <= tol * std::max(1.0, linalg::max_abs(l.matrix))) v.p_check.setZero();
  v.positivity = is_positive_unnormalized(pair, v.p_check, tol);
  v.valid = v.positivity.is_physical;
  return v;
}

RMatrix heisenberg_evolve(const RMatrix& m, const GeneratorMatrix& l, double t) {
  if (m.cols() != l.matrix.rows()) fail(ErrorCode::kShapeMismatch, "rows do not match the generator");
  return m * linalg::expm(l.matrix * t);
}

const std::vector<ReferenceChannel>& reference_channels() {
  static const std::vector<ReferenceChannel> all{
      ReferenceChannel::kIdentity,  ReferenceChannel::kDepolarization, ReferenceChannel::kDephasing,
      ReferenceChannel::kDamping,   ReferenceChannel::kRotationX,      ReferenceChannel::kRotationY,
      ReferenceChannel::kRotationZ};
  return all;
}

const char* reference_channel_name(ReferenceChannel c) {
  switch (c) {
    case ReferenceChannel::kIdentity: return "identity";
    case ReferenceChannel::kDepolarization: return "depolarization";
    case ReferenceChannel::kDephasing: return "dephasing";
    case ReferenceChannel::kDamping: return "damping";
    case ReferenceChannel::kRotationX: return "rotation-x";
    case ReferenceChannel::kRotationY: return "rotation-y";
    case ReferenceChannel::kRotationZ: return "rotation-z";
  }
  return "unknown";
}

KrausChannel reference_kraus(ReferenceChannel c, double x) {
  const CMatrix id = linalg::identity(2);
  const auto rotation = [x](const CMatrix& sigma) {
    // exp(-i x sigma / 2) for a Pauli matrix
    return CMatrix(std::cos(x / 2) * CMatrix::Identity(2, 2) - Complex(0.0, std::sin(x / 2)) * sigma);
  };
  switch (c) {
    case ReferenceChannel::kIdentity: return {{id}};
    case ReferenceChannel::kDepolarization: {
      const double q = std::exp(-x);
      const double w = (1.0 - q) / 4.0;
      return {{std::sqrt(q + w) * id, std::sqrt(w) * linalg::pauli_x(), std::sqrt(w) * linalg::pauli_y(),
               std::sqrt(w) * linalg::pauli_z()}};
    }
    case ReferenceChannel::kDephasing: {
      const double q = std::exp(-x);
      return {{std::sqrt((1.0 + q) / 2.0) * id, std::sqrt((1.0 - q) / 2.0) * linalg::pauli_z()}};
    }
    case ReferenceChannel::kDamping: {
      CMatrix k0 = CMatrix::Zero(2, 2);
      k0(0, 0) = 1.0;
      k0(1, 1) = std::exp(-x / 2.0);
      CMatrix k1 = CMatrix::Zero(2, 2);
      k1(0, 1) = std::sqrt(1.0 - std::exp(-x));
      return {{k0, k1}};
    }
    case ReferenceChannel::kRotationX: return {{rotation(linalg::pauli_x())}};
    case ReferenceChannel::kRotationY: return {{rotation(linalg::pauli_y())}};
    case ReferenceChannel::kRotationZ: return {{rotation(linalg::pauli_z())}};
  }
  fail(ErrorCode::kInvalidArgument, "unknown reference channel");
}

}  // namespace micprob
