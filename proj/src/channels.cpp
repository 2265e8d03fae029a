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

#include "micprob/channels.hpp"

#include <cmath>
#include <sstream>

#include "micprob/linalg.hpp"

namespace micprob {

PseudoStochasticMap linear_map_to_matrix(const LinearMap& phi, const FramePtr& in_frame,
                                         const FramePtr& out_frame) {
  const int nin = in_frame->size();
  const int nout = out_frame->size();
  RMatrix s(nout, nin);
  for (int k = 0; k < nin; ++k) {
    const CMatrix img = phi(in_frame->dual(k));
    if (img.rows() != out_frame->dim() || img.cols() != out_frame->dim()) {
      fail(ErrorCode::kDimensionMismatch, "map output does not match the output frame");
    }
    for (int l = 0; l < nout; ++l) s(l, k) = linalg::trace_product_real(out_frame->effect(l), img);
  }
  return {in_frame, out_frame, std::move(s)};
}

PseudoStochasticMap kraus_to_map(const KrausChannel& channel, const FramePtr& in_frame,
                                 const FramePtr& out_frame, double tol) {
  if (channel.ops.empty()) fail(ErrorCode::kInvalidArgument, "Kraus channel without operators");
  const int din = in_frame->dim();
  const int dout = out_frame->dim();
  CMatrix completeness = CMatrix::Zero(din, din);
  for (const auto& v : channel.ops) {
    if (v.rows() != dout || v.cols() != din) {
      fail(ErrorCode::kDimensionMismatch, "Kraus operator shape does not match the frames");
    }
    completeness += v.adjoint() * v;
  }
  const double dev = linalg::max_abs(completeness - CMatrix::Identity(din, din));
  if (dev > tol) {
    std::ostringstream os;
    os << "sum V^dag V deviates from identity by " << dev;
    fail(ErrorCode::kNotTracePreserving, os.str());
  }
  const auto phi = [&channel, dout](const CMatrix& x) {
    CMatrix out = CMatrix::Zero(dout, dout);
    for (const auto& v : channel.ops) out += v * x * v.adjoint();
    return out;
  };
  return linear_map_to_matrix(phi, in_frame, out_frame);
}

bool is_pseudostochastic(const RMatrix& m, double tol) {
  if (m.size() == 0) return false;
  return (m.colwise().sum().array() - 1.0).abs().maxCoeff() <= tol;
}

ProbVector map_apply(const PseudoStochasticMap& s, const ProbVector& p) {
  if (!same_frame(s.in_frame, p.frame)) {
    fail(ErrorCode::kFrameMismatch, "state frame differs from the map input frame");
  }
  return ProbVector(s.out_frame, s.matrix * p.p);
}

CMatrix dual_map_action(const PseudoStochasticMap& s, const CMatrix& m_out) {
  const int d = s.out_frame->dim();
  if (m_out.rows() != d || m_out.cols() != d) {
    fail(ErrorCode::kDimensionMismatch, "operator does not match the output frame");
  }
  // Complex coefficients so that non-Hermitian observables map correctly.
  CVector ci(s.out_frame->size());
  for (int k = 0; k < ci.size(); ++k) ci(k) = linalg::trace_product(s.out_frame->dual(k), m_out);
  const CVector w = s.matrix.transpose().cast<Complex>() * ci;
  CMatrix out = CMatrix::Zero(s.in_frame->dim(), s.in_frame->dim());
  for (int l = 0; l < w.size(); ++l) out += w(l) * s.in_frame->effect(l);
  return out;
}

PseudoStochasticMap tensor_maps(const PseudoStochasticMap& a, const PseudoStochasticMap& b) {
  return {product_frame(a.in_frame, b.in_frame), product_frame(a.out_frame, b.out_frame),
          linalg::kron(a.matrix, b.matrix)};
}

PseudoStochasticMap partial_trace_map(const FramePtr& frame_a, const FramePtr& frame_b) {
  const int na = frame_a->size();
  const int nb = frame_b->size();
  RMatrix s = RMatrix::Zero(na, na * nb);
  for (int n = 0; n < na; ++n) s.block(n, n * nb, 1, nb).setOnes();
  return {product_frame(frame_a, frame_b), frame_a, std::move(s)};
}

namespace {

CMatrix max_entangled_operator(int d) {
  CVector phi = CVector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k) phi(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  return phi * phi.adjoint();
}

}  // namespace

ProbVector max_entangled_prob(const FramePtr& frame) {
  return to_prob(max_entangled_operator(frame->dim()), product_frame(frame, frame));
}

ProbVector max_entangled_prob_conjugate_sic(const FramePtr& sic) {
  const int d = sic->dim();
  const double dd = d;
  const double expected_diag = (dd + 1.0) / (dd * dd * (dd + 1.0));
  const double expected_off = 1.0 / (dd * dd * (dd + 1.0));
  for (int n = 0; n < sic->size(); ++n) {
    for (int m = 0; m < sic->size(); ++m) {
      const double expect = n == m ? expected_diag : expected_off;
      if (std::abs(sic->gram()(n, m) - expect) > sic->tol()) {
        fail(ErrorCode::kSymmetryViolation, "frame is not a SIC-POVM");
      }
    }
  }
  const int n2 = sic->size();
  RVector s(static_cast<Eigen::Index>(n2) * n2);
  for (int n = 0; n < n2; ++n) {
    for (int m = 0; m < n2; ++m) {
      s(n * n2 + m) = (n == m ? dd + 1.0 : 1.0) / (dd * dd * dd * (dd + 1.0));
    }
  }
  return ProbVector(product_frame(sic->conjugate(), sic), std::move(s));
}

ProbVector choi_prob(const PseudoStochasticMap& s, const ProbVector& max_entangled) {
  const FramePtr ref = s.in_frame;
  if (!same_frame(max_entangled.frame, product_frame(ref, ref))) {
    fail(ErrorCode::kFrameMismatch, "entangled vector is not over in (x) in");
  }
  const int nin = ref->size();
  const int nout = s.out_frame->size();
  RVector out(static_cast<Eigen::Index>(nin) * nout);
  for (int n = 0; n < nin; ++n) {
    out.segment(n * nout, nout) = s.matrix * max_entangled.p.segment(n * nin, nin);
  }
  return ProbVector(product_frame(ref, s.out_frame), std::move(out));
}

PseudoStochasticMap map_from_choi(const ProbVector& choi, const FramePtr& in_frame,
                                  const FramePtr& out_frame) {
  const int nin = in_frame->size();
  const int nout = out_frame->size();
  if (choi.size() != nin * nout) fail(ErrorCode::kDimensionMismatch, "Choi vector length mismatch");
  // g(k, n) = Tr(e_n e_k^T)
  RMatrix g(nin, nin);
  for (int k = 0; k < nin; ++k) {
    const CMatrix ekt = in_frame->dual(k).transpose();
    for (int n = 0; n < nin; ++n) g(k, n) = linalg::trace_product(in_frame->dual(n), ekt).real();
  }
  RMatrix s(nout, nin);
  const double d = in_frame->dim();
  for (int l = 0; l < nout; ++l) {
    for (int k = 0; k < nin; ++k) {
      double acc = 0.0;
      for (int n = 0; n < nin; ++n) acc += g(k, n) * choi.p(n * nout + l);
      s(l, k) = d * acc;
    }
  }
  return {in_frame, out_frame, std::move(s)};
}

MatrixUnitFrame build_matrix_unit_frame(const FramePtr& frame, const std::optional<CVector>& first,
                                        double tol) {
  const int d = frame->dim();
  CVector psi1 = first.value_or(CVector::Unit(d, 0));
  if (psi1.size() != d) fail(ErrorCode::kDimensionMismatch, "first ket does not match the frame");
  if (psi1.norm() == 0.0) fail(ErrorCode::kInvalidArgument, "first ket is zero");
  psi1.normalize();

  // Gram-Schmidt completion against the computational basis.
  std::vector<CVector> kets{psi1};
  for (int j = 0; j < d && static_cast<int>(kets.size()) < d; ++j) {
    CVector v = CVector::Unit(d, j);
    for (const auto& k : kets) v -= k.dot(v) * k;
    if (v.norm() > 1e-6) kets.push_back(v.normalized());
  }

  MatrixUnitFrame out;
  out.frame = frame;
  out.kets = kets;
  out.units.assign(d, std::vector<CVector>(d));
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) out.units[n][m] = frame->coordinates(kets[n] * kets[m].adjoint());
  }

  auto check = [&](bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::kInternal, "matrix-unit relation violated: " + what);
  };
  auto close = [&](const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff() <= tol; };
  const CVector zero = CVector::Zero(frame->size());
  for (int n = 0; n < d; ++n) {
    const CVector& pnn = out.units[n][n];
    check(std::abs(pnn.sum() - 1.0) <= tol, "normalization");
    check(close(star(frame, pnn, pnn), pnn), "purity");
    for (int k = 0; k < n; ++k) {
      check(std::abs(star(frame, out.units[k][k], pnn).sum()) <= tol, "orthogonality");
    }
  }
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      if (n == m) continue;
      const CVector& pnm = out.units[n][m];
      check(close(star(frame, out.units[n][n], pnm), pnm), "left unit");
      check(close(star(frame, pnm, out.units[m][m]), pnm), "right unit");
      check(close(star(frame, pnm, pnm), zero), "nilpotency");
      for (int k = 0; k < d; ++k) {
        if (k != m) check(close(star(frame, pnm, out.units[k][k]), zero), "right annihilation");
        if (k != n) check(close(star(frame, out.units[k][k], pnm), zero), "left annihilation");
      }
    }
  }
  return out;
}

ProbVector assemble_choi(const MatrixUnitFrame& units, const PseudoStochasticMap& s) {
  if (!same_frame(units.frame, s.in_frame)) {
    fail(ErrorCode::kFrameMismatch, "matrix units and map input use different frames");
  }
  const int d = units.frame->dim();
  const int nin = s.in_frame->size();
  const int nout = s.out_frame->size();
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(nin) * nout);
  const CMatrix sc = s.matrix.cast<Complex>();
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      const CVector& pnm = units.units[n][m];
      const CVector img = sc * pnm;
      for (int i = 0; i < nin; ++i) acc.segment(i * nout, nout) += pnm(i) * img;
    }
  }
  return ProbVector(product_frame(s.in_frame, s.out_frame), acc.real() / d);
}

PhysicalityVerdict is_cptp(const PseudoStochasticMap& s, double tol) {
  if (!is_pseudostochastic(s.matrix, tol)) {
    fail(ErrorCode::kNotPseudoStochastic, "columns of the map do not sum to one");
  }
  const ProbVector choi = choi_prob(s, max_entangled_prob(s.in_frame));
  return is_physical(choi, tol);
}

}  // namespace micprob
