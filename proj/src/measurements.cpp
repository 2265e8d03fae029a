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


#include "micprob/measurements.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "micprob/linalg.hpp"

namespace micprob {

MeasurementMap povm_to_map(const std::vector<CMatrix>& effects, const FramePtr& frame, double tol) {
  const int d = frame->dim();
  if (effects.empty()) fail(ErrorCode::kInvalidArgument, "POVM without effects");
  CMatrix total = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < effects.size(); ++i) {
    const CMatrix& e = effects[i];
    if (e.rows() != d || e.cols() != d) fail(ErrorCode::kDimensionMismatch, "effect does not match the frame");
    if (!linalg::is_hermitian(e, tol)) fail(ErrorCode::kNotHermitian, "effect is not Hermitian");
    const double lmin = linalg::min_eigenvalue(e);
    if (lmin < -tol) {
      std::ostringstream os;
      os << "effect " << i << " has eigenvalue " << lmin;
      fail(ErrorCode::kNotPositive, os.str());
    }
    total += e;
  }
  if (linalg::max_abs(total - CMatrix::Identity(d, d)) > tol) {
    fail(ErrorCode::kNotNormalized, "effects do not sum to the identity");
  }
  MeasurementMap m{frame, RMatrix(effects.size(), frame->size()), {}};
  for (std::size_t i = 0; i < effects.size(); ++i) {
    for (int j = 0; j < frame->size(); ++j) {
      m.matrix(i, j) = linalg::trace_product_real(effects[i], frame->dual(j));
    }
    m.labels.push_back(std::to_string(i));
  }
  return m;
}

std::vector<CMatrix> map_to_povm(const MeasurementMap& m) {
  std::vector<CMatrix> out;
  out.reserve(m.matrix.rows());
  for (int i = 0; i < m.matrix.rows(); ++i) out.push_back(m.frame->combine_effects(m.matrix.row(i).transpose()));
  return out;
}

RVector outcome_probs(const MeasurementMap& m, const ProbVector& p) {
  if (!same_frame(m.frame, p.frame)) fail(ErrorCode::kFrameMismatch, "measurement and state frames differ");
  return m.matrix * p.p;
}

CVector circled_star(const FramePtr& frame, const CVector& lambda, const CVector& mu) {
  const int n = frame->size();
  if (lambda.size() != n || mu.size() != n) {
    fail(ErrorCode::kDimensionMismatch, "operands do not match the frame");
  }
  const auto& lt = frame->lambda_tilde();
  CVector out(n);
  for (int k = 0; k < n; ++k) out(k) = lambda.transpose() * lt[k] * mu;
  return out;
}

std::vector<double> effect_power_traces(const FramePtr& frame, const RVector& row) {
  const RVector& kappa = frame->trace_vector();
  const CVector base = row.cast<Complex>();
  CVector power = base;
  std::vector<double> a;
  a.push_back(row.dot(kappa));
  for (int j = 2; j <= frame->dim(); ++j) {
    power = circled_star(frame, power, base);
    a.push_back((power.transpose() * kappa.cast<Complex>()).value().real());
  }
  return a;
}

MeasurementVerdict is_valid_measurement(const MeasurementMap& m, double tol) {
  if (!is_pseudostochastic(m.matrix, tol)) {
    fail(ErrorCode::kNotPseudoStochastic, "columns of the measurement matrix do not sum to one");
  }
  MeasurementVerdict v;
  v.valid = true;
  for (int i = 0; i < m.matrix.rows(); ++i) {
    v.rows.push_back(positivity_from_power_sums(effect_power_traces(m.frame, m.matrix.row(i).transpose()), tol));
    v.valid = v.valid && v.rows.back().is_physical;
  }
  return v;
}

Observable make_observable(std::vector<double> values, MeasurementMap map) {
  if (static_cast<Eigen::Index>(values.size()) != map.matrix.rows()) {
    fail(ErrorCode::kShapeMismatch, "one value per outcome is required");
  }
  Observable o{std::move(values), std::move(map), {}};
  const Eigen::Map<const RVector> x(o.values.data(), static_cast<Eigen::Index>(o.values.size()));
  o.mean_row = x.transpose() * o.map.matrix;
  return o;
}

Observable observable_from_operator(const CMatrix& op, const FramePtr& frame, double tol) {
  if (op.rows() != frame->dim() || op.cols() != frame->dim()) {
    fail(ErrorCode::kDimensionMismatch, "observable does not match the frame");
  }
  if (!linalg::is_hermitian(op, tol)) fail(ErrorCode::kNotHermitian, "observable is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (op + op.adjoint()));
  const RVector& ev = es.eigenvalues();
  std::vector<double> values;
  std::vector<CMatrix> projectors;
  for (int i = 0; i < ev.size(); ++i) {
    const CVector v = es.eigenvectors().col(i);
    if (!values.empty() && std::abs(ev(i) - values.back()) <= tol) {
      projectors.back() += v * v.adjoint();
    } else {
      values.push_back(ev(i));
      projectors.push_back(v * v.adjoint());
    }
  }
  return make_observable(std::move(values), povm_to_map(projectors, frame, 1e-8));
}

double observable_mean(const Observable& o, const ProbVector& p) {
  if (!same_frame(o.map.frame, p.frame)) fail(ErrorCode::kFrameMismatch, "observable and state frames differ");
  return (o.mean_row * p.p)(0);
}

}  // namespace micprob
