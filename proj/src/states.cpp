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

#include "micprob/states.hpp"

#include <cmath>
#include <sstream>

#include "micprob/linalg.hpp"

namespace micprob {

namespace {

// Coefficients below this (after rescaling eigenvalues to order one) are
// rounding noise.
constexpr double kCoeffFloor = 1e-13;

void require_same_frame(const FramePtr& a, const FramePtr& b) {
  if (!same_frame(a, b)) fail(ErrorCode::kFrameMismatch, "vectors refer to different frames");
}

// Leading principal minors of the Hurwitz matrix of
// b_0 x^n + b_1 x^{n-1} + ... + b_n; entry (i, j) is b_{2j - i} (1-based).
std::vector<double> hurwitz_minors(const std::vector<double>& b, int degree) {
  auto coeff = [&](int k) { return (k < 0 || k > degree) ? 0.0 : b[k]; };
  RMatrix h(degree, degree);
  for (int i = 1; i <= degree; ++i) {
    for (int j = 1; j <= degree; ++j) h(i - 1, j - 1) = coeff(2 * j - i);
  }
  std::vector<double> minors;
  minors.reserve(degree);
  for (int k = 1; k <= degree; ++k) {
    minors.push_back(h.topLeftCorner(k, k).partialPivLu().determinant());
  }
  return minors;
}

}  // namespace

ProbVector::ProbVector(FramePtr f, RVector v) : frame(std::move(f)), p(std::move(v)) {
  if (!frame) fail(ErrorCode::kInvalidArgument, "probability vector without a frame");
  if (p.size() != frame->size()) {
    std::ostringstream os;
    os << "vector of length " << p.size() << " for a frame with " << frame->size() << " effects";
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
}

ProbVector to_prob(const CMatrix& rho, const FramePtr& frame) {
  return ProbVector(frame, frame->coordinates(rho).real());
}

CMatrix from_prob(const ProbVector& p) { return p.frame->reconstruct(p.p); }

double hs_inner(const ProbVector& s, const ProbVector& p) {
  require_same_frame(s.frame, p.frame);
  return s.p.dot(s.frame->gram_inverse() * p.p);
}

CVector star(const FramePtr& frame, const CVector& s, const CVector& p) {
  const int n = frame->size();
  if (s.size() != n || p.size() != n) {
    fail(ErrorCode::kDimensionMismatch, "star product operands do not match the frame");
  }
  const auto& lambda = frame->lambda();
  CVector out(n);
  // Lambda^(k) is indexed (n, m) with s on the first slot and p on the
  // second, so the contraction is s^T Lambda^(k) p.
  for (int k = 0; k < n; ++k) out(k) = s.transpose() * lambda[k] * p;
  return out;
}

CVector star(const ProbVector& s, const ProbVector& p) {
  require_same_frame(s.frame, p.frame);
  return star(s.frame, s.p.cast<Complex>(), p.p.cast<Complex>());
}

std::vector<double> power_traces(const FramePtr& frame, const RVector& p) {
  const int d = frame->dim();
  std::vector<double> a;
  a.reserve(d);
  const CVector base = p.cast<Complex>();
  CVector power = base;
  a.push_back(power.sum().real());
  for (int n = 2; n <= d; ++n) {
    power = star(frame, base, power);
    a.push_back(power.sum().real());
  }
  return a;
}

std::vector<double> power_traces(const ProbVector& p) { return power_traces(p.frame, p.p); }

std::vector<double> char_poly_coeffs(const std::vector<double>& a) {
  const int d = static_cast<int>(a.size());
  std::vector<double> b(d + 1, 0.0);
  b[0] = 1.0;
  for (int n = 1; n <= d; ++n) {
    double acc = 0.0;
    double sign = 1.0;
    for (int i = 1; i <= n; ++i) {
      acc += sign * b[n - i] * a[i - 1];
      sign = -sign;
    }
    b[n] = acc / n;
  }
  return b;
}

PhysicalityVerdict positivity_from_power_sums(const std::vector<double>& a, double tol) {
  PhysicalityVerdict v;
  const int d = static_cast<int>(a.size());

  double scale = 0.0;
  for (int n = 1; n <= d; ++n) scale = std::max(scale, std::pow(std::abs(a[n - 1]), 1.0 / n));
  if (scale == 0.0 || !std::isfinite(scale)) {
    v.poly_coeffs.assign(d + 1, 0.0);
    v.poly_coeffs[0] = 1.0;
    v.is_physical = std::isfinite(scale);
    v.boundary = v.is_physical;
    if (!v.is_physical) v.failure_reason = "power sums are not finite";
    return v;
  }
  std::vector<double> scaled(d);
  for (int n = 1; n <= d; ++n) scaled[n - 1] = a[n - 1] / std::pow(scale, n);
  const std::vector<double> b = char_poly_coeffs(scaled);

  v.poly_coeffs.resize(d + 1);
  for (int k = 0; k <= d; ++k) v.poly_coeffs[k] = b[k] * std::pow(scale, k);

  // Trailing coefficients that vanish encode zero eigenvalues. b_k / b_{k-1}
  // estimates the smallest remaining eigenvalue, so the cut is on the
  // eigenvalue scale.
  int degree = d;
  while (degree > 0) {
    const double bk = std::abs(b[degree]);
    if (bk <= kCoeffFloor || bk <= tol * std::abs(b[degree - 1])) {
      --degree;
    } else {
      break;
    }
  }
  v.effective_degree = degree;
  v.boundary = degree < d;
  if (degree == 0) {
    v.is_physical = true;
    return v;
  }
  v.minors = hurwitz_minors(b, degree);
  v.is_physical = true;
  for (int i = 0; i < degree; ++i) {
    if (!(v.minors[i] > 0.0)) {
      v.is_physical = false;
      std::ostringstream os;
      os << "Hurwitz minor Delta_" << (i + 1) << " = " << v.minors[i] << " is not positive";
      v.failure_reason = os.str();
      break;
    }
  }
  return v;
}

PhysicalityVerdict is_physical(const ProbVector& p, double tol) {
  const double total = p.p.sum();
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream os;
    os << "components sum to " << total;
    fail(ErrorCode::kNotNormalized, os.str());
  }
  return positivity_from_power_sums(power_traces(p), tol);
}

PhysicalityVerdict is_positive_unnormalized(const FramePtr& frame, const RVector& p, double tol) {
  if (p.size() != frame->size()) fail(ErrorCode::kDimensionMismatch, "vector does not match the frame");
  return positivity_from_power_sums(power_traces(frame, p), tol);
}

bool is_pure(const ProbVector& p, double tol) {
  const CVector sq = star(p, p);
  return (sq - p.p.cast<Complex>()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace micprob
