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

#include "micprob/frames.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "micprob/linalg.hpp"

namespace micprob {

namespace {

// Rows are vec(A) for each operator A (row-major flattening).
CMatrix stack_rows(const std::vector<CMatrix>& ops) {
  const int d = static_cast<int>(ops.front().rows());
  CMatrix out(static_cast<Eigen::Index>(ops.size()), d * d);
  for (size_t k = 0; k < ops.size(); ++k) {
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) out(static_cast<Eigen::Index>(k), r * d + c) = ops[k](r, c);
    }
  }
  return out;
}

// S_(n,m),k = Tr(A_n A_m B_k), returned as one matrix per k.
std::vector<CMatrix> triple_traces(const std::vector<CMatrix>& a, const std::vector<CMatrix>& b) {
  const int n = static_cast<int>(a.size());
  const int d = static_cast<int>(a.front().rows());
  // Products stacked by row: vec(A_n A_m) . vec(B_k^T) = Tr(A_n A_m B_k).
  CMatrix prods(static_cast<Eigen::Index>(n) * n, d * d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CMatrix p = a[i] * a[j];
      for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) prods(i * n + j, r * d + c) = p(r, c);
      }
    }
  }
  std::vector<CMatrix> bt;
  bt.reserve(b.size());
  for (const auto& m : b) bt.push_back(m.transpose());
  const CMatrix traces = prods * stack_rows(bt).transpose();
  std::vector<CMatrix> out(b.size(), CMatrix(n, n));
  for (size_t k = 0; k < b.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out[k](i, j) = traces(i * n + j, static_cast<Eigen::Index>(k));
    }
  }
  return out;
}

}  // namespace

FramePtr Frame::from_effects(std::vector<CMatrix> effects, double tol) {
  if (effects.empty()) fail(ErrorCode::kInvalidArgument, "frame needs at least one effect");
  const auto d = effects.front().rows();
  if (static_cast<Eigen::Index>(effects.size()) != d * d) {
    std::ostringstream os;
    os << "a MIC-POVM on dimension " << d << " needs " << d * d << " effects, got "
       << effects.size();
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
  CMatrix sum = CMatrix::Zero(d, d);
  for (size_t k = 0; k < effects.size(); ++k) {
    const auto& e = effects[k];
    if (e.rows() != d || e.cols() != d) {
      fail(ErrorCode::kDimensionMismatch, "effect " + std::to_string(k) + " has the wrong shape");
    }
    if (!linalg::is_hermitian(e, tol)) {
      fail(ErrorCode::kNotPositive, "effect " + std::to_string(k) + " is not Hermitian");
    }
    const double lmin = linalg::min_eigenvalue(e);
    if (lmin < -tol) {
      std::ostringstream os;
      os << "effect " << k << " has eigenvalue " << lmin;
      fail(ErrorCode::kNotPositive, os.str());
    }
    sum += e;
  }
  const double completeness = linalg::max_abs(sum - CMatrix::Identity(d, d));
  if (completeness > tol) {
    std::ostringstream os;
    os << "effects sum to identity only within " << completeness;
    fail(ErrorCode::kNotNormalized, os.str());
  }

  std::shared_ptr<Frame> f(new Frame());
  f->dim_ = static_cast<int>(d);
  f->tol_ = tol;
  // Symmetrize against rounding so later spectra are exactly real.
  for (auto& e : effects) e = 0.5 * (e + e.adjoint()).eval();
  f->effects_ = std::move(effects);

  const int n = f->size();
  f->gram_.resize(n, n);
  f->trace_vector_.resize(n);
  for (int i = 0; i < n; ++i) {
    f->trace_vector_(i) = f->effects_[i].trace().real();
    for (int j = 0; j < n; ++j) {
      f->gram_(i, j) = linalg::trace_product_real(f->effects_[i], f->effects_[j]);
    }
  }
  Eigen::JacobiSVD<RMatrix> svd(f->gram_);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  f->gram_condition_ = smin > 0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  if (!(f->gram_condition_ <= kMaxGramCondition)) {
    std::ostringstream os;
    os << "Gram matrix condition number " << f->gram_condition_ << " exceeds "
       << kMaxGramCondition;
    fail(ErrorCode::kFrameSingular, os.str());
  }
  f->gram_inverse_ = f->gram_.partialPivLu().inverse();
  f->gram_inverse_ = 0.5 * (f->gram_inverse_ + f->gram_inverse_.transpose()).eval();

  f->duals_.assign(n, CMatrix::Zero(d, d));
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) f->duals_[l] += f->gram_inverse_(l, k) * f->effects_[k];
  }
  return f;
}

const std::vector<CMatrix>& Frame::lambda() const {
  std::call_once(lambda_once_, [this] { lambda_ = triple_traces(duals_, effects_); });
  return lambda_;
}

const std::vector<CMatrix>& Frame::lambda_tilde() const {
  std::call_once(lambda_tilde_once_,
                 [this] { lambda_tilde_ = triple_traces(effects_, duals_); });
  return lambda_tilde_;
}

FramePtr Frame::conjugate() const {
  std::vector<CMatrix> eff;
  eff.reserve(effects_.size());
  for (const auto& e : effects_) eff.push_back(e.conjugate());
  return from_effects(std::move(eff), tol_);
}

bool Frame::same_as(const Frame& other) const {
  if (this == &other) return true;
  if (dim_ != other.dim_) return false;
  const double tol = std::max(tol_, other.tol_);
  for (int k = 0; k < size(); ++k) {
    if (linalg::max_abs(effects_[k] - other.effects_[k]) > tol) return false;
  }
  return true;
}

CVector Frame::coordinates(const CMatrix& op) const {
  if (op.rows() != dim_ || op.cols() != dim_) {
    fail(ErrorCode::kDimensionMismatch, "operator dimension does not match the frame");
  }
  CVector p(size());
  for (int k = 0; k < size(); ++k) p(k) = linalg::trace_product(op, effects_[k]);
  return p;
}

CVector Frame::effect_coordinates(const CMatrix& op) const {
  if (op.rows() != dim_ || op.cols() != dim_) {
    fail(ErrorCode::kDimensionMismatch, "operator dimension does not match the frame");
  }
  CVector c(size());
  for (int k = 0; k < size(); ++k) c(k) = linalg::trace_product(duals_[k], op);
  return c;
}

CMatrix Frame::reconstruct(const CVector& p) const {
  if (p.size() != size()) fail(ErrorCode::kDimensionMismatch, "vector length does not match the frame");
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (int k = 0; k < size(); ++k) out += p(k) * duals_[k];
  return out;
}

CMatrix Frame::reconstruct(const RVector& p) const {
  return reconstruct(CVector(p.cast<Complex>()));
}

CMatrix Frame::combine_effects(const RVector& c) const {
  if (c.size() != size()) fail(ErrorCode::kDimensionMismatch, "vector length does not match the frame");
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (int k = 0; k < size(); ++k) out += c(k) * effects_[k];
  return out;
}

bool same_frame(const FramePtr& a, const FramePtr& b) {
  if (!a || !b) return false;
  return a == b || a->same_as(*b);
}

FramePtr build_sic_qubit() {
  const CMatrix id = linalg::identity(2);
  const CMatrix x = linalg::pauli_x();
  const CMatrix y = linalg::pauli_y();
  const CMatrix z = linalg::pauli_z();
  const double c = std::sqrt(3.0) / 12.0;
  std::vector<CMatrix> e = {
      0.25 * id + c * (-x + y + z),
      0.25 * id + c * (x - y + z),
      0.25 * id + c * (x + y - z),
      0.25 * id + c * (-x - y - z),
  };
  return Frame::from_effects(std::move(e));
}

FramePtr build_sic_from_fiducials(const std::vector<CVector>& kets, double tol) {
  if (kets.empty()) fail(ErrorCode::kInvalidArgument, "no fiducial kets");
  const auto d = kets.front().size();
  if (static_cast<Eigen::Index>(kets.size()) != d * d) {
    fail(ErrorCode::kDimensionMismatch, "a SIC on dimension " + std::to_string(d) + " needs " +
                                            std::to_string(d * d) + " kets");
  }
  for (const auto& k : kets) {
    if (k.size() != d) fail(ErrorCode::kDimensionMismatch, "fiducial kets differ in dimension");
  }
  const double dd = static_cast<double>(d);
  for (size_t k = 0; k < kets.size(); ++k) {
    for (size_t l = 0; l < kets.size(); ++l) {
      const double overlap = std::norm(kets[k].dot(kets[l]));
      const double expected = (k == l ? dd + 1.0 : 1.0) / (dd + 1.0);
      if (std::abs(overlap - expected) > tol) {
        std::ostringstream os;
        os << "|<psi_" << k << "|psi_" << l << ">|^2 = " << overlap << ", expected " << expected;
        fail(ErrorCode::kSymmetryViolation, os.str());
      }
    }
  }
  std::vector<CMatrix> eff;
  eff.reserve(kets.size());
  for (const auto& k : kets) eff.push_back(k * k.adjoint() / dd);
  return Frame::from_effects(std::move(eff), tol);
}

FramePtr build_mic_from_effects(std::vector<CMatrix> effects, double tol) {
  return Frame::from_effects(std::move(effects), tol);
}

FramePtr tensor(const FramePtr& a, const FramePtr& b) {
  std::vector<CMatrix> eff;
  eff.reserve(static_cast<size_t>(a->size()) * b->size());
  for (const auto& ea : a->effects()) {
    for (const auto& eb : b->effects()) eff.push_back(linalg::kron(ea, eb));
  }
  return Frame::from_effects(std::move(eff), std::max(a->tol(), b->tol()));
}

FramePtr product_frame(const FramePtr& a, const FramePtr& b) {
  struct Entry {
    std::weak_ptr<const Frame> a, b;
    FramePtr product;
  };
  static std::mutex mu;
  static std::map<std::pair<const Frame*, const Frame*>, Entry> cache;
  const auto key = std::make_pair(a.get(), b.get());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end() && it->second.a.lock() == a && it->second.b.lock() == b) {
      return it->second.product;
    }
  }
  FramePtr prod = tensor(a, b);
  std::lock_guard<std::mutex> lock(mu);
  for (auto it = cache.begin(); it != cache.end();) {
    it = (it->second.a.expired() || it->second.b.expired()) ? cache.erase(it) : std::next(it);
  }
  cache[key] = Entry{a, b, prod};
  return prod;
}

FramePtr trivial_frame() {
  static const FramePtr f = Frame::from_effects({CMatrix::Identity(1, 1)});
  return f;
}

FrameTransition transition_matrix(const FramePtr& target, const FramePtr& source) {
  if (target->dim() != source->dim()) {
    fail(ErrorCode::kDimensionMismatch, "frames act on different Hilbert spaces");
  }
  const int n = target->size();
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = linalg::trace_product_real(target->effect(i), source->dual(j));
    }
  }
  return {source, target, std::move(m)};
}

}  // namespace micprob
