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


#include "micprob/circuits.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "micprob/linalg.hpp"

namespace micprob {

namespace {

std::size_t pow4(int k) { return std::size_t{1} << (2 * k); }

void check_targets(const std::vector<int>& targets, int n) {
  if (targets.empty() || targets.size() > 2) fail(ErrorCode::kTargetOutOfRange, "one or two targets expected");
  for (int t : targets) {
    if (t < 0 || t >= n) fail(ErrorCode::kTargetOutOfRange, "target qubit " + std::to_string(t) + " out of range");
  }
  if (targets.size() == 2 && targets[0] == targets[1]) {
    fail(ErrorCode::kTargetOutOfRange, "two-qubit targets must differ");
  }
}

void require_unitary(const CMatrix& u, int dim, double tol) {
  if (u.rows() != dim || u.cols() != dim) fail(ErrorCode::kDimensionMismatch, "unexpected unitary size");
  if (!linalg::is_unitary(u, tol)) fail(ErrorCode::kNotUnitary, "matrix is not unitary");
}

// Apply an r x 4 matrix to the chunk axis q of a tensor with per-axis
// sizes dims (row-major, axis 0 most significant).
RVector apply_axis(const RVector& p, std::vector<int>& dims, int q, const RMatrix& m) {
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (int i = 0; i < q; ++i) outer *= dims[i];
  for (std::size_t i = q + 1; i < dims.size(); ++i) inner *= dims[i];
  const int in_dim = dims[q];
  const int out_dim = static_cast<int>(m.rows());
  RVector out = RVector::Zero(static_cast<Eigen::Index>(outer * out_dim * inner));
  for (std::size_t o = 0; o < outer; ++o) {
    for (int r = 0; r < out_dim; ++r) {
      for (int c = 0; c < in_dim; ++c) {
        const double w = m(r, c);
        if (w == 0.0) continue;
        const double* src = p.data() + (o * in_dim + c) * inner;
        double* dst = out.data() + (o * out_dim + r) * inner;
        for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  }
  dims[q] = out_dim;
  return out;
}

CMatrix lookup_gate(const std::string& name, bool& found) {
  const auto& lib = gate_unitaries();
  std::string key = name;
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
  const auto it = lib.find(key);
  found = it != lib.end();
  return found ? it->second : CMatrix();
}

}  // namespace

FramePtr circuit_frame() {
  static const FramePtr frame = build_sic_qubit();
  return frame;
}

QubitRegister init_register(int n) {
  if (n < 1 || n > kMaxQubits) fail(ErrorCode::kInvalidArgument, "qubit count must be in 1.." + std::to_string(kMaxQubits));
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const RVector p0 = to_prob(zero, circuit_frame()).p;
  RVector p = p0;
  for (int i = 1; i < n; ++i) p = linalg::kron(p, p0);
  return {n, std::move(p)};
}

RMatrix single_qubit_map(const CMatrix& u, double tol) {
  require_unitary(u, 2, tol);
  const auto& e = circuit_frame()->effects();
  RMatrix s(4, 4);
  for (int j = 0; j < 4; ++j) {
    const CMatrix rho = u * e[j] * u.adjoint();
    for (int i = 0; i < 4; ++i) s(i, j) = 2.0 * linalg::trace_product_real(e[i], rho);
  }
  return 3.0 * s - 2.0 * RMatrix::Constant(4, 4, 0.25);
}

TwoQubitParts two_qubit_parts(const CMatrix& u, double tol) {
  require_unitary(u, 4, tol);
  const auto& e = circuit_frame()->effects();
  const CMatrix mix = 0.5 * linalg::identity(2);
  TwoQubitParts parts{RMatrix(16, 16), RMatrix(16, 16), RMatrix::Constant(16, 16, 1.0 / 16.0)};
  std::vector<CMatrix> pair(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) pair[i * 4 + j] = linalg::kron(e[i], e[j]);
  }
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const CMatrix a = u * pair[k * 4 + l] * u.adjoint();
      const CMatrix b = u * (linalg::kron(e[k], mix) + linalg::kron(mix, e[l])) * u.adjoint();
      for (int r = 0; r < 16; ++r) {
        parts.s_one(r, k * 4 + l) = 4.0 * linalg::trace_product_real(pair[r], a);
        parts.s_two(r, k * 4 + l) = linalg::trace_product_real(pair[r], b);
      }
    }
  }
  return parts;
}

RMatrix two_qubit_map(const CMatrix& u, double tol) {
  const TwoQubitParts p = two_qubit_parts(u, tol);
  return 9.0 * p.s_one - 12.0 * p.s_two + 4.0 * p.j_two;
}

RMatrix projective_measure_map() {
  const double h = 1.0 / std::sqrt(3.0);
  RMatrix m(2, 4);
  m << 1 + h, 1 + h, 1 - h, 1 - h,
       1 - h, 1 - h, 1 + h, 1 + h;
  m *= 0.5;
  return 3.0 * m - 2.0 * RMatrix::Constant(2, 4, 0.5);
}

RMatrix embed(const RMatrix& s, const std::vector<int>& targets, int n) {
  check_targets(targets, n);
  if (n > 6) fail(ErrorCode::kInvalidArgument, "dense embedding is limited to 6 qubits");
  const int k = static_cast<int>(targets.size());
  if (s.rows() != static_cast<Eigen::Index>(pow4(k)) || s.cols() != s.rows()) {
    fail(ErrorCode::kShapeMismatch, "map size does not match the number of targets");
  }
  if (k == 1) {
    const int q = targets[0];
    return linalg::kron(linalg::kron(RMatrix::Identity(pow4(q), pow4(q)), s),
                        RMatrix::Identity(pow4(n - q - 1), pow4(n - q - 1)));
  }
  // Qubit order after the permutation: a, b, then the rest ascending.
  std::vector<int> order{targets[0], targets[1]};
  for (int q = 0; q < n; ++q) {
    if (q != targets[0] && q != targets[1]) order.push_back(q);
  }
  const std::size_t dim = pow4(n);
  RMatrix perm = RMatrix::Zero(dim, dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    std::size_t moved = 0;
    for (int pos = 0; pos < n; ++pos) {
      const std::size_t chunk = (idx >> (2 * (n - 1 - order[pos]))) & 3U;
      moved = moved * 4 + chunk;
    }
    perm(moved, idx) = 1.0;
  }
  const RMatrix front = linalg::kron(s, RMatrix::Identity(pow4(n - 2), pow4(n - 2)));
  return perm.transpose() * front * perm;
}

void apply_map(QubitRegister& reg, const RMatrix& s, const std::vector<int>& targets) {
  check_targets(targets, reg.n);
  const int n = reg.n;
  if (targets.size() == 1) {
    if (s.rows() != 4 || s.cols() != 4) fail(ErrorCode::kShapeMismatch, "single-qubit map must be 4x4");
    std::vector<int> dims(n, 4);
    reg.p = apply_axis(reg.p, dims, targets[0], s);
    return;
  }
  if (s.rows() != 16 || s.cols() != 16) fail(ErrorCode::kShapeMismatch, "two-qubit map must be 16x16");
  const int a = targets[0];
  const int b = targets[1];
  const std::size_t sa = pow4(n - 1 - a);
  const std::size_t sb = pow4(n - 1 - b);
  const std::size_t dim = pow4(n);
  RVector out(reg.p.size());
  Eigen::Matrix<double, 16, 1> in_chunk;
  // Visit every index whose a- and b-chunks are zero and update its 16
  // partners together.
  for (std::size_t base = 0; base < dim; ++base) {
    if (((base / sa) & 3U) != 0 || ((base / sb) & 3U) != 0) continue;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) in_chunk(i * 4 + j) = reg.p(base + i * sa + j * sb);
    }
    const Eigen::Matrix<double, 16, 1> res = s * in_chunk;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) out(base + i * sa + j * sb) = res(i * 4 + j);
    }
  }
  reg.p = std::move(out);
}

std::string outcome_label(std::size_t index, std::size_t bits) {
  std::string s(bits, '0');
  for (std::size_t i = 0; i < bits; ++i) {
    if ((index >> (bits - 1 - i)) & 1U) s[i] = '1';
  }
  return s;
}

RunResult run(const CircuitProgram& program, bool keep_trace, double tol) {
  RunResult res;
  res.final_state = init_register(program.n);
  std::vector<int> measured;
  for (const auto& op : program.ops) {
    if (op.kind == Instruction::Kind::kMeasure) {
      for (int q : op.targets) {
        if (q < 0 || q >= program.n) fail(ErrorCode::kTargetOutOfRange, "measured qubit out of range");
        if (std::find(measured.begin(), measured.end(), q) != measured.end()) {
          fail(ErrorCode::kInvalidArgument, "qubit measured twice");
        }
        measured.push_back(q);
      }
      continue;
    }
    check_targets(op.targets, program.n);
    for (int q : op.targets) {
      if (std::find(measured.begin(), measured.end(), q) != measured.end()) {
        fail(ErrorCode::kInvalidArgument, "gate after measurement on qubit " + std::to_string(q));
      }
    }
    CMatrix u = op.unitary;
    if (!op.name.empty()) {
      bool found = false;
      u = lookup_gate(op.name, found);
      if (!found) fail(ErrorCode::kInvalidArgument, "unknown gate '" + op.name + "'");
    }
    const int width = static_cast<int>(op.targets.size());
    if (u.rows() != (width == 1 ? 2 : 4)) fail(ErrorCode::kShapeMismatch, "gate size does not match its targets");
    const RMatrix s = width == 1 ? single_qubit_map(u, tol) : two_qubit_map(u, tol);
    apply_map(res.final_state, s, op.targets);
    if (keep_trace) res.trace.push_back(res.final_state.p);
  }
  if (measured.empty()) {
    for (int q = 0; q < program.n; ++q) measured.push_back(q);
  }

  // Read-out: M_pr on measured chunks, summation over the others, then
  // reorder the outcome axes to the measurement order.
  std::vector<int> dims(program.n, 4);
  RVector p = res.final_state.p;
  const RMatrix mpr = projective_measure_map();
  const RMatrix trace_out = RMatrix::Ones(1, 4);
  for (int q = 0; q < program.n; ++q) {
    const bool m = std::find(measured.begin(), measured.end(), q) != measured.end();
    p = apply_axis(p, dims, q, m ? mpr : trace_out);
  }
  std::vector<int> ascending = measured;
  std::sort(ascending.begin(), ascending.end());
  const std::size_t bits = measured.size();
  RVector probs(static_cast<Eigen::Index>(std::size_t{1} << bits));
  for (std::size_t idx = 0; idx < (std::size_t{1} << bits); ++idx) {
    // idx enumerates outcomes in measurement order; map to ascending order.
    std::size_t asc_idx = 0;
    for (std::size_t pos = 0; pos < bits; ++pos) {
      const int qubit = ascending[pos];
      const std::size_t where = std::find(measured.begin(), measured.end(), qubit) - measured.begin();
      const std::size_t bit = (idx >> (bits - 1 - where)) & 1U;
      asc_idx = asc_idx * 2 + bit;
    }
    probs(idx) = p(asc_idx);
  }
  res.record = {measured, std::move(probs)};
  return res;
}

std::vector<long> sample(const MeasurementRecord& record, long shots, std::uint64_t seed) {
  if (shots < 1) fail(ErrorCode::kInvalidArgument, "shots must be positive");
  std::vector<double> w(record.probs.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::max(0.0, record.probs(i));
  std::discrete_distribution<std::size_t> dist(w.begin(), w.end());
  std::mt19937_64 rng(seed);
  std::vector<long> counts(w.size(), 0);
  for (long s = 0; s < shots; ++s) ++counts[dist(rng)];
  return counts;
}

const std::map<std::string, CMatrix>& gate_unitaries() {
  static const std::map<std::string, CMatrix> lib = [] {
    std::map<std::string, CMatrix> m;
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix h(2, 2);
    h << r, r, r, -r;
    m["h"] = h;
    m["x"] = linalg::pauli_x();
    CMatrix t = CMatrix::Identity(2, 2);
    t(1, 1) = std::polar(1.0, std::numbers::pi / 4);
    m["t"] = t;
    CMatrix s = CMatrix::Identity(2, 2);
    s(1, 1) = Complex(0.0, 1.0);
    m["s"] = s;
    CMatrix cz = CMatrix::Identity(4, 4);
    cz(3, 3) = -1.0;
    m["cz"] = cz;
    CMatrix cx = CMatrix::Zero(4, 4);
    cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;
    m["cx"] = cx;
    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    m["swap"] = swap;
    CMatrix iswap = CMatrix::Zero(4, 4);
    iswap(0, 0) = iswap(3, 3) = 1.0;
    iswap(1, 2) = iswap(2, 1) = Complex(0.0, 1.0);
    m["iswap"] = iswap;
    return m;
  }();
  return lib;
}

std::map<std::string, RMatrix> gate_library() {
  std::map<std::string, RMatrix> out;
  for (const auto& [name, u] : gate_unitaries()) {
    out[name] = u.rows() == 2 ? single_qubit_map(u) : two_qubit_map(u);
  }
  return out;
}

CMatrix phase_oracle(const std::string& secret) {
  if (secret.empty() || secret.size() > 2 ||
      secret.find_first_not_of("01") != std::string::npos) {
    fail(ErrorCode::kInvalidArgument, "secret must be a one- or two-bit string");
  }
  const int dim = 1 << secret.size();
  const int marked = std::stoi(secret, nullptr, 2);
  CMatrix u = CMatrix::Identity(dim, dim);
  u(marked, marked) = -1.0;
  return u;
}

CircuitProgram grover_program(const std::string& secret) {
  if (secret.size() != 2) fail(ErrorCode::kInvalidArgument, "two-qubit Grover needs a two-bit secret");
  CMatrix diffusion = -CMatrix::Identity(4, 4);
  diffusion(0, 0) = 1.0;  // 2|00><00| - I between Hadamard layers
  using K = Instruction::Kind;
  CircuitProgram p;
  p.n = 2;
  p.ops = {{K::kGate, "h", {}, {0}},        {K::kGate, "h", {}, {1}},
           {K::kGate, "", phase_oracle(secret), {0, 1}},
           {K::kGate, "h", {}, {0}},        {K::kGate, "h", {}, {1}},
           {K::kGate, "", diffusion, {0, 1}},
           {K::kGate, "h", {}, {0}},        {K::kGate, "h", {}, {1}},
           {K::kMeasure, "", {}, {0, 1}}};
  return p;
}

}  // namespace micprob
