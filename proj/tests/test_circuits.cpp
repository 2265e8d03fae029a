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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "micprob/circuits.hpp"
#include "micprob/linalg.hpp"
#include "oracle.hpp"

using namespace micprob;

namespace {

CMatrix ket0() {
  CMatrix r = CMatrix::Zero(2, 2);
  r(0, 0) = 1.0;
  return r;
}

}  // namespace

TEST_CASE("initial register") {
  const double hi = (3.0 + std::sqrt(3.0)) / 12.0, lo = (3.0 - std::sqrt(3.0)) / 12.0;
  const RVector p0 = (RVector(4) << hi, hi, lo, lo).finished();
  CHECK(linalg::max_abs(init_register(1).p - p0) <= 1e-15);
  const QubitRegister r2 = init_register(2);
  CHECK(r2.p.size() == 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(std::abs(r2.p(i * 4 + j) - p0(i) * p0(j)) <= 1e-15);
  CHECK(init_register(5).p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(init_register(0), Error);
  CHECK_THROWS_AS(init_register(kMaxQubits + 1), Error);
}

TEST_CASE("closed-form gate maps equal the generic channel conversion") {
  const FramePtr f = circuit_frame();
  const FramePtr ff = product_frame(f, f);
  for (const auto& [name, u] : gate_unitaries()) {
    INFO(name);
    const RMatrix s = u.rows() == 2 ? single_qubit_map(u) : two_qubit_map(u);
    const RMatrix generic = u.rows() == 2 ? kraus_to_map({{u}}, f, f).matrix : kraus_to_map({{u}}, ff, ff).matrix;
    CHECK(linalg::max_abs(s - generic) <= 1e-10);
    CHECK(linalg::max_abs(s.colwise().sum() - RRow::Ones(s.cols())) <= 1e-12);
    CHECK(linalg::max_abs(s.rowwise().sum() - RVector::Ones(s.rows())) <= 1e-12);
  }
  std::mt19937_64 rng(1);
  const CMatrix u = oracle::random_unitary(2, rng);
  CHECK(linalg::max_abs(single_qubit_map(u) - kraus_to_map({{u}}, f, f).matrix) <= 1e-10);
  const CMatrix w = oracle::random_unitary(4, rng);
  CHECK(linalg::max_abs(two_qubit_map(w) - kraus_to_map({{w}}, ff, ff).matrix) <= 1e-10);

  const TwoQubitParts parts = two_qubit_parts(w);
  for (const RMatrix* m : {&parts.s_one, &parts.s_two, &parts.j_two}) {
    CHECK(linalg::max_abs(m->colwise().sum() - RRow::Ones(16)) <= 1e-12);
    CHECK(linalg::max_abs(m->rowwise().sum() - RVector::Ones(16)) <= 1e-12);
  }
  CHECK(linalg::max_abs(single_qubit_map(linalg::identity(2)) - RMatrix::Identity(4, 4)) <= 1e-12);
  CHECK(linalg::max_abs(two_qubit_map(CMatrix::Identity(4, 4)) - RMatrix::Identity(16, 16)) <= 1e-12);

  CMatrix bad = linalg::identity(2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(single_qubit_map(bad), Error);
  CHECK_THROWS_AS(two_qubit_map(CMatrix::Identity(4, 4) * 1.1), Error);
}

TEST_CASE("gate sign pattern") {
  const auto lib = gate_library();
  for (const auto& name : {"x", "swap"}) CHECK(lib.at(name).minCoeff() >= -1e-12);
  for (const auto& name : {"h", "t", "s", "cz", "cx", "iswap"}) CHECK(lib.at(name).minCoeff() <= -0.01);
  CHECK(linalg::max_abs(lib.at("s") - lib.at("t") * lib.at("t")) <= 1e-12);
}

TEST_CASE("single-qubit affine decomposition") {
  // S(H) = 3 s - 2 J1 with s bistochastic.
  const RMatrix s = (single_qubit_map(gate_unitaries().at("h")) + 2.0 * RMatrix::Constant(4, 4, 0.25)) / 3.0;
  CHECK(linalg::max_abs(s.colwise().sum() - RRow::Ones(4)) <= 1e-12);
  CHECK(linalg::max_abs(s.rowwise().sum() - RVector::Ones(4)) <= 1e-12);
  CHECK(s.minCoeff() >= -1e-12);
}

TEST_CASE("Hadamard moves |0> to |+>") {
  const FramePtr f = circuit_frame();
  const RVector plus = to_prob(CMatrix::Constant(2, 2, 0.5), f).p;
  CHECK(linalg::max_abs(single_qubit_map(gate_unitaries().at("h")) * init_register(1).p - plus) <= 1e-12);

  // CZ on |+>|+> gives the two-node cluster state.
  const RVector pp = linalg::kron(plus, plus);
  CVector cluster = CVector::Constant(4, 0.5);
  cluster(3) = -0.5;
  const RVector expect = oracle::born(cluster * cluster.adjoint(), product_frame(f, f)->effects());
  CHECK(linalg::max_abs(two_qubit_map(gate_unitaries().at("cz")) * pp - expect) <= 1e-12);
}

TEST_CASE("read-out map") {
  const RMatrix m = projective_measure_map();
  CHECK(linalg::max_abs(m * init_register(1).p - RVector::Unit(2, 0)) <= 1e-12);
  CHECK(linalg::max_abs(m * RVector::Constant(4, 0.25) - RVector::Constant(2, 0.5)) <= 1e-12);
  CHECK(linalg::max_abs(m.colwise().sum() - RRow::Ones(4)) <= 1e-12);
  const double u = 1.0 + 1.0 / std::sqrt(3.0), v = 1.0 - 1.0 / std::sqrt(3.0);
  RMatrix small(2, 4);
  small << u, u, v, v, v, v, u, u;
  CHECK(linalg::max_abs(m - (1.5 * small - RMatrix::Ones(2, 4))) <= 1e-12);
}

TEST_CASE("embedding") {
  const RMatrix h = gate_library().at("h");
  const RMatrix id4 = RMatrix::Identity(4, 4);
  const RMatrix e = embed(h, {1}, 4);
  CHECK(linalg::max_abs(e - linalg::kron(linalg::kron(linalg::kron(id4, h), id4), id4)) <= 1e-15);
  CHECK(linalg::max_abs(embed(id4, {2}, 3) - RMatrix::Identity(64, 64)) <= 1e-15);

  std::mt19937_64 rng(2);
  const FramePtr f = circuit_frame();
  const RVector pa = to_prob(oracle::random_state(2, rng), f).p;
  const RVector pb = to_prob(oracle::random_state(2, rng), f).p;
  const RVector pc = to_prob(oracle::random_state(2, rng), f).p;
  const RVector joint = linalg::kron(linalg::kron(pa, pb), pc);
  CHECK(linalg::max_abs(embed(h, {1}, 3) * joint - linalg::kron(linalg::kron(pa, RVector(h * pb)), pc)) <= 1e-14);

  // Non-adjacent and reversed targets against the Kraus construction.
  const RMatrix cxm = gate_library().at("cx");
  const FramePtr f3 = product_frame(product_frame(f, f), f);
  // CX with control on qubit 2 and target qubit 0 (qubit 0 is the high bit).
  CMatrix full = CMatrix::Zero(8, 8);
  for (int col = 0; col < 8; ++col) full((col & 1) ? (col ^ 4) : col, col) = 1.0;
  CHECK(linalg::max_abs(embed(cxm, {2, 0}, 3) - kraus_to_map({{full}}, f3, f3).matrix) <= 1e-10);

  QubitRegister reg{3, joint};
  apply_map(reg, cxm, {2, 0});
  CHECK(linalg::max_abs(reg.p - embed(cxm, {2, 0}, 3) * joint) <= 1e-13);

  CHECK_THROWS_AS(embed(h, {3}, 3), Error);
  CHECK_THROWS_AS(embed(cxm, {1, 1}, 3), Error);
  QubitRegister small = init_register(2);
  CHECK_THROWS_AS(apply_map(small, h, {-1}), Error);
}

TEST_CASE("programs") {
  const RunResult g = run(grover_program("10"));
  REQUIRE(g.record.probs.size() == 4);
  CHECK(std::abs(g.record.probs(2) - 1.0) <= 1e-9);
  CHECK(outcome_label(2, 2) == "10");
  const auto counts = sample(g.record, 1024, 7);
  CHECK(counts[2] == 1024);

  for (const std::string secret : {"00", "01", "11"}) {
    const RunResult r = run(grover_program(secret));
    CHECK(std::abs(r.record.probs(std::stoi(secret, nullptr, 2)) - 1.0) <= 1e-9);
  }

  CircuitProgram empty;
  empty.n = 1;
  const RunResult e = run(empty);
  CHECK(linalg::max_abs(e.record.probs - RVector::Unit(2, 0)) <= 1e-12);
  CHECK(e.record.qubits == std::vector<int>{0});

  CircuitProgram hp;
  hp.n = 2;
  hp.ops.push_back({Instruction::Kind::kGate, "h", {}, {0}});
  hp.ops.push_back({Instruction::Kind::kMeasure, "", {}, {0}});
  const RunResult hr = run(hp, true);
  CHECK(linalg::max_abs(hr.record.probs - RVector::Constant(2, 0.5)) <= 1e-12);
  CHECK(hr.trace.size() == 1);

  CircuitProgram late = hp;
  late.ops.push_back({Instruction::Kind::kGate, "x", {}, {0}});
  CHECK_THROWS_AS(run(late), Error);
  // an unmeasured qubit may still be acted on
  CircuitProgram other = hp;
  other.ops.push_back({Instruction::Kind::kGate, "x", {}, {1}});
  CHECK(linalg::max_abs(run(other).record.probs - RVector::Constant(2, 0.5)) <= 1e-12);
  CircuitProgram unknown = hp;
  unknown.ops[0].name = "toffoli";
  CHECK_THROWS_AS(run(unknown), Error);
  CircuitProgram out_of_range = hp;
  out_of_range.ops[0].targets = {5};
  try {
    run(out_of_range);
    FAIL("expected TargetOutOfRange");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kTargetOutOfRange);
  }
}

TEST_CASE("sampling is reproducible") {
  MeasurementRecord rec{{0}, RVector::Constant(2, 0.5)};
  const auto a = sample(rec, 1000, 11);
  const auto b = sample(rec, 1000, 11);
  CHECK(a == b);
  CHECK(a[0] + a[1] == 1000);
  CHECK(a[0] > 400);
  CHECK(a[1] > 400);
  CHECK_THROWS_AS(sample(rec, 0, 1), Error);
}

TEST_CASE("random circuits agree with a statevector simulator") {
  std::mt19937_64 rng(3);
  const auto& gates = gate_unitaries();
  std::vector<std::string> names;
  for (const auto& [n, u] : gates) names.push_back(n);
  for (int c = 0; c < 40; ++c) {
    const int n = 1 + c % 4;
    CircuitProgram prog;
    prog.n = n;
    oracle::Statevector sv(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(names.size()));
    std::uniform_int_distribution<int> qubit(0, n - 1);
    const int depth = 1 + c % 12;
    for (int k = 0; k < depth; ++k) {
      const int g = pick(rng);
      Instruction ins;
      if (g == static_cast<int>(names.size())) {
        ins.unitary = oracle::random_unitary(2, rng);
        ins.targets = {qubit(rng)};
        sv.apply(ins.unitary, ins.targets);
      } else {
        const CMatrix& u = gates.at(names[g]);
        if (u.rows() == 4 && n < 2) continue;
        ins.name = names[g];
        ins.targets = {qubit(rng)};
        if (u.rows() == 4) {
          int b = qubit(rng);
          while (b == ins.targets[0]) b = qubit(rng);
          ins.targets.push_back(b);
        }
        sv.apply(u, ins.targets);
      }
      prog.ops.push_back(ins);
    }
    std::vector<int> all(n);
    for (int q = 0; q < n; ++q) all[q] = q;
    const RunResult r = run(prog);
    CHECK(linalg::max_abs(r.record.probs - sv.probabilities(all)) <= 1e-8);
  }
}
