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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "micprob/channels.hpp"

namespace micprob {

/// Largest register handled densely (4^12 entries).
constexpr int kMaxQubits = 12;

/// Qubit SIC frame shared by the circuit code.
FramePtr circuit_frame();

/// Probability vector over the n-fold product of the qubit SIC frame.
/// Qubit 0 owns the most significant 2-bit chunk.
struct QubitRegister {
  int n = 0;
  RVector p;
};

/// p0 (x) ... (x) p0 with p0 the vector of |0>.
QubitRegister init_register(int n);

/// S(U) = 3 s(U) - 2 J1, s(U)_ij = 2 Tr(E_i U E_j U^dag). Throws NotUnitary.
RMatrix single_qubit_map(const CMatrix& u, double tol = kDefaultTol);

struct TwoQubitParts {
  RMatrix s_one;  // 4 Tr(E_i (x) E_j U E_k (x) E_l U^dag)
  RMatrix s_two;  // Tr(E_i (x) E_j U rho_kl U^dag), rho_kl = E_k (x) I/2 + I/2 (x) E_l
  RMatrix j_two;  // all entries 1/16
};

TwoQubitParts two_qubit_parts(const CMatrix& u, double tol = kDefaultTol);

/// S(U) = 9 s_I - 12 s_II + 4 J2. Throws NotUnitary.
RMatrix two_qubit_map(const CMatrix& u, double tol = kDefaultTol);

/// 2 x 4 read-out map M_pr = 3 m_pr - 2 J_pr; rows are outcomes 0 and 1.
RMatrix projective_measure_map();

/// Dense 4^n x 4^n embedding of a one- or two-qubit map. Two-qubit maps on
/// targets (a, b) are conjugated by the chunk permutation that brings a and
/// b to the front. Throws TargetOutOfRange.
RMatrix embed(const RMatrix& s, const std::vector<int>& targets, int n);

/// In-place chunked application of a one- or two-qubit map.
void apply_map(QubitRegister& reg, const RMatrix& s, const std::vector<int>& targets);

struct Instruction {
  enum class Kind { kGate, kMeasure };
  Kind kind = Kind::kGate;
  std::string name;     // library name, or empty for an explicit unitary
  CMatrix unitary;      // used when name is empty
  std::vector<int> targets;
};

struct CircuitProgram {
  int n = 1;
  std::vector<Instruction> ops;
};

struct MeasurementRecord {
  std::vector<int> qubits;  // measured qubits, most significant outcome bit first
  RVector probs;            // 2^m outcome probabilities
};

std::string outcome_label(std::size_t index, std::size_t bits);

struct RunResult {
  QubitRegister final_state;
  MeasurementRecord record;
  std::vector<RVector> trace;  // register after every gate (when requested)
};

/// Applies the gates in order; all measurements are terminal read-outs. A
/// program without measurements reads out every qubit. Throws
/// TargetOutOfRange, NotUnitary or InvalidArgument (gate after measurement,
/// unknown gate name).
RunResult run(const CircuitProgram& program, bool keep_trace = false, double tol = kDefaultTol);

/// Multinomial draw of shot counts from the read-out distribution.
std::vector<long> sample(const MeasurementRecord& record, long shots, std::uint64_t seed);

/// Standard unitaries: h, x, t, s (single qubit); cz, cx, swap, iswap
/// (first target is the control).
const std::map<std::string, CMatrix>& gate_unitaries();

/// Pseudostochastic maps of every library gate.
std::map<std::string, RMatrix> gate_library();

/// Diagonal oracle U|x> = (-1)^{[x == secret]} |x> on bitstring secret.
CMatrix phase_oracle(const std::string& secret);

/// Two-qubit Grover search: H H, oracle, diffusion, read-out of both.
CircuitProgram grover_program(const std::string& secret);

}  // namespace micprob
