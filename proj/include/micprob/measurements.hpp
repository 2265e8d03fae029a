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

#include "micprob/channels.hpp"

namespace micprob {

/// q = M p with M_ij = Tr(M_i e_j); one row per outcome.
struct MeasurementMap {
  FramePtr frame;
  RMatrix matrix;
  std::vector<std::string> labels;
};

/// Throws NotPositive / NotNormalized / DimensionMismatch.
MeasurementMap povm_to_map(const std::vector<CMatrix>& effects, const FramePtr& frame,
                           double tol = kDefaultTol);

/// M_k = sum_l M_kl E_l
std::vector<CMatrix> map_to_povm(const MeasurementMap& m);

/// Outcome distribution q = M p. Throws FrameMismatch.
RVector outcome_probs(const MeasurementMap& m, const ProbVector& p);

/// (lambda (*) mu)_k = lambda LambdaTilde^(k) mu^T on expansion coefficients
/// over the effects. Complex unless the two operators commute.
CVector circled_star(const FramePtr& frame, const CVector& lambda, const CVector& mu);

/// Tr(M_i^j) for j = 1..d through repeated circled products of row i.
std::vector<double> effect_power_traces(const FramePtr& frame, const RVector& row);

struct MeasurementVerdict {
  bool valid = false;
  std::vector<PhysicalityVerdict> rows;
};

/// Positivity of every reconstructed effect, without unit-trace assumption.
/// Throws NotPseudoStochastic.
MeasurementVerdict is_valid_measurement(const MeasurementMap& m, double tol = kDefaultTol);

struct Observable {
  std::vector<double> values;
  MeasurementMap map;
  RRow mean_row;  // values^T M
};

Observable make_observable(std::vector<double> values, MeasurementMap map);

/// Spectral decomposition of a Hermitian operator; eigenvalues closer than
/// tol share one projector. Throws NotHermitian.
Observable observable_from_operator(const CMatrix& op, const FramePtr& frame,
                                    double tol = kDefaultTol);

/// <O> = O_mean p. Throws FrameMismatch.
double observable_mean(const Observable& o, const ProbVector& p);

}  // namespace micprob
