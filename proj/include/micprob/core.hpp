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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace micprob {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using RRow = Eigen::RowVectorXd;

// Absolute tolerance used by positivity, normalization and duality checks
// unless a caller overrides it.
inline constexpr double kDefaultTol = 1e-9;

// Frames whose Gram matrix is worse conditioned than this are rejected.
inline constexpr double kMaxGramCondition = 1e12;

enum class ErrorCode {
  kDimensionMismatch = 1,
  kFrameMismatch,
  kShapeMismatch,
  kNotPositive,
  kNotNormalized,
  kFrameSingular,
  kSymmetryViolation,
  kNotHermitian,
  kNotTracePreserving,
  kNotPseudoStochastic,
  kNotUnitary,
  kNotGeneratorShaped,
  kTargetOutOfRange,
  kBracketNotFound,
  kInfeasibleParameters,
  kInvalidArgument,
  kInternal,
};

// Stable identifier for an error code, e.g. "FrameSingular".
const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace micprob
