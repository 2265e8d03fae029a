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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "micprob/dynamics.hpp"

namespace micprob {

enum class DecoherenceKind { kDepolarization, kDephasing, kDamping };

const char* decoherence_name(DecoherenceKind kind);
DecoherenceKind parse_decoherence(const std::string& name);  // depol | deph | damp

/// Spin-1/2 in a field at polar angle theta (azimuth phi) with one of three
/// noise processes of characteristic time tau.
struct DecoherenceModel {
  DecoherenceKind kind = DecoherenceKind::kDepolarization;
  double theta = 0.0;
  double tau = 1.0;
  double azimuth = 0.0;
};

/// H = (sin(theta) (cos(phi) sigma^(1) + sin(phi) sigma^(2)) + cos(theta) sigma^(3)) / 2
CMatrix spin_hamiltonian(double theta, double azimuth = 0.0);

/// depol: sigma^(i) / (2 sqrt(tau)); deph: sigma^(3) / sqrt(tau);
/// damp: sigma^- / sqrt(tau) with sigma^- = (sigma^(1) - i sigma^(2)) / 2.
/// Throws InvalidArgument for tau <= 0.
std::vector<CMatrix> noise_operators(DecoherenceKind kind, double tau);

GeneratorMatrix spin_model_generator(const DecoherenceModel& model, const FramePtr& frame);

/// Sum of magnitudes of negative off-diagonal entries.
double negativity(const RMatrix& l);

enum class FamilyTag { kSic, kPmic, kMic };

const char* family_name(FamilyTag tag);
FamilyTag parse_family(const std::string& name);  // sic | pmic | mic

/// A searchable set of qubit MIC-POVMs.
///   sic:  tetrahedron rotated by exp of a rotation vector (3 parameters)
///   pmic: rank-one effects (a_k I + b_k.sigma) / sum a, a_k = |b_k|,
///         b_4 = -(b_1 + b_2 + b_3) (9 parameters)
///   mic:  as pmic with a_k = |b_k| + s_k^2 (13 parameters)
/// Every parameter vector maps to a complete positive POVM; only linear
/// dependence can make it infeasible.
struct PovmFamily {
  FamilyTag tag;
  int num_params;
};

PovmFamily make_family(FamilyTag tag);

/// Effects for a parameter vector. Throws InvalidArgument on a length
/// mismatch.
std::vector<CMatrix> family_effects(const PovmFamily& family, std::span<const double> x);

struct OptimizerConfig {
  int restarts = 32;
  int iterations = 500;        // Nelder-Mead iterations per restart
  double convergence = 1e-10;  // simplex spread in objective and size
  double tau_tol = 0.005;      // final bracket width
  double zero_tol = 1e-6;      // N below this counts as zero
  double tau_start = 0.01;     // bracket search grid
  double tau_stop = 4.0;
  int tau_grid = 24;
  double tau_limit = 1024.0;   // upper bracket expansion limit
  std::uint64_t seed = 1;
  int threads = 1;
};

struct NegativityReport {
  double negativity = 0.0;
  std::vector<double> params;
  std::vector<CMatrix> effects;
  long evaluations = 0;
  long infeasible = 0;           // candidates rejected as linearly dependent
  int iterations = 0;            // Nelder-Mead iterations over all restarts
  std::vector<double> best_trace;  // best-so-far after each restart
};

/// N_Omega(L) = min over the family of N(L^[E]) by multi-start Nelder-Mead.
/// Extra starting points (for warm starts) are tried before the random
/// restarts. Deterministic for a given seed, independent of thread count.
NegativityReport min_negativity(const DecoherenceModel& model, const PovmFamily& family,
                                const OptimizerConfig& cfg,
                                const std::vector<std::vector<double>>& warm_starts = {});

/// N(L^[E]) of one parameter vector, or nullopt when the effects are
/// linearly dependent.
std::optional<double> negativity_at(const DecoherenceModel& model, const PovmFamily& family,
                                    std::span<const double> x);

struct TauCritResult {
  double tau_crit = 0.0;
  bool empty = false;  // no tau on the search grid gave N = 0
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  long evaluations = 0;
  int min_negativity_runs = 0;
  std::vector<double> best_params;  // optimal frame at tau_lo
};

/// sup { tau : N_Omega(L_{theta,tau}) = 0 } by a geometric bracket search
/// followed by bisection. Throws BracketNotFound when N stays zero up to
/// cfg.tau_limit.
TauCritResult tau_crit(DecoherenceKind kind, double theta, const PovmFamily& family,
                       const OptimizerConfig& cfg, double azimuth = 0.0);

struct ScanRow {
  double theta = 0.0;
  std::optional<double> tau_crit;  // nullopt when the point failed
  long evaluations = 0;
  std::string error;
};

/// tau_crit over a theta grid; grid points run concurrently on cfg.threads.
std::vector<ScanRow> scan(DecoherenceKind kind, const std::vector<double>& thetas,
                          const PovmFamily& family, const OptimizerConfig& cfg);

/// CSV with columns theta,tau_crit,family,kind,seed,evaluations at 17
/// significant digits.
std::string scan_to_csv(const std::vector<ScanRow>& rows, DecoherenceKind kind,
                        const PovmFamily& family, std::uint64_t seed);

/// Derived per-run seed: a splitmix64 step of (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace micprob
