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


#include "micprob/classicality.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "micprob/linalg.hpp"

namespace micprob {

namespace {

constexpr double kInfeasible = 1e6;
constexpr double kPolishBelow = 1e-3;
constexpr int kPolishFactor = 4;

// Superoperator of X -> -i[H, X] + sum A X A^dag - {A^dag A, X}/2 on
// row-major vec(X).
CMatrix model_superoperator(const DecoherenceModel& m) {
  const CMatrix h = spin_hamiltonian(m.theta, m.azimuth);
  const auto ops = noise_operators(m.kind, m.tau);
  CMatrix sup = CMatrix::Zero(4, 4);
  for (int c = 0; c < 4; ++c) {
    CMatrix x = CMatrix::Zero(2, 2);
    x(c / 2, c % 2) = 1.0;
    CMatrix y = Complex(0.0, -1.0) * (h * x - x * h);
    for (const auto& a : ops) {
      const CMatrix ad_a = a.adjoint() * a;
      y += a * x * a.adjoint() - 0.5 * (ad_a * x + x * ad_a);
    }
    for (int r = 0; r < 4; ++r) sup(r, c) = y(r / 2, r % 2);
  }
  return sup;
}

// L^[E]_lk = Tr(E_l L(e_k)) from the superoperator; nullopt when the Gram
// matrix is too ill-conditioned to invert.
std::optional<RMatrix> generator_in_frame(const CMatrix& sup, const std::vector<CMatrix>& effects) {
  const int n = static_cast<int>(effects.size());
  CMatrix a(4, n);
  for (int k = 0; k < n; ++k) {
    for (int r = 0; r < 4; ++r) a(r, k) = effects[k](r / 2, r % 2);
  }
  const RMatrix t = (a.adjoint() * a).real();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(t, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kMaxGramCondition) return std::nullopt;
  const RMatrix tinv = t.ldlt().solve(RMatrix::Identity(n, n));
  return RMatrix((a.adjoint() * sup * a * tinv.cast<Complex>()).real());
}

CMatrix bloch_effect(double a, const Eigen::Vector3d& b) {
  return a * linalg::identity(2) + b(0) * linalg::pauli_x() + b(1) * linalg::pauli_y() + b(2) * linalg::pauli_z();
}

Eigen::Matrix3d rotation_from_vector(const Eigen::Vector3d& v) {
  const double angle = v.norm();
  if (angle < 1e-300) return Eigen::Matrix3d::Identity();
  return Eigen::AngleAxisd(angle, v / angle).toRotationMatrix();
}

// Nested starts place a randomly rotated tetrahedron inside the larger
// family (pure effects, no mixing), so pMIC and MIC searches always cover
// the SIC orbit.
std::vector<double> random_start(const PovmFamily& f, std::mt19937_64& rng, bool nested) {
  std::vector<double> x(f.num_params);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  if (f.tag == FamilyTag::kSic) {
    for (auto& v : x) v = u(rng);
  } else if (nested) {
    const Eigen::Matrix3d r = rotation_from_vector({u(rng), u(rng), u(rng)});
    const double s = 1.0 / std::sqrt(3.0);
    const Eigen::Vector3d tet[3] = {{-s, s, s}, {s, -s, s}, {s, s, -s}};
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d b = r * tet[k];
      for (int i = 0; i < 3; ++i) x[3 * k + i] = b(i);
    }
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 9; ++i) x[i] = u(rng);
    std::uniform_real_distribution<double> s(-0.7, 0.7);
    for (int i = 9; i < f.num_params; ++i) x[i] = s(rng);
  }
  return x;
}

struct NmResult {
  std::vector<double> x;
  double f = kInfeasible;
  long evaluations = 0;
  int iterations = 0;
};

// Nelder-Mead with dimension-adapted coefficients. The simplex is rebuilt
// around the incumbent whenever it collapses before the budget is spent;
// the search stops as soon as the objective reaches its lower bound 0.
template <class F>
NmResult nelder_mead(const F& f, std::vector<double> x0, double step, int max_iter, double conv) {
  const int n = static_cast<int>(x0.size());
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / n;
  const double gamma = 0.75 - 0.5 / n;
  const double delta = 1.0 - 1.0 / n;

  NmResult res;
  using Vec = Eigen::VectorXd;
  std::vector<Vec> simplex(n + 1);
  std::vector<double> fv(n + 1);
  auto eval = [&](const Vec& v) {
    ++res.evaluations;
    return f(std::span<const double>(v.data(), n));
  };
  auto build = [&](const Vec& center, double h) {
    simplex[0] = center;
    fv[0] = eval(center);
    for (int i = 0; i < n; ++i) {
      simplex[i + 1] = center;
      simplex[i + 1](i) += h;
      fv[i + 1] = eval(simplex[i + 1]);
    }
  };
  build(Eigen::Map<Vec>(x0.data(), n), step);

  std::vector<int> order(n + 1);
  for (int it = 0; it < max_iter; ++it) {
    ++res.iterations;
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = order[0];
    const int worst = order[n];
    const int second = order[n - 1];
    if (fv[best] <= 0.0) break;

    double size = 0.0;
    for (int i = 0; i <= n; ++i) size = std::max(size, (simplex[i] - simplex[best]).cwiseAbs().maxCoeff());
    if (fv[worst] - fv[best] <= conv && size <= conv) {
      build(simplex[best], step * 0.1);
      continue;
    }

    Vec centroid = Vec::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= n;
    const Vec xr = centroid + alpha * (centroid - simplex[worst]);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      const Vec xe = centroid + beta * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        fv[worst] = fe;
      } else {
        simplex[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      const Vec xc = outside ? Vec(centroid + gamma * (xr - centroid))
                             : Vec(centroid - gamma * (centroid - simplex[worst]));
      const double fc = eval(xc);
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + delta * (simplex[i] - simplex[best]);
          fv[i] = eval(simplex[i]);
        }
      }
    }
  }
  const int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.f = fv[best];
  res.x.assign(simplex[best].data(), simplex[best].data() + n);
  return res;
}

template <class Fn>
void parallel_for(int count, int threads, const Fn& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string format17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

const char* decoherence_name(DecoherenceKind kind) {
  switch (kind) {
    case DecoherenceKind::kDepolarization: return "depol";
    case DecoherenceKind::kDephasing: return "deph";
    case DecoherenceKind::kDamping: return "damp";
  }
  return "unknown";
}

DecoherenceKind parse_decoherence(const std::string& name) {
  if (name == "depol") return DecoherenceKind::kDepolarization;
  if (name == "deph") return DecoherenceKind::kDephasing;
  if (name == "damp") return DecoherenceKind::kDamping;
  fail(ErrorCode::kInvalidArgument, "unknown decoherence kind '" + name + "'");
}

CMatrix spin_hamiltonian(double theta, double azimuth) {
  return 0.5 * (std::sin(theta) * (std::cos(azimuth) * linalg::pauli_x() + std::sin(azimuth) * linalg::pauli_y()) +
                std::cos(theta) * linalg::pauli_z());
}

std::vector<CMatrix> noise_operators(DecoherenceKind kind, double tau) {
  if (!(tau > 0.0)) fail(ErrorCode::kInvalidArgument, "tau must be positive");
  const double r = 1.0 / std::sqrt(tau);
  switch (kind) {
    case DecoherenceKind::kDepolarization:
      return {0.5 * r * linalg::pauli_x(), 0.5 * r * linalg::pauli_y(), 0.5 * r * linalg::pauli_z()};
    case DecoherenceKind::kDephasing: return {r * linalg::pauli_z()};
    case DecoherenceKind::kDamping: {
      const CMatrix lower = 0.5 * (linalg::pauli_x() - Complex(0.0, 1.0) * linalg::pauli_y());
      return {r * lower};
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown decoherence kind");
}

GeneratorMatrix spin_model_generator(const DecoherenceModel& model, const FramePtr& frame) {
  if (frame->dim() != 2) fail(ErrorCode::kDimensionMismatch, "spin models need a qubit frame");
  return gksl_generator(spin_hamiltonian(model.theta, model.azimuth), noise_operators(model.kind, model.tau), frame);
}

double negativity(const RMatrix& l) {
  double n = 0.0;
  for (int j = 0; j < l.cols(); ++j) {
    for (int i = 0; i < l.rows(); ++i) {
      if (i != j && l(i, j) < 0.0) n -= l(i, j);
    }
  }
  return n;
}

const char* family_name(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::kSic: return "sic";
    case FamilyTag::kPmic: return "pmic";
    case FamilyTag::kMic: return "mic";
  }
  return "unknown";
}

FamilyTag parse_family(const std::string& name) {
  if (name == "sic") return FamilyTag::kSic;
  if (name == "pmic") return FamilyTag::kPmic;
  if (name == "mic") return FamilyTag::kMic;
  fail(ErrorCode::kInvalidArgument, "unknown POVM family '" + name + "'");
}

PovmFamily make_family(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::kSic: return {tag, 3};
    case FamilyTag::kPmic: return {tag, 9};
    case FamilyTag::kMic: return {tag, 13};
  }
  fail(ErrorCode::kInvalidArgument, "unknown POVM family");
}

std::vector<CMatrix> family_effects(const PovmFamily& family, std::span<const double> x) {
  if (static_cast<int>(x.size()) != family.num_params) {
    fail(ErrorCode::kInvalidArgument, "parameter vector has the wrong length");
  }
  std::vector<CMatrix> effects;
  if (family.tag == FamilyTag::kSic) {
    const Eigen::Matrix3d r = rotation_from_vector({x[0], x[1], x[2]});
    const double s = 1.0 / std::sqrt(3.0);
    const Eigen::Vector3d tet[4] = {{-s, s, s}, {s, -s, s}, {s, s, -s}, {-s, -s, -s}};
    for (const auto& v : tet) effects.push_back(bloch_effect(0.25, 0.25 * (r * v)));
    return effects;
  }
  Eigen::Vector3d b[4];
  for (int k = 0; k < 3; ++k) b[k] = {x[3 * k], x[3 * k + 1], x[3 * k + 2]};
  b[3] = -(b[0] + b[1] + b[2]);
  double a[4];
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    a[k] = b[k].norm();
    if (family.tag == FamilyTag::kMic) a[k] += x[9 + k] * x[9 + k];
    total += a[k];
  }
  if (!(total > 0.0)) total = 1.0;  // all-zero input: linearly dependent, rejected downstream
  for (int k = 0; k < 4; ++k) effects.push_back(bloch_effect(a[k] / total, b[k] / total));
  return effects;
}

std::optional<double> negativity_at(const DecoherenceModel& model, const PovmFamily& family,
                                    std::span<const double> x) {
  const auto l = generator_in_frame(model_superoperator(model), family_effects(family, x));
  if (!l) return std::nullopt;
  return negativity(*l);
}

NegativityReport min_negativity(const DecoherenceModel& model, const PovmFamily& family,
                                const OptimizerConfig& cfg,
                                const std::vector<std::vector<double>>& warm_starts) {
  const CMatrix sup = model_superoperator(model);
  const int warm = static_cast<int>(warm_starts.size());
  const int runs = warm + std::max(0, cfg.restarts);
  if (runs == 0) fail(ErrorCode::kInvalidArgument, "optimizer needs at least one start");
  const double step = family.tag == FamilyTag::kSic ? 0.5 : 0.2;

  std::vector<NmResult> results(runs);
  std::vector<long> infeasible(runs, 0);
  parallel_for(runs, cfg.threads, [&](int r) {
    std::vector<double> x0;
    if (r < warm) {
      x0 = warm_starts[r];
      if (static_cast<int>(x0.size()) != family.num_params) {
        fail(ErrorCode::kInvalidArgument, "warm start has the wrong length");
      }
    } else {
      std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r - warm)));
      x0 = random_start(family, rng, (r - warm) % 2 == 1);
    }
    long& bad = infeasible[r];
    const auto objective = [&](std::span<const double> x) {
      const auto l = generator_in_frame(sup, family_effects(family, x));
      if (!l) {
        ++bad;
        return kInfeasible;
      }
      return negativity(*l);
    };
    results[r] = nelder_mead(objective, std::move(x0), step, cfg.iterations, cfg.convergence);
  });

  NegativityReport rep;
  rep.negativity = kInfeasible;
  for (int r = 0; r < runs; ++r) {
    rep.evaluations += results[r].evaluations;
    rep.iterations += results[r].iterations;
    rep.infeasible += infeasible[r];
    if (results[r].f < rep.negativity) {
      rep.negativity = results[r].f;
      rep.params = results[r].x;
    }
    rep.best_trace.push_back(rep.negativity);
  }
  if (rep.params.empty()) fail(ErrorCode::kInfeasibleParameters, "no feasible POVM was found");
  // Small but nonzero minima are usually an unfinished descent onto the
  // zero set; refine locally before reporting.
  if (rep.negativity >= cfg.zero_tol && rep.negativity < kPolishBelow) {
    const auto objective = [&](std::span<const double> x) {
      const auto l = generator_in_frame(sup, family_effects(family, x));
      if (!l) {
        ++rep.infeasible;
        return kInfeasible;
      }
      return negativity(*l);
    };
    const NmResult polished = nelder_mead(objective, rep.params, 0.1 * step, kPolishFactor * cfg.iterations,
                                          cfg.convergence);
    rep.evaluations += polished.evaluations;
    rep.iterations += polished.iterations;
    if (polished.f < rep.negativity) {
      rep.negativity = polished.f;
      rep.params = polished.x;
    }
    rep.best_trace.push_back(rep.negativity);
  }
  rep.effects = family_effects(family, rep.params);
  return rep;
}

TauCritResult tau_crit(DecoherenceKind kind, double theta, const PovmFamily& family,
                       const OptimizerConfig& cfg, double azimuth) {
  if (!(cfg.tau_start > 0.0) || !(cfg.tau_stop > cfg.tau_start) || cfg.tau_grid < 2 || !(cfg.tau_tol > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "invalid tau search configuration");
  }
  TauCritResult res;
  std::vector<std::vector<double>> warm;
  const auto probe = [&](double tau) {
    const NegativityReport rep = min_negativity({kind, theta, tau, azimuth}, family, cfg, warm);
    res.evaluations += rep.evaluations;
    ++res.min_negativity_runs;
    const bool zero = rep.negativity < cfg.zero_tol;
    return std::make_pair(zero, rep.params);
  };

  // Geometric grid from strong to weak decoherence; the bracket is the last
  // zero followed by a nonzero point.
  const double ratio = std::pow(cfg.tau_stop / cfg.tau_start, 1.0 / (cfg.tau_grid - 1));
  std::optional<double> lo;
  bool have_hi = false;
  double hi = 0.0;
  std::vector<double> lo_params;
  double tau = cfg.tau_start;
  for (int i = 0; i < cfg.tau_grid; ++i, tau *= ratio) {
    auto [zero, params] = probe(tau);
    if (zero) {
      lo = tau;
      have_hi = false;
      lo_params = params;
      warm = {params};
    } else if (lo && !have_hi) {
      hi = tau;
      have_hi = true;
    }
  }
  if (!lo) {
    res.empty = true;
    res.tau_crit = 0.0;
    return res;
  }
  if (!have_hi) {
    double t = *lo * ratio;
    while (t <= cfg.tau_limit) {
      auto [zero, params] = probe(t);
      if (!zero) {
        hi = t;
        have_hi = true;
        break;
      }
      lo = t;
      lo_params = params;
      warm = {params};
      t *= 2.0;
    }
    if (!have_hi) {
      std::ostringstream os;
      os << "negativity stays zero up to tau = " << cfg.tau_limit;
      fail(ErrorCode::kBracketNotFound, os.str());
    }
  }
  double a = *lo;
  double b = hi;
  while (b - a > cfg.tau_tol) {
    const double mid = 0.5 * (a + b);
    auto [zero, params] = probe(mid);
    if (zero) {
      a = mid;
      lo_params = params;
      warm = {params};
    } else {
      b = mid;
    }
  }
  res.tau_lo = a;
  res.tau_hi = b;
  res.tau_crit = 0.5 * (a + b);
  res.best_params = lo_params;
  return res;
}

std::vector<ScanRow> scan(DecoherenceKind kind, const std::vector<double>& thetas, const PovmFamily& family,
                          const OptimizerConfig& cfg) {
  std::vector<ScanRow> rows(thetas.size());
  OptimizerConfig inner = cfg;
  inner.threads = 1;
  parallel_for(static_cast<int>(thetas.size()), cfg.threads, [&](int i) {
    rows[i].theta = thetas[i];
    try {
      const TauCritResult r = tau_crit(kind, thetas[i], family, inner);
      rows[i].tau_crit = r.tau_crit;
      rows[i].evaluations = r.evaluations;
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows, DecoherenceKind kind, const PovmFamily& family,
                        std::uint64_t seed) {
  std::ostringstream os;
  os << "theta,tau_crit,family,kind,seed,evaluations\n";
  for (const auto& r : rows) {
    os << format17(r.theta) << ',' << (r.tau_crit ? format17(*r.tau_crit) : std::string()) << ','
       << family_name(family.tag) << ',' << decoherence_name(kind) << ',' << seed << ',' << r.evaluations << '\n';
  }
  return os.str();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace micprob
