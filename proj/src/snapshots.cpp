#include "rpod/snapshots.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <thread>

#include "rpod/gaussian.hpp"

namespace rpod {

namespace {

void check_times(const std::vector<Index>& times) {
  if (times.empty()) throw InputError("snapshot times must be nonempty");
  if (times.front() < 0) throw InputError("snapshot times must be non-negative");
  for (size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1]) throw InputError("snapshot times must be strictly increasing");
}

// Propagate columns [begin, end) of the initial-condition block through the
// step map, writing snapshots into the time-major column layout.
void propagate_range(const SparseMatrix& step, const Matrix& ics, const std::vector<Index>& times,
                     Index begin, Index end, Matrix& out) {
  const Index r = ics.cols();
  Matrix state = ics.middleCols(begin, end - begin);
  Index step_now = 0;
  for (size_t t = 0; t < times.size(); ++t) {
    while (step_now < times[t]) {
      state = (step * state).eval();
      ++step_now;
    }
    out.middleCols(static_cast<Index>(t) * r + begin, end - begin) = state;
  }
}

}  // namespace

SnapshotEnsemble impulse_ensemble(const SparseMatrix& step, const Matrix& initial_conditions,
                                  const std::vector<Index>& times, SourceSystem source,
                                  int threads) {
  check_times(times);
  if (step.rows() != step.cols() || step.rows() != initial_conditions.rows())
    throw InputError("impulse_ensemble: dimension mismatch");
  const Index r = initial_conditions.cols();
  SnapshotEnsemble ens;
  ens.kind = EnsembleKind::impulse;
  ens.source = source;
  ens.times = times;
  ens.initial_conditions = r;
  ens.columns.resize(step.rows(), static_cast<Index>(times.size()) * r);

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(r)));
  if (workers == 1) {
    propagate_range(step, initial_conditions, times, 0, r, ens.columns);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const Index chunk = (r + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const Index begin = static_cast<Index>(w) * chunk;
      const Index end = std::min<Index>(begin + chunk, r);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        propagate_range(step, initial_conditions, times, begin, end, ens.columns);
      });
    }
    for (auto& th : pool) th.join();
  }
  return ens;
}

SnapshotEnsemble impulse_ensemble_primal(const StateSpaceSystem& sys,
                                         const std::vector<Index>& times, int threads) {
  return impulse_ensemble(sys.A, sys.B, times, SourceSystem::primal, threads);
}

SnapshotEnsemble impulse_ensemble_adjoint(const StateSpaceSystem& sys,
                                          const std::vector<Index>& times, int threads) {
  const SparseMatrix at = sys.A.transpose();
  const Matrix ct = Matrix(sys.C.transpose());
  return impulse_ensemble(at, ct, times, SourceSystem::adjoint, threads);
}

SnapshotEnsemble noise_ensemble(const StateSpaceSystem& sys, Index m, Index delta_t,
                                std::uint64_t seed) {
  if (m < 1) throw InputError("noise_ensemble: m must be >= 1");
  if (delta_t < 1) throw InputError("noise_ensemble: delta_t must be >= 1");
  SnapshotEnsemble ens;
  ens.kind = EnsembleKind::noise_forced;
  ens.source = SourceSystem::primal;
  ens.seed = seed;
  ens.columns.resize(sys.state_dim(), m);
  ens.times.reserve(m);
  GaussianStream gauss(seed);
  Vector x = Vector::Zero(sys.state_dim());
  Index stored = 0;
  for (Index k = 1; k <= m * delta_t; ++k) {
    x = (sys.A * x + sys.B * gauss.draw(sys.input_dim())).eval();
    if (k % delta_t == 0) {
      ens.columns.col(stored++) = x;
      ens.times.push_back(k);
    }
  }
  return ens;
}

namespace {

// max_i ||A^t v_i|| for unit probes; propagates the block t steps.
double probe_decay(const SparseMatrix& a, const Matrix& probes, Index t) {
  Matrix block = probes;
  for (Index s = 0; s < t; ++s) block = (a * block).eval();
  return block.colwise().norm().maxCoeff();
}

}  // namespace

SettlingEstimate estimate_settling_time(const StateSpaceSystem& sys, double tol, Index max_steps,
                                        int probes, std::uint64_t seed) {
  if (tol <= 0) throw InputError("estimate_settling_time: tol must be positive");
  const Index n = sys.state_dim();
  GaussianStream gauss(seed);
  Matrix block = gauss.draw(n, probes);
  for (Index j = 0; j < block.cols(); ++j) block.col(j).normalize();
  const Matrix unit_probes = block;

  // Doubling phase; the running block reuses previous powers.
  Index t = 1;
  Index reached = 0;
  double decay = 1.0;
  while (true) {
    const Index advance = t - reached;
    for (Index s = 0; s < advance; ++s) block = (sys.A * block).eval();
    reached = t;
    decay = block.colwise().norm().maxCoeff();
    if (decay <= tol) break;
    if (t >= max_steps)
      throw NumericalError("estimate_settling_time: no decay below tolerance within " +
                           std::to_string(max_steps) + " steps; system may be unstable");
    t *= 2;
  }

  // Bisect (lo, hi] with hi known to satisfy the bound.
  Index lo = t / 2, hi = t;
  double hi_decay = decay;
  while (hi - lo > 1) {
    const Index mid = lo + (hi - lo) / 2;
    const double d = probe_decay(sys.A, unit_probes, mid);
    if (d <= tol) {
      hi = mid;
      hi_decay = d;
    } else {
      lo = mid;
    }
  }
  return SettlingEstimate{hi, hi_decay, tol};
}

Index settling_from_spectral_radius(const StateSpaceSystem& sys, double tol) {
  const double rho = spectral_radius(sys.A);
  if (rho <= 0.0) return 1;
  if (rho >= 1.0)
    throw NumericalError("settling_from_spectral_radius: spectral radius " + std::to_string(rho) +
                         " >= 1");
  return static_cast<Index>(std::ceil(std::log(tol) / std::log(rho)));
}

SufficiencyReport check_snapshot_sufficiency(const SnapshotEnsemble& X, const SnapshotEnsemble& Z,
                                             double rank_tol) {
  if (X.state_dim() != Z.state_dim())
    throw InputError("check_snapshot_sufficiency: state dimensions differ");
  const Matrix h = Z.columns.transpose() * X.columns;
  Eigen::BDCSVD<Matrix> svd(h);
  const Vector sv = svd.singularValues();
  SufficiencyReport rep;
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cutoff = rank_tol * sv(0);
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cutoff) ++rep.numerical_rank;
  }
  const Index full = std::min(h.rows(), h.cols());
  rep.sufficient = rep.numerical_rank < full;
  if (!rep.sufficient) {
    rep.suggested_primal = 2 * X.snapshot_count();
    rep.suggested_adjoint = 2 * Z.snapshot_count();
  }
  return rep;
}

}  // namespace rpod
