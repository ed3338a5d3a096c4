#ifndef RPOD_SNAPSHOTS_HPP
#define RPOD_SNAPSHOTS_HPP

#include <cstdint>
#include <vector>

#include "rpod/state_space.hpp"

namespace rpod {

enum class EnsembleKind { impulse, noise_forced };
enum class SourceSystem { primal, adjoint };

// Ordered state snapshots. For impulse ensembles the columns are grouped
// time-major: all initial conditions at times[0], then all at times[1], ...
// so column t*r + i holds x_i(times[t]) for r initial conditions.
struct SnapshotEnsemble {
  Matrix columns;            // N x M
  std::vector<Index> times;  // sample steps, strictly increasing, >= 0
  EnsembleKind kind = EnsembleKind::impulse;
  SourceSystem source = SourceSystem::primal;
  std::uint64_t seed = 0;           // noise-forced only
  Index initial_conditions = 1;     // impulse only: columns per time

  Index state_dim() const { return columns.rows(); }
  Index snapshot_count() const { return columns.cols(); }
};

// Impulse-response ensemble of the primal system: the columns of B are used
// as initial conditions with zero input, sampled at the given steps (step 0
// is the initial condition itself). p independent propagations; `threads`
// may split them across workers, the result is identical for any count.
SnapshotEnsemble impulse_ensemble_primal(const StateSpaceSystem& sys,
                                         const std::vector<Index>& times, int threads = 1);

// Same for the adjoint system with the rows of C as initial conditions.
SnapshotEnsemble impulse_ensemble_adjoint(const StateSpaceSystem& sys,
                                          const std::vector<Index>& times, int threads = 1);

// Impulse ensemble of an arbitrary step map with explicit initial conditions
// (used for output-projected adjoint runs).
SnapshotEnsemble impulse_ensemble(const SparseMatrix& step, const Matrix& initial_conditions,
                                  const std::vector<Index>& times, SourceSystem source,
                                  int threads = 1);

// One trajectory from zero state driven by i.i.d. N(0, I_p) inputs each
// step, sampled at delta_t, 2 delta_t, ..., m delta_t. Reproducible for a
// fixed seed.
SnapshotEnsemble noise_ensemble(const StateSpaceSystem& sys, Index m, Index delta_t,
                                std::uint64_t seed);

struct SettlingEstimate {
  Index steps = 0;
  double decay_norm = 0.0;  // achieved max_i ||A^t v_i|| over the unit probes
  double tolerance = 0.0;
};

// Smallest step count t with max_i ||A^t v_i|| <= tol over `probes` random
// unit vectors, located by doubling then bisection. Throws NumericalError
// when the budget is exhausted (stability suspect).
SettlingEstimate estimate_settling_time(const StateSpaceSystem& sys, double tol = 1e-3,
                                        Index max_steps = Index(1) << 22, int probes = 8,
                                        std::uint64_t seed = 0x5eedULL);

// Cheap settling proxy from the spectral radius: smallest t with rho^t <= tol.
Index settling_from_spectral_radius(const StateSpaceSystem& sys, double tol = 1e-3);

struct SufficiencyReport {
  Index numerical_rank = 0;
  bool sufficient = false;
  Index suggested_primal = 0;   // enlarged m when insufficient
  Index suggested_adjoint = 0;  // enlarged n when insufficient
};

// Rank check on Z'X: when the product has full rank min(m, n) the ensembles
// may be missing modes, so the verdict is "insufficient" with a suggested
// enlargement; otherwise the snapshot counts already expose the rank.
SufficiencyReport check_snapshot_sufficiency(const SnapshotEnsemble& X, const SnapshotEnsemble& Z,
                                             double rank_tol = 1e-10);

}  // namespace rpod

#endif
