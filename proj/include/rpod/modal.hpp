#ifndef RPOD_MODAL_HPP
#define RPOD_MODAL_HPP

#include <vector>

#include "rpod/state_space.hpp"

namespace rpod {

// Eigendecomposition A = V Lambda U' with biorthogonal normalization
// U' V = I. Right eigenvectors have unit 2-norm (largest-magnitude entry
// rotated real-positive for determinism); left eigenvectors carry the
// scaling. Eigenvalues are sorted by descending magnitude, ties broken by
// descending real part then ascending imaginary part, so conjugate pairs of
// a real matrix sit adjacent with the negative-imaginary member first.
struct ModalDecomposition {
  ComplexVector eigenvalues;
  ComplexMatrix right;  // V, one eigenvector per column
  ComplexMatrix left;   // U, with left.adjoint() * right = I
};

struct EigenOptions {
  // Practical diagonalizability check: reject when cond_2(V) exceeds this.
  double condition_bound = 1e10;
};

ModalDecomposition eigendecompose_dense(const Matrix& a, const EigenOptions& opts = {});
ModalDecomposition eigendecompose(const StateSpaceSystem& sys, const EigenOptions& opts = {});

// Four-way mode partition: a mode is controllable when ||U_i' B|| exceeds
// eps_class * ||B||_F and observable when ||C V_i|| exceeds eps_class * ||C||_F.
struct ModePartition {
  std::vector<Index> controllable_observable;
  std::vector<Index> controllable_unobservable;
  std::vector<Index> uncontrollable_observable;
  std::vector<Index> uncontrollable_unobservable;
  Vector controllability;  // ||U_i' B|| per mode
  Vector observability;    // ||C V_i|| per mode
  double threshold = 0.0;
};

ModePartition classify_modes(const ModalDecomposition& dec, const StateSpaceSystem& sys,
                             double eps_class = 1e-8);

}  // namespace rpod

#endif
