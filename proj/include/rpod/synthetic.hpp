#ifndef RPOD_SYNTHETIC_HPP
#define RPOD_SYNTHETIC_HPP

#include <cstdint>
#include <vector>

#include "rpod/state_space.hpp"

namespace rpod {

// Block-diagonal test systems with a designed mode partition. Real modes are
// scalar diagonal entries, conjugate pairs are 2 x 2 rotation blocks, so the
// eigenstructure is known in closed form. Input/output couplings are
// unit-norm for coupled mode classes; for the decoupled classes they are
// exactly zero (a3_exact) or epsilon-scaled unit-norm (a4_perturbed). For a
// fixed seed the construction is identical across epsilon values, only the
// perturbation scale changes.
enum class SyntheticKind { a3_exact, a4_perturbed };

struct SyntheticConfig {
  SyntheticKind kind = SyntheticKind::a3_exact;
  Index dimension = 10;   // N
  Index coupled_modes = 2;  // l: modes both driven and observed
  double epsilon = 0.0;     // a4_perturbed only
  std::uint64_t seed = 0;
  Index inputs = 2;
  Index outputs = 2;
  double conjugate_fraction = 0.3;  // chance a class slot becomes a rotation pair
  double magnitude_min = 0.3, magnitude_max = 0.95;  // |lambda| range, log-uniform
};

struct SyntheticSystem {
  StateSpaceSystem system;
  Index coupled_modes = 0;        // l
  ComplexVector lambda_coupled;   // eigenvalues of the coupled modes,
                                  // sorted as eigendecompose orders them
  std::vector<Index> coupled_states;  // state indices covered by coupled blocks
};

SyntheticSystem make_synthetic(const SyntheticConfig& cfg);

}  // namespace rpod

#endif
