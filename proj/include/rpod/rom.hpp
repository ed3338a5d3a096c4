#ifndef RPOD_ROM_HPP
#define RPOD_ROM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rpod/modal.hpp"
#include "rpod/snapshots.hpp"
#include "rpod/state_space.hpp"

namespace rpod {

// Z'X and its singular value decomposition. `truncation` is the effective
// basis size: the requested size clamped to the numerical rank so that
// 1/sqrt(sigma) never amplifies noise directions; a clamp is recorded as a
// warning, not an error.
struct HankelSvd {
  Matrix hankel;          // n x m
  Vector singular_values; // all min(m, n), non-increasing
  Matrix left, right;     // thin singular vectors
  Index numerical_rank = 0;
  Index requested = 0;    // 0 = automatic
  Index truncation = 0;
  double sigma_next = 0.0;  // sigma_{l+1}, 0 when absent
  double rank_tol = 0.0;
  std::string warning;
};

Matrix hankel_product(const SnapshotEnsemble& Z, const SnapshotEnsemble& X);
HankelSvd svd_truncate(const Matrix& hankel, Index l = 0, double rank_tol = 1e-10);

// Direct/inverse bases T = X R Sigma^{-1/2}, S = Sigma^{-1/2} L' Z' at size k
// (clamped to the strictly positive singular values).
std::pair<Matrix, Matrix> truncated_bases(const SnapshotEnsemble& X, const SnapshotEnsemble& Z,
                                          const HankelSvd& svd, Index k);

struct RomBases {
  Matrix direct;   // T: N x l
  Matrix inverse;  // S: l x N, with S T = I
  bool modal = false;
  // Populated when modal: eigenvalues/eigenvectors of the intermediate
  // reduced operator and the projected bases Psi = T P, Phi = P^{-1} S.
  ComplexVector rom_eigenvalues;
  ComplexMatrix rom_eigenvectors;
  ComplexMatrix modal_direct;
  ComplexMatrix modal_inverse;
};

enum class RomMethod { bpod, bpod_modal, output_projection, rpod_star };
std::string to_string(RomMethod method);
RomMethod rom_method_from_string(const std::string& name);

struct RomProvenance {
  Index truncation = 0;
  Index requested = 0;
  double sigma_next = 0.0;
  Vector hankel_singular_values;
  Index hankel_rows = 0, hankel_cols = 0;
  std::uint64_t seed = 0;
  Index primal_snapshots = 0, adjoint_snapshots = 0;
  Index delta_t_primal = 0, delta_t_adjoint = 0;
  Index projection_rank = 0;  // s, output projection only
  std::vector<std::string> warnings;
};

struct ReducedOrderModel {
  ComplexMatrix A_r;  // l x l
  ComplexMatrix B_r;  // l x p
  ComplexMatrix C_r;  // q x l
  bool modal = false;  // complex-valued modal coordinates, conjugate pairs adjacent
  RomMethod method = RomMethod::bpod;
  RomProvenance provenance;

  Index order() const { return A_r.rows(); }
  Index input_dim() const { return B_r.cols(); }
  Index output_dim() const { return C_r.rows(); }
};

// The model reproduced without reduction, (A, B, C) verbatim; the reference
// point for error metrics.
ReducedOrderModel identity_reduction(const StateSpaceSystem& sys);

// A real reduced model viewed as a (dense-sparse) state-space system so the
// full-order evaluation paths apply to it unchanged.
StateSpaceSystem rom_as_system(const ReducedOrderModel& rom, double dt = 1.0);

// Real block-diagonal export of a modal model: conjugate pairs become 2 x 2
// rotation blocks, real modes stay scalar. Markov parameters are preserved.
struct RealModalForm {
  Matrix A_r, B_r, C_r;
};
RealModalForm real_block_form(const ReducedOrderModel& rom);

struct PhaseTimings {
  double generate_primal = 0.0;
  double generate_adjoint = 0.0;  // includes the output-projection build when present
  double projection = 0.0;        // portion of generate_adjoint spent on Theta_s
  double hankel = 0.0;
  double svd = 0.0;
  double reduce = 0.0;  // bases, reduced operator, eigensolve, model assembly
  double total = 0.0;

  double phase_sum() const {
    return generate_primal + generate_adjoint + hankel + svd + reduce;
  }
};

struct RomResult {
  ReducedOrderModel rom;
  RomBases bases;
  HankelSvd svd;
  PhaseTimings timings;
};

struct EnsembleRomOptions {
  Index l = 0;  // 0 = numerical rank
  double rank_tol = 1e-10;
  bool modal = false;              // project onto the reduced eigenbasis
  bool error_on_unstable = false;  // SizeSelectionError instead of a warning
  EigenOptions eigen;
};

// The common tail of every pipeline: Hankel product, SVD truncation, bases,
// reduced triple, optionally projected onto the eigenbasis of the reduced
// operator. Ensembles may come from anywhere (impulse, noise, recombined).
RomResult rom_from_ensembles(const StateSpaceSystem& sys, const SnapshotEnsemble& X,
                             const SnapshotEnsemble& Z, const EnsembleRomOptions& opts = {});

struct RomOptions {
  double rank_tol = 1e-10;
  int threads = 1;
  double settling_tol = 1e-3;   // used for the t_ss precondition warning
  bool check_settling = true;
  EigenOptions eigen;
};

// Balanced POD from impulse-response ensembles sampled at the given steps.
// l = 0 picks the numerical rank.
RomResult bpod(const StateSpaceSystem& sys, const std::vector<Index>& primal_times,
               const std::vector<Index>& adjoint_times, Index l = 0, const RomOptions& opts = {});

// Project a (real) reduced model onto the eigenbasis of its reduced
// operator: A_b = P Lambda P^{-1}, Phi = P^{-1} S, Psi = T P, and the modal
// model is (Phi A Psi, Phi B, C Psi).
RomResult modalize(const RomResult& base, const StateSpaceSystem& sys,
                   const EigenOptions& opts = {});

// POD modes of the projected output data Y = C X: the top-s left singular
// vectors, padded with an orthonormal complement when s exceeds what the
// data provides.
struct OutputProjection {
  Matrix theta;  // q x s, orthonormal columns
  std::string warning;
};
OutputProjection output_projection_basis(const SnapshotEnsemble& X, const SparseMatrix& C,
                                         Index s);

// Balanced POD with the adjoint simulations driven by C' Theta_s instead of
// the full C', shrinking q adjoint runs to s.
RomResult bpod_output_projection(const StateSpaceSystem& sys,
                                 const std::vector<Index>& primal_times,
                                 const std::vector<Index>& adjoint_times, Index s, Index l = 0,
                                 const RomOptions& opts = {});

// Randomized POD from one white-noise-forced trajectory of each of the
// primal and adjoint systems, m (resp. n) snapshots every delta_t steps,
// truncated at l (0 = numerical rank) and projected onto the eigenbasis of
// the reduced operator. Violating m delta_t >= t_ss is a recorded warning,
// not an error; an unstable reduced operator at the requested size throws
// SizeSelectionError.
RomResult rpod_star(const StateSpaceSystem& sys, Index m, Index n, Index delta_t_primal,
                    Index delta_t_adjoint, Index l, std::uint64_t seed,
                    const RomOptions& opts = {});

struct SizeSelectionOptions {
  double zero_tol_factor = 1e-6;  // |lambda| < factor * max|lambda| is "near zero"
  double match_tol = 1e-3;        // nearest-neighbor eigenvalue matching across sizes
  int agreement = 2;              // consecutive matching trial pairs before stopping
  double cliff_tol = 1e-6;        // sigma_{k+1}/sigma_k certifying a negligible tail
  Index start_k = 0;              // 0 = numerical rank of the SVD
};

struct SizeSelection {
  Index selected = 0;
  struct Trial {
    Index k;
    ComplexVector spectrum;
    bool stable;
    Index near_zero;
  };
  std::vector<Trial> trace;
};

// Trial-and-error reduced-size selection. Starting from the numerical rank,
// k decreases past unstable reduced operators. A clean first trial (stable,
// no near-zero eigenvalues, and a singular tail falling off a cliff) is
// conclusive on its own. Otherwise eigenvalues are matched across
// consecutive trials: genuine modes persist to high accuracy while the
// leftovers of the noise directions drift, so the size is the persistent-set
// count once it repeats.
SizeSelection select_rom_size(const StateSpaceSystem& sys, const SnapshotEnsemble& X,
                              const SnapshotEnsemble& Z, const HankelSvd& svd,
                              const SizeSelectionOptions& opts = {});

}  // namespace rpod

#endif
