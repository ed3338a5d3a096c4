#ifndef RPOD_EVAL_HPP
#define RPOD_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rpod/rom.hpp"

namespace rpod {

// || C_r A_r^i B_r - C A^i B ||_2 for i = 1..horizon, both sides by repeated
// application. Real reduced models run through the same state-space code
// path as the full model, so the identity reduction reports exact zeros;
// modal models use complex arithmetic and must produce Markov parameters
// that are real to 1e-10 relative (conjugate pairs cancel), anything worse
// throws NumericalError.
Vector markov_error(const StateSpaceSystem& sys, const ReducedOrderModel& rom, Index horizon);

// Markov parameters of a reduced model (real parts, with the same imaginary
// cancellation check).
std::vector<Matrix> rom_markov_parameters(const ReducedOrderModel& rom, Index horizon);

// E_output = ||Y_true - Y_rom||_F / ||Y_true||_F over a shared
// Gaussian-excitation run of `steps` steps from zero initial state. The
// outputs are accumulated streaming, never stored. Throws NumericalError
// when the true output is identically zero.
double output_relative_error(const StateSpaceSystem& sys, const ReducedOrderModel& rom,
                             std::uint64_t excitation_seed, Index steps);

// E_fre(omega) = | sigma_max(H_true) - sigma_max(H_rom) | per grid point.
Vector frequency_response_error(const StateSpaceSystem& sys, const ReducedOrderModel& rom,
                                const Vector& omega_grid);

// Log-spaced default grid, 60 points in [1e-3, pi] rad/step.
Vector default_omega_grid(Index points = 60, double lo = 1e-3, double hi = M_PI);

// Cost-model instantiation: Hankel dimensions and the build/SVD flop
// estimates for the randomized pipeline vs the output-projected one.
struct ComplexityInput {
  Index state_dim = 0;
  Index inputs = 0;
  Index outputs = 0;
  Index projection_rank = 0;        // s
  Index settling_steps = 0;         // t_ss
  Index noise_primal = 0;           // m
  Index noise_adjoint = 0;          // n
  Index impulse_primal_times = 0;   // snapshot times per primal impulse run
  Index impulse_adjoint_times = 0;  // snapshot times per adjoint impulse run
};

struct MethodComplexity {
  Index hankel_rows = 0, hankel_cols = 0;
  double build_flops = 0.0;
  double svd_flops = 0.0;
};

struct ComplexityReport {
  MethodComplexity randomized;         // O(mnN) build, O(m^2 n) SVD
  MethodComplexity output_projection;  // O(p s t_ss^2 N) build, O(p^2 s t_ss^3) SVD
};

ComplexityReport complexity_report(const ComplexityInput& in);

struct TimingRow {
  std::string method;
  PhaseTimings timings;
};

// Fixed-width text table with one row per phase (generate X, generate Z,
// construct Z'X, solve SVD, total) and one column per method.
std::string timing_table(const std::vector<TimingRow>& rows);

struct EvaluationReport {
  Vector markov_error;
  double output_error = 0.0;
  Vector omega_grid;
  Vector frequency_error;
  Index hankel_rows = 0, hankel_cols = 0;
  PhaseTimings timings;
};

struct EvalOptions {
  Index horizon = 100;
  std::uint64_t excitation_seed = 2024;
  Index excitation_steps = 0;  // 0: twice the spectral-radius settling estimate
  Vector omega_grid;           // empty: default_omega_grid()
};

EvaluationReport evaluate(const StateSpaceSystem& sys, const RomResult& result,
                          const EvalOptions& opts = {});

}  // namespace rpod

#endif
