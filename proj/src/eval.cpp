#include "rpod/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "rpod/gaussian.hpp"

namespace rpod {

namespace {

constexpr double kImagTol = 1e-10;

// Imaginary parts must cancel across conjugate pairs. The reference scale is
// the largest matrix seen along the sequence: later parameters decay towards
// the rounding floor, where a per-matrix relative test would be meaningless.
struct ImaginaryGuard {
  double reference = 0.0;
  void check(const ComplexMatrix& m, const char* where) {
    reference = std::max(reference, m.norm());
    const double imag = m.imag().norm();
    if (reference > 0.0 && imag > kImagTol * reference) {
      std::ostringstream msg;
      msg << where << ": imaginary residue " << std::scientific << imag / reference
          << " relative to the sequence scale; conjugate-pair structure is broken";
      throw NumericalError(msg.str());
    }
  }
};

}  // namespace

std::vector<Matrix> rom_markov_parameters(const ReducedOrderModel& rom, Index horizon) {
  if (horizon < 1) throw InputError("rom_markov_parameters: horizon must be >= 1");
  std::vector<Matrix> out;
  out.reserve(horizon);
  if (!rom.modal) {
    Matrix power = rom.B_r.real();
    const Matrix a = rom.A_r.real();
    const Matrix c = rom.C_r.real();
    for (Index i = 1; i <= horizon; ++i) {
      power = a * power;
      out.emplace_back(c * power);
    }
  } else {
    ComplexMatrix power = rom.B_r;
    ImaginaryGuard guard;
    for (Index i = 1; i <= horizon; ++i) {
      power = rom.A_r * power;
      const ComplexMatrix m = rom.C_r * power;
      guard.check(m, "rom_markov_parameters");
      out.emplace_back(m.real());
    }
  }
  return out;
}

Vector markov_error(const StateSpaceSystem& sys, const ReducedOrderModel& rom, Index horizon) {
  if (rom.input_dim() != sys.input_dim() || rom.output_dim() != sys.output_dim())
    throw InputError("markov_error: reduced model input/output dimensions do not match");
  if (horizon < 1) throw InputError("markov_error: horizon must be >= 1");
  Vector err(horizon);

  Matrix full_power = sys.B;
  if (!rom.modal) {
    const StateSpaceSystem sysr = rom_as_system(rom, sys.dt);
    Matrix rom_power = sysr.B;
    for (Index i = 0; i < horizon; ++i) {
      full_power = (sys.A * full_power).eval();
      rom_power = (sysr.A * rom_power).eval();
      const Matrix diff = Matrix(sys.C * full_power) - Matrix(sysr.C * rom_power);
      err(i) = max_singular_value(diff.cast<Complex>());
    }
  } else {
    ComplexMatrix rom_power = rom.B_r;
    ImaginaryGuard guard;
    for (Index i = 0; i < horizon; ++i) {
      full_power = (sys.A * full_power).eval();
      rom_power = rom.A_r * rom_power;
      const ComplexMatrix m = rom.C_r * rom_power;
      guard.check(m, "markov_error");
      const Matrix diff = Matrix(sys.C * full_power) - m.real();
      err(i) = max_singular_value(diff.cast<Complex>());
    }
  }
  return err;
}

double output_relative_error(const StateSpaceSystem& sys, const ReducedOrderModel& rom,
                             std::uint64_t excitation_seed, Index steps) {
  if (rom.input_dim() != sys.input_dim() || rom.output_dim() != sys.output_dim())
    throw InputError("output_relative_error: reduced model dimensions do not match");
  if (steps < 1) throw InputError("output_relative_error: need at least one step");

  GaussianStream gauss(excitation_seed);
  Vector x = Vector::Zero(sys.state_dim());
  double num = 0.0, den = 0.0;

  if (!rom.modal) {
    const StateSpaceSystem sysr = rom_as_system(rom, sys.dt);
    Vector xr = Vector::Zero(sysr.state_dim());
    for (Index k = 0; k < steps; ++k) {
      const Vector u = gauss.draw(sys.input_dim());
      x = (sys.A * x + sys.B * u).eval();
      xr = (sysr.A * xr + sysr.B * u).eval();
      const Vector y = sys.C * x;
      const Vector yr = sysr.C * xr;
      num += (y - yr).squaredNorm();
      den += y.squaredNorm();
    }
  } else {
    ComplexVector xr = ComplexVector::Zero(rom.order());
    for (Index k = 0; k < steps; ++k) {
      const Vector u = gauss.draw(sys.input_dim());
      x = (sys.A * x + sys.B * u).eval();
      xr = rom.A_r * xr + rom.B_r * u.cast<Complex>();
      const Vector y = sys.C * x;
      const ComplexVector yc = rom.C_r * xr;
      num += (y - yc.real()).squaredNorm();
      den += y.squaredNorm();
    }
  }
  if (den == 0.0)
    throw NumericalError("output_relative_error: true output is identically zero");
  return std::sqrt(num / den);
}

Vector frequency_response_error(const StateSpaceSystem& sys, const ReducedOrderModel& rom,
                                const Vector& omega_grid) {
  if (rom.input_dim() != sys.input_dim() || rom.output_dim() != sys.output_dim())
    throw InputError("frequency_response_error: reduced model dimensions do not match");
  Vector err(omega_grid.size());
  if (!rom.modal) {
    const StateSpaceSystem sysr = rom_as_system(rom, sys.dt);
    for (Index i = 0; i < omega_grid.size(); ++i) {
      const double full = transfer_function(sys, omega_grid(i)).sigma_max;
      const double reduced = transfer_function(sysr, omega_grid(i)).sigma_max;
      err(i) = std::abs(full - reduced);
    }
  } else {
    for (Index i = 0; i < omega_grid.size(); ++i) {
      const double full = transfer_function(sys, omega_grid(i)).sigma_max;
      const double reduced =
          transfer_function_dense(rom.A_r, rom.B_r, rom.C_r, omega_grid(i)).sigma_max;
      err(i) = std::abs(full - reduced);
    }
  }
  return err;
}

Vector default_omega_grid(Index points, double lo, double hi) {
  if (points < 2 || lo <= 0 || hi <= lo) throw InputError("default_omega_grid: bad parameters");
  Vector grid(points);
  const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(points - 1);
  for (Index i = 0; i < points; ++i) grid(i) = std::exp(std::log(lo) + step * i);
  return grid;
}

ComplexityReport complexity_report(const ComplexityInput& in) {
  ComplexityReport rep;
  rep.randomized.hankel_rows = in.noise_adjoint;
  rep.randomized.hankel_cols = in.noise_primal;
  rep.randomized.build_flops = static_cast<double>(in.noise_primal) * in.noise_adjoint *
                               in.state_dim;
  {
    const double lo = std::min(in.noise_primal, in.noise_adjoint);
    const double hi = std::max(in.noise_primal, in.noise_adjoint);
    rep.randomized.svd_flops = lo * lo * hi;
  }
  rep.output_projection.hankel_rows = in.projection_rank * in.impulse_adjoint_times;
  rep.output_projection.hankel_cols = in.inputs * in.impulse_primal_times;
  const double tss = static_cast<double>(in.settling_steps);
  rep.output_projection.build_flops =
      static_cast<double>(in.inputs) * in.projection_rank * tss * tss * in.state_dim;
  rep.output_projection.svd_flops = static_cast<double>(in.inputs) * in.inputs *
                                    in.projection_rank * tss * tss * tss;
  return rep;
}

std::string timing_table(const std::vector<TimingRow>& rows) {
  static const char* phase_names[] = {"generate X", "generate Z", "construct Z'X", "solve SVD",
                                      "total"};
  std::ostringstream out;
  out << std::left << std::setw(16) << "phase";
  for (const auto& r : rows) out << std::right << std::setw(20) << r.method;
  out << "\n";
  for (int phase = 0; phase < 5; ++phase) {
    out << std::left << std::setw(16) << phase_names[phase];
    for (const auto& r : rows) {
      double v = 0.0;
      switch (phase) {
        case 0: v = r.timings.generate_primal; break;
        case 1: v = r.timings.generate_adjoint; break;
        case 2: v = r.timings.hankel; break;
        case 3: v = r.timings.svd; break;
        case 4: v = r.timings.total; break;
      }
      std::ostringstream cell;
      cell << std::scientific << std::setprecision(4) << v << "s";
      out << std::right << std::setw(20) << cell.str();
    }
    out << "\n";
  }
  return out.str();
}

EvaluationReport evaluate(const StateSpaceSystem& sys, const RomResult& result,
                          const EvalOptions& opts) {
  EvaluationReport rep;
  rep.markov_error = markov_error(sys, result.rom, opts.horizon);
  Index steps = opts.excitation_steps;
  if (steps == 0) steps = 2 * settling_from_spectral_radius(sys);
  rep.output_error = output_relative_error(sys, result.rom, opts.excitation_seed, steps);
  rep.omega_grid = opts.omega_grid.size() > 0 ? opts.omega_grid : default_omega_grid();
  rep.frequency_error = frequency_response_error(sys, result.rom, rep.omega_grid);
  rep.hankel_rows = result.svd.hankel.rows();
  rep.hankel_cols = result.svd.hankel.cols();
  rep.timings = result.timings;
  return rep;
}

}  // namespace rpod
