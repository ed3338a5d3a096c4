#include "rpod/rom.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rpod/gaussian.hpp"

namespace rpod {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

ComplexMatrix output_apply(const SparseMatrix& c, const ComplexMatrix& x) {
  ComplexMatrix out(c.rows(), x.cols());
  out.real() = c * x.real();
  out.imag() = c * x.imag();
  return out;
}

std::vector<Complex> sorted_spectrum(const Matrix& a) {
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalue iteration failed on the reduced operator");
  ComplexVector lambda = solver.eigenvalues();
  std::vector<Complex> out(lambda.data(), lambda.data() + lambda.size());
  std::sort(out.begin(), out.end(), [](const Complex& x, const Complex& y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() < y.imag();
  });
  return out;
}

}  // namespace

std::string to_string(RomMethod method) {
  switch (method) {
    case RomMethod::bpod: return "bpod";
    case RomMethod::bpod_modal: return "bpod-modal";
    case RomMethod::output_projection: return "output-projection";
    case RomMethod::rpod_star: return "rpod-star";
  }
  return "unknown";
}

RomMethod rom_method_from_string(const std::string& name) {
  if (name == "bpod") return RomMethod::bpod;
  if (name == "bpod-modal") return RomMethod::bpod_modal;
  if (name == "output-projection") return RomMethod::output_projection;
  if (name == "rpod-star") return RomMethod::rpod_star;
  throw ConfigError("unknown reduction method: " + name);
}

Matrix hankel_product(const SnapshotEnsemble& Z, const SnapshotEnsemble& X) {
  if (Z.state_dim() != X.state_dim())
    throw InputError("hankel_product: ensembles live in different state spaces");
  return Z.columns.transpose() * X.columns;
}

HankelSvd svd_truncate(const Matrix& hankel, Index l, double rank_tol) {
  const Index full = std::min(hankel.rows(), hankel.cols());
  if (l < 0 || l > full)
    throw InputError("svd_truncate: requested truncation exceeds min(m, n)");
  HankelSvd out;
  out.hankel = hankel;
  out.requested = l;
  out.rank_tol = rank_tol;
  Eigen::BDCSVD<Matrix> svd(hankel, Eigen::ComputeThinU | Eigen::ComputeThinV);
  out.singular_values = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV();
  if (out.singular_values.size() > 0 && out.singular_values(0) > 0.0) {
    const double cutoff = rank_tol * out.singular_values(0);
    for (Index i = 0; i < out.singular_values.size(); ++i)
      if (out.singular_values(i) > cutoff) ++out.numerical_rank;
  }
  if (l == 0) {
    out.truncation = out.numerical_rank;
  } else if (l > out.numerical_rank) {
    out.truncation = out.numerical_rank;
    std::ostringstream w;
    w << "requested truncation " << l << " exceeds numerical rank " << out.numerical_rank
      << "; keeping " << out.numerical_rank;
    out.warning = w.str();
  } else {
    out.truncation = l;
  }
  if (out.truncation < full) out.sigma_next = out.singular_values(out.truncation);
  return out;
}

std::pair<Matrix, Matrix> truncated_bases(const SnapshotEnsemble& X, const SnapshotEnsemble& Z,
                                          const HankelSvd& svd, Index k) {
  Index positive = 0;
  for (Index i = 0; i < svd.singular_values.size(); ++i)
    if (svd.singular_values(i) > 0.0) ++positive;
  if (k < 1 || k > positive)
    throw SizeSelectionError("truncated_bases: size " + std::to_string(k) +
                             " outside the positive singular spectrum (" +
                             std::to_string(positive) + " values)");
  const Vector inv_sqrt = svd.singular_values.head(k).array().rsqrt();
  Matrix t = X.columns * (svd.right.leftCols(k) * inv_sqrt.asDiagonal());
  Matrix s = (inv_sqrt.asDiagonal() * svd.left.leftCols(k).transpose()) * Z.columns.transpose();
  return {std::move(t), std::move(s)};
}

ReducedOrderModel identity_reduction(const StateSpaceSystem& sys) {
  ReducedOrderModel rom;
  rom.A_r = Matrix(sys.A).cast<Complex>();
  rom.B_r = sys.B.cast<Complex>();
  rom.C_r = Matrix(sys.C).cast<Complex>();
  rom.modal = false;
  rom.method = RomMethod::bpod;
  rom.provenance.truncation = sys.state_dim();
  return rom;
}

StateSpaceSystem rom_as_system(const ReducedOrderModel& rom, double dt) {
  if (rom.modal) throw InputError("rom_as_system: modal models are complex-valued");
  return make_dense_system(rom.A_r.real(), rom.B_r.real(), rom.C_r.real(), dt,
                           "rom:" + to_string(rom.method));
}

RealModalForm real_block_form(const ReducedOrderModel& rom) {
  if (!rom.modal) throw InputError("real_block_form: model is not modal");
  const Index l = rom.order();
  RealModalForm out;
  out.A_r = Matrix::Zero(l, l);
  out.B_r = Matrix::Zero(l, rom.input_dim());
  out.C_r = Matrix::Zero(rom.output_dim(), l);
  const double pair_tol = 1e-8;
  Index i = 0;
  while (i < l) {
    const Complex lambda = rom.A_r(i, i);
    const bool paired = i + 1 < l && std::abs(lambda.imag()) > 0 &&
                        std::abs(rom.A_r(i + 1, i + 1) - std::conj(lambda)) <=
                            pair_tol * std::max(1.0, std::abs(lambda));
    if (paired) {
      // state (xi, eta) tracks the real/imaginary parts of the first member;
      // the conjugate partner is implied.
      out.A_r(i, i) = lambda.real();
      out.A_r(i, i + 1) = -lambda.imag();
      out.A_r(i + 1, i) = lambda.imag();
      out.A_r(i + 1, i + 1) = lambda.real();
      out.B_r.row(i) = rom.B_r.row(i).real();
      out.B_r.row(i + 1) = rom.B_r.row(i).imag();
      out.C_r.col(i) = 2.0 * rom.C_r.col(i).real();
      out.C_r.col(i + 1) = -2.0 * rom.C_r.col(i).imag();
      i += 2;
    } else {
      out.A_r(i, i) = lambda.real();
      out.B_r.row(i) = rom.B_r.row(i).real();
      out.C_r.col(i) = rom.C_r.col(i).real();
      ++i;
    }
  }
  return out;
}

namespace {

// Pair permutation read off adjacent exact-conjugate eigenvalues.
std::vector<Index> conjugate_permutation(const ComplexVector& lambda) {
  std::vector<Index> pi(static_cast<size_t>(lambda.size()));
  for (Index i = 0; i < lambda.size(); ++i) pi[static_cast<size_t>(i)] = i;
  for (Index i = 0; i + 1 < lambda.size(); ++i) {
    if (lambda(i).imag() != 0.0 && lambda(i + 1) == std::conj(lambda(i))) {
      pi[static_cast<size_t>(i)] = i + 1;
      pi[static_cast<size_t>(i + 1)] = i;
      ++i;
    }
  }
  return pi;
}

// In exact arithmetic the modal triple mirrors onto itself under the
// conjugate-pair permutation (A = Pi conj(A) Pi, B = Pi conj(B),
// C = conj(C) Pi), which is what makes its Markov parameters real. Rounding
// in the eigenbasis inversion breaks the mirror by O(cond(P) * eps);
// averaging with the mirrored copy restores it so conjugate pairs cancel
// downstream regardless of conditioning.
void enforce_conjugate_structure(ReducedOrderModel& rom, const ComplexVector& lambda) {
  const auto pi = conjugate_permutation(lambda);
  const Index l = rom.order();
  ComplexMatrix a2(l, l);
  ComplexMatrix b2(l, rom.input_dim());
  ComplexMatrix c2(rom.output_dim(), l);
  for (Index i = 0; i < l; ++i) {
    const Index mi = pi[static_cast<size_t>(i)];
    for (Index j = 0; j < l; ++j) a2(i, j) = std::conj(rom.A_r(mi, pi[static_cast<size_t>(j)]));
    b2.row(i) = rom.B_r.row(mi).conjugate();
    c2.col(i) = rom.C_r.col(mi).conjugate();
  }
  rom.A_r = 0.5 * (rom.A_r + a2);
  rom.B_r = 0.5 * (rom.B_r + b2);
  rom.C_r = 0.5 * (rom.C_r + c2);
}

void warn_if_unstable(RomResult& res) {
  const double rho = std::abs(sorted_spectrum(res.rom.A_r.real()).front());
  if (rho >= 1.0) {
    std::ostringstream w;
    w << "reduced operator unstable (max |eigenvalue| = " << rho << ") at l = "
      << res.svd.truncation;
    res.rom.provenance.warnings.push_back(w.str());
  }
}

}  // namespace

RomResult rom_from_ensembles(const StateSpaceSystem& sys, const SnapshotEnsemble& X,
                             const SnapshotEnsemble& Z, const EnsembleRomOptions& opts) {
  if (X.state_dim() != sys.state_dim() || Z.state_dim() != sys.state_dim())
    throw InputError("rom_from_ensembles: ensembles do not match the system");
  RomResult res;
  auto t0 = Clock::now();
  Matrix h = hankel_product(Z, X);
  res.timings.hankel = seconds_since(t0);
  t0 = Clock::now();
  res.svd = svd_truncate(h, opts.l, opts.rank_tol);
  res.timings.svd = seconds_since(t0);
  if (res.svd.truncation == 0)
    throw SizeSelectionError("rom_from_ensembles: Hankel matrix has no usable singular values "
                             "(zero coupling between inputs and outputs?)");

  t0 = Clock::now();
  auto [t, s] = truncated_bases(X, Z, res.svd, res.svd.truncation);
  if (!opts.modal) {
    res.rom.A_r = Matrix(s * (sys.A * t)).cast<Complex>();
    res.rom.B_r = Matrix(s * sys.B).cast<Complex>();
    res.rom.C_r = Matrix(sys.C * t).cast<Complex>();
    res.rom.modal = false;
    res.rom.method = RomMethod::bpod;
    res.bases.direct = std::move(t);
    res.bases.inverse = std::move(s);
  } else {
    const Matrix a_tilde = s * (sys.A * t);
    ModalDecomposition dec;
    try {
      dec = eigendecompose_dense(a_tilde, opts.eigen);
    } catch (const NumericalError& e) {
      if (opts.error_on_unstable)
        throw SizeSelectionError(std::string(e.what()) +
                                 "; run select_rom_size to pick a workable size");
      throw NumericalError(std::string(e.what()) +
                           "; the reduced operator looks defective, consider lowering l");
    }
    const double rho = dec.eigenvalues.cwiseAbs().maxCoeff();
    if (opts.error_on_unstable && rho >= 1.0) {
      std::ostringstream msg;
      msg << "reduced operator unstable at l = " << res.svd.truncation
          << " (max |eigenvalue| = " << rho << "); run select_rom_size to pick a stable size";
      throw SizeSelectionError(msg.str());
    }
    const ComplexMatrix p = dec.right;
    const ComplexMatrix p_inv = dec.left.adjoint();
    res.bases.direct = std::move(t);
    res.bases.inverse = std::move(s);
    res.bases.modal = true;
    res.bases.rom_eigenvalues = dec.eigenvalues;
    res.bases.rom_eigenvectors = p;
    res.bases.modal_direct = res.bases.direct * p;                         // Psi = T P
    res.bases.modal_inverse = p_inv * res.bases.inverse.cast<Complex>();   // Phi = P^{-1} S
    res.rom.A_r = res.bases.modal_inverse * sparse_apply(sys.A, res.bases.modal_direct);
    res.rom.B_r = res.bases.modal_inverse * sys.B.cast<Complex>();
    res.rom.C_r = output_apply(sys.C, res.bases.modal_direct);
    res.rom.modal = true;
    res.rom.method = RomMethod::bpod_modal;
    enforce_conjugate_structure(res.rom, dec.eigenvalues);
  }
  res.timings.reduce = seconds_since(t0);

  auto& p = res.rom.provenance;
  p.truncation = res.svd.truncation;
  p.requested = res.svd.requested;
  p.sigma_next = res.svd.sigma_next;
  p.hankel_singular_values = res.svd.singular_values;
  p.hankel_rows = res.svd.hankel.rows();
  p.hankel_cols = res.svd.hankel.cols();
  p.primal_snapshots = X.snapshot_count();
  p.adjoint_snapshots = Z.snapshot_count();
  if (!res.svd.warning.empty()) p.warnings.push_back(res.svd.warning);
  if (!opts.modal) warn_if_unstable(res);
  res.timings.total = res.timings.phase_sum();
  return res;
}

RomResult bpod(const StateSpaceSystem& sys, const std::vector<Index>& primal_times,
               const std::vector<Index>& adjoint_times, Index l, const RomOptions& opts) {
  const auto t_start = Clock::now();
  auto t0 = Clock::now();
  SnapshotEnsemble x = impulse_ensemble_primal(sys, primal_times, opts.threads);
  const double t_primal = seconds_since(t0);
  t0 = Clock::now();
  SnapshotEnsemble z = impulse_ensemble_adjoint(sys, adjoint_times, opts.threads);
  const double t_adjoint = seconds_since(t0);

  EnsembleRomOptions ropts;
  ropts.l = l;
  ropts.rank_tol = opts.rank_tol;
  RomResult res = rom_from_ensembles(sys, x, z, ropts);
  res.timings.generate_primal = t_primal;
  res.timings.generate_adjoint = t_adjoint;
  res.timings.total = seconds_since(t_start);
  return res;
}

RomResult modalize(const RomResult& base, const StateSpaceSystem& sys, const EigenOptions& opts) {
  if (base.rom.modal) throw InputError("modalize: model is already modal");
  if (base.bases.direct.rows() != sys.state_dim())
    throw InputError("modalize: bases do not match the system");
  ModalDecomposition dec;
  try {
    dec = eigendecompose_dense(base.rom.A_r.real(), opts);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) +
                         "; the reduced operator looks defective, consider lowering l");
  }
  const ComplexMatrix p = dec.right;
  const ComplexMatrix p_inv = dec.left.adjoint();
  RomResult res = base;
  res.bases.modal = true;
  res.bases.rom_eigenvalues = dec.eigenvalues;
  res.bases.rom_eigenvectors = p;
  res.bases.modal_direct = base.bases.direct * p;
  res.bases.modal_inverse = p_inv * base.bases.inverse.cast<Complex>();
  res.rom.A_r = res.bases.modal_inverse * sparse_apply(sys.A, res.bases.modal_direct);
  res.rom.B_r = res.bases.modal_inverse * sys.B.cast<Complex>();
  res.rom.C_r = output_apply(sys.C, res.bases.modal_direct);
  res.rom.modal = true;
  res.rom.method = RomMethod::bpod_modal;
  enforce_conjugate_structure(res.rom, dec.eigenvalues);
  return res;
}

OutputProjection output_projection_basis(const SnapshotEnsemble& X, const SparseMatrix& C,
                                         Index s) {
  if (C.cols() != X.state_dim())
    throw InputError("output_projection_basis: output map does not match the ensemble");
  if (s < 1 || s > C.rows())
    throw InputError("output_projection_basis: rank s must be in [1, q]");
  const Matrix y = C * X.columns;
  Eigen::BDCSVD<Matrix> svd(y, Eigen::ComputeThinU);
  const Matrix u = svd.matrixU();
  OutputProjection out;
  Index rank = 0;
  const Vector sv = svd.singularValues();
  if (sv.size() > 0 && sv(0) > 0.0)
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-12 * sv(0)) ++rank;
  if (s <= u.cols()) {
    out.theta = u.leftCols(s);
  } else {
    // Pad with an orthonormal complement of the data range.
    Eigen::HouseholderQR<Matrix> qr(u);
    Matrix q = qr.householderQ() * Matrix::Identity(C.rows(), C.rows());
    out.theta.resize(C.rows(), s);
    out.theta.leftCols(u.cols()) = u;
    out.theta.rightCols(s - u.cols()) = q.rightCols(C.rows() - u.cols()).leftCols(s - u.cols());
  }
  if (s > rank) {
    std::ostringstream w;
    w << "projection rank " << s << " exceeds the output data rank " << rank
      << "; trailing directions are an arbitrary orthonormal complement";
    out.warning = w.str();
  }
  return out;
}

RomResult bpod_output_projection(const StateSpaceSystem& sys,
                                 const std::vector<Index>& primal_times,
                                 const std::vector<Index>& adjoint_times, Index s, Index l,
                                 const RomOptions& opts) {
  const auto t_start = Clock::now();
  auto t0 = Clock::now();
  SnapshotEnsemble x = impulse_ensemble_primal(sys, primal_times, opts.threads);
  const double t_primal = seconds_since(t0);

  t0 = Clock::now();
  OutputProjection proj = output_projection_basis(x, sys.C, s);
  const double t_proj = seconds_since(t0);
  const SparseMatrix at = sys.A.transpose();
  const Matrix adjoint_ics = sys.C.transpose() * proj.theta;  // C' Theta_s
  SnapshotEnsemble z =
      impulse_ensemble(at, adjoint_ics, adjoint_times, SourceSystem::adjoint, opts.threads);
  const double t_adjoint = seconds_since(t0);  // includes the projection build

  EnsembleRomOptions ropts;
  ropts.l = l;
  ropts.rank_tol = opts.rank_tol;
  RomResult res = rom_from_ensembles(sys, x, z, ropts);
  res.rom.method = RomMethod::output_projection;
  res.rom.provenance.projection_rank = s;
  if (!proj.warning.empty()) res.rom.provenance.warnings.push_back(proj.warning);
  res.timings.generate_primal = t_primal;
  res.timings.generate_adjoint = t_adjoint;
  res.timings.projection = t_proj;
  res.timings.total = seconds_since(t_start);
  return res;
}

RomResult rpod_star(const StateSpaceSystem& sys, Index m, Index n, Index delta_t_primal,
                    Index delta_t_adjoint, Index l, std::uint64_t seed, const RomOptions& opts) {
  if (m < 1 || n < 1) throw InputError("rpod_star: m and n must be >= 1");
  if (delta_t_primal < 1 || delta_t_adjoint < 1)
    throw InputError("rpod_star: snapshot spacings must be >= 1");
  const auto t_start = Clock::now();

  std::vector<std::string> warnings;
  if (opts.check_settling) {
    try {
      const Index t_ss = settling_from_spectral_radius(sys, opts.settling_tol);
      if (m * delta_t_primal < t_ss || n * delta_t_adjoint < t_ss) {
        std::ostringstream w;
        w << "snapshot span (" << m * delta_t_primal << ", " << n * delta_t_adjoint
          << ") steps is below the estimated settling time " << t_ss << " at tol "
          << opts.settling_tol;
        warnings.push_back(w.str());
      }
    } catch (const NumericalError& e) {
      warnings.push_back(std::string("settling check skipped: ") + e.what());
    }
  }

  auto t0 = Clock::now();
  SnapshotEnsemble x = noise_ensemble(sys, m, delta_t_primal, derive_seed(seed, 1));
  const double t_primal = seconds_since(t0);
  t0 = Clock::now();
  SnapshotEnsemble z = noise_ensemble(adjoint(sys), n, delta_t_adjoint, derive_seed(seed, 2));
  z.source = SourceSystem::adjoint;
  const double t_adjoint = seconds_since(t0);

  EnsembleRomOptions ropts;
  ropts.l = l;
  ropts.rank_tol = opts.rank_tol;
  ropts.modal = true;
  ropts.error_on_unstable = true;
  ropts.eigen = opts.eigen;
  RomResult res = rom_from_ensembles(sys, x, z, ropts);
  res.rom.method = RomMethod::rpod_star;
  auto& prov = res.rom.provenance;
  prov.warnings.insert(prov.warnings.begin(), warnings.begin(), warnings.end());
  prov.seed = seed;
  prov.delta_t_primal = delta_t_primal;
  prov.delta_t_adjoint = delta_t_adjoint;
  res.timings.generate_primal = t_primal;
  res.timings.generate_adjoint = t_adjoint;
  res.timings.total = seconds_since(t_start);
  return res;
}

namespace {

// Eigenvalues of `a` matched against `b` by greedy nearest neighbor; returns
// the matched members of `b` (the persistent set).
std::vector<Complex> matched_spectrum(const std::vector<Complex>& a,
                                      const std::vector<Complex>& b, double tol) {
  std::vector<Complex> matched;
  std::vector<bool> used(b.size(), false);
  for (const Complex& va : a) {
    double best = std::numeric_limits<double>::infinity();
    Index best_j = -1;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(va - b[j]);
      if (d < best) {
        best = d;
        best_j = static_cast<Index>(j);
      }
    }
    if (best_j >= 0 && best <= tol) {
      used[static_cast<size_t>(best_j)] = true;
      matched.push_back(b[static_cast<size_t>(best_j)]);
    }
  }
  return matched;
}

bool same_spectrum(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  return a.size() == b.size() && matched_spectrum(a, b, tol).size() == a.size();
}

}  // namespace

SizeSelection select_rom_size(const StateSpaceSystem& sys, const SnapshotEnsemble& X,
                              const SnapshotEnsemble& Z, const HankelSvd& svd,
                              const SizeSelectionOptions& opts) {
  Index positive = 0;
  for (Index i = 0; i < svd.singular_values.size(); ++i)
    if (svd.singular_values(i) > 0.0) ++positive;
  Index start = opts.start_k > 0 ? std::min(opts.start_k, positive)
                                 : std::min(svd.numerical_rank, positive);
  if (start < 1)
    throw SizeSelectionError("select_rom_size: no positive singular values to start from");

  SizeSelection sel;
  std::vector<Complex> prev_significant;
  std::vector<Complex> prev_matched;
  bool have_prev = false;
  bool have_matched = false;
  bool first_trial = true;
  int agreements = 0;
  for (Index k = start; k >= 1; --k) {
    auto [t, s] = truncated_bases(X, Z, svd, k);
    const Matrix a_tilde = s * (sys.A * t);
    std::vector<Complex> spectrum = sorted_spectrum(a_tilde);
    const double max_mag = std::abs(spectrum.front());
    const bool stable = max_mag < 1.0;
    std::vector<Complex> significant;
    if (stable) {
      const double zero_tol = opts.zero_tol_factor * max_mag;
      for (const Complex& v : spectrum)
        if (std::abs(v) >= zero_tol) significant.push_back(v);
    }
    SizeSelection::Trial trial;
    trial.k = k;
    trial.spectrum = Eigen::Map<const ComplexVector>(spectrum.data(),
                                                     static_cast<Index>(spectrum.size()));
    trial.stable = stable;
    trial.near_zero = stable ? k - static_cast<Index>(significant.size()) : 0;
    sel.trace.push_back(std::move(trial));

    if (!stable) {
      have_prev = have_matched = false;
      agreements = 0;
      first_trial = false;
      continue;
    }
    if (first_trial && static_cast<Index>(significant.size()) == k &&
        k < svd.singular_values.size()) {
      // No unstable sizes were skipped, nothing near zero, and a discarded
      // singular tail exists and drops off a cliff: the rank is conclusive.
      // At full rank there is no tail, so no certificate.
      const double sigma_k = svd.singular_values(k - 1);
      const double sigma_next = svd.singular_values(k);
      if (sigma_next <= opts.cliff_tol * sigma_k) {
        sel.selected = k;
        return sel;
      }
    }
    first_trial = false;

    if (have_prev) {
      std::vector<Complex> matched = matched_spectrum(prev_significant, significant,
                                                      opts.match_tol);
      if (have_matched && same_spectrum(matched, prev_matched, opts.match_tol) &&
          !matched.empty()) {
        if (++agreements >= opts.agreement - 1) {
          sel.selected = static_cast<Index>(matched.size());
          return sel;
        }
      } else {
        agreements = 0;
      }
      prev_matched = std::move(matched);
      have_matched = true;
    }
    prev_significant = std::move(significant);
    have_prev = true;
  }
  throw SizeSelectionError("select_rom_size: no stable reduced operator at any size");
}

}  // namespace rpod
