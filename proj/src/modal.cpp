#include "rpod/modal.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rpod {

namespace {

bool eig_less(const Complex& a, const Complex& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() < b.imag();
}

std::string describe_cluster(const ComplexVector& lambda) {
  // Name the tightest eigenvalue pair; that is where the eigenbasis collapses.
  Index bi = 0, bj = 1;
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lambda.size(); ++i)
    for (Index j = i + 1; j < lambda.size(); ++j) {
      const double d = std::abs(lambda(i) - lambda(j));
      if (d < best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  std::ostringstream msg;
  msg << "eigenvalues " << bi << " and " << bj << " near " << lambda(bi).real();
  if (lambda(bi).imag() != 0.0) msg << (lambda(bi).imag() < 0 ? "" : "+") << lambda(bi).imag() << "i";
  msg << " (separation " << best << ")";
  return msg.str();
}

}  // namespace

ModalDecomposition eigendecompose_dense(const Matrix& a, const EigenOptions& opts) {
  if (a.rows() != a.cols()) throw InputError("eigendecompose: matrix must be square");
  const Index n = a.rows();
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigendecompose: eigenvalue iteration failed to converge");
  ComplexVector lambda = solver.eigenvalues();
  ComplexMatrix v = solver.eigenvectors();

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return eig_less(lambda(i), lambda(j)); });

  ModalDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.right.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    dec.eigenvalues(k) = lambda(order[k]);
    dec.right.col(k) = v.col(order[k]);
  }

  // Bring each conjugate partner adjacent to its mate. Repeated magnitudes
  // (symmetric grids) can interleave members of distinct pairs after the
  // sort, so the partner is searched for explicitly.
  for (Index k = 0; k < n; ++k) {
    if (dec.eigenvalues(k).imag() == 0.0) continue;
    const Complex want = std::conj(dec.eigenvalues(k));
    Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Index j = k + 1; j < n; ++j) {
      const double d = std::abs(dec.eigenvalues(j) - want);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best > 0 && best_dist <= 1e-10 * std::abs(dec.eigenvalues(k))) {
      if (best != k + 1) {
        std::swap(dec.eigenvalues(best), dec.eigenvalues(k + 1));
        dec.right.col(best).swap(dec.right.col(k + 1));
      }
      ++k;  // skip the partner
    }
  }

  // Normalize columns and pin the phase; conjugate pairs are made exact by
  // construction (second member = conjugate of the first).
  for (Index k = 0; k < n; ++k) {
    ComplexVector col = dec.right.col(k);
    col /= col.norm();
    Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    const Complex pivot = col(imax);
    if (std::abs(pivot) > 0.0) col *= std::conj(pivot) / std::abs(pivot);
    dec.right.col(k) = col;
    if (dec.eigenvalues(k).imag() != 0.0 && k + 1 < n &&
        std::abs(dec.eigenvalues(k + 1) - std::conj(dec.eigenvalues(k))) <=
            1e-10 * std::abs(dec.eigenvalues(k))) {
      dec.eigenvalues(k + 1) = std::conj(dec.eigenvalues(k));
      dec.right.col(k + 1) = col.conjugate();
      ++k;
    }
  }

  // Left eigenvectors via inversion: U' = V^{-1} gives U'V = I directly.
  Eigen::PartialPivLU<ComplexMatrix> lu(dec.right);
  ComplexMatrix vinv = lu.solve(ComplexMatrix::Identity(n, n));
  dec.left = vinv.adjoint();

  Eigen::JacobiSVD<ComplexMatrix> svd(dec.right);
  const double smin = svd.singularValues()(n - 1);
  const double cond = smin > 0.0 ? svd.singularValues()(0) / smin
                                 : std::numeric_limits<double>::infinity();
  if (!(cond < opts.condition_bound))
    throw NumericalError("eigendecompose: near-defective matrix, eigenvector condition number " +
                         std::to_string(cond) + " exceeds bound; offending cluster: " +
                         describe_cluster(dec.eigenvalues));
  return dec;
}

ModalDecomposition eigendecompose(const StateSpaceSystem& sys, const EigenOptions& opts) {
  return eigendecompose_dense(Matrix(sys.A), opts);
}

ModePartition classify_modes(const ModalDecomposition& dec, const StateSpaceSystem& sys,
                             double eps_class) {
  if (dec.right.rows() != sys.state_dim())
    throw InputError("classify_modes: decomposition does not match the system");
  const Index n = dec.eigenvalues.size();
  ModePartition part;
  part.threshold = eps_class;
  part.controllability.resize(n);
  part.observability.resize(n);
  const double b_scale = sys.B.norm();
  const double c_scale = sys.C.norm();
  const ComplexMatrix ub = dec.left.adjoint() * sys.B;  // rows: U_i' B
  ComplexMatrix cv(sys.output_dim(), n);                // columns: C V_i
  cv.real() = sys.C * dec.right.real();
  cv.imag() = sys.C * dec.right.imag();
  for (Index i = 0; i < n; ++i) {
    part.controllability(i) = ub.row(i).norm();
    part.observability(i) = cv.col(i).norm();
    const bool ctrb = part.controllability(i) > eps_class * b_scale;
    const bool obs = part.observability(i) > eps_class * c_scale;
    if (ctrb && obs)
      part.controllable_observable.push_back(i);
    else if (ctrb)
      part.controllable_unobservable.push_back(i);
    else if (obs)
      part.uncontrollable_observable.push_back(i);
    else
      part.uncontrollable_unobservable.push_back(i);
  }
  return part;
}

}  // namespace rpod
