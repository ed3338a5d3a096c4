#include "rpod/state_space.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <cmath>
#include <deque>

namespace rpod {

void StateSpaceSystem::validate() const {
  if (A.rows() != A.cols()) throw InputError("A must be square");
  if (B.rows() != A.rows()) throw InputError("B row count must match the state dimension");
  if (C.cols() != A.rows()) throw InputError("C column count must match the state dimension");
  if (B.cols() < 1 || C.rows() < 1) throw InputError("B and C must be nonempty");
  if (!B.allFinite()) throw InputError("B has non-finite entries");
  for (Index j = 0; j < A.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
      if (!std::isfinite(it.value())) throw InputError("A has non-finite entries");
  for (Index j = 0; j < C.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(C, j); it; ++it)
      if (!std::isfinite(it.value())) throw InputError("C has non-finite entries");
}

StateSpaceSystem make_system(SparseMatrix a, Matrix b, SparseMatrix c, double dt,
                             std::string description) {
  StateSpaceSystem sys{std::move(a), std::move(b), std::move(c), dt, std::move(description)};
  sys.A.makeCompressed();
  sys.C.makeCompressed();
  sys.validate();
  return sys;
}

StateSpaceSystem make_dense_system(const Matrix& a, const Matrix& b, const Matrix& c, double dt,
                                   std::string description) {
  SparseMatrix as = a.sparseView();
  SparseMatrix cs = c.sparseView();
  return make_system(std::move(as), b, std::move(cs), dt, std::move(description));
}

StateSpaceSystem adjoint(const StateSpaceSystem& sys) {
  StateSpaceSystem adj;
  adj.A = sys.A.transpose();
  adj.B = Matrix(sys.C.transpose());
  adj.C = sys.B.transpose().sparseView();
  adj.dt = sys.dt;
  adj.description = sys.description.empty() ? std::string("adjoint") : "adjoint of " + sys.description;
  adj.A.makeCompressed();
  adj.C.makeCompressed();
  return adj;
}

Matrix propagate(const StateSpaceSystem& sys, const Vector& x0, const Matrix& inputs) {
  if (x0.size() != sys.state_dim()) throw InputError("propagate: x0 length must be N");
  if (inputs.rows() != sys.input_dim())
    throw InputError("propagate: each input column must have length p");
  const Index steps = inputs.cols();
  Matrix states(sys.state_dim(), steps);
  Vector x = x0;
  for (Index k = 0; k < steps; ++k) {
    x = (sys.A * x + sys.B * inputs.col(k)).eval();
    states.col(k) = x;
  }
  return states;
}

std::vector<Matrix> markov_parameters(const StateSpaceSystem& sys, Index horizon) {
  if (horizon < 1) throw InputError("markov_parameters: horizon must be >= 1");
  std::vector<Matrix> out;
  out.reserve(horizon);
  Matrix power = sys.B;  // A^i B, never forming A^i
  for (Index i = 1; i <= horizon; ++i) {
    power = (sys.A * power).eval();
    out.emplace_back(sys.C * power);
  }
  return out;
}

double spectral_radius(const SparseMatrix& a, double tol, Index max_iter) {
  if (a.rows() != a.cols()) throw InputError("spectral_radius: matrix must be square");
  const Index n = a.rows();
  if (n == 0) return 0.0;
  // Deterministic pseudo-random start, nonzero in every component.
  Vector v(n);
  std::uint64_t s = 0x9e3779b97f4a7c15ULL;
  for (Index i = 0; i < n; ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    v(i) = 0.5 + static_cast<double>(s >> 11) * 0x1.0p-53;
  }
  v.normalize();
  // Norm-ratio power iteration; a geometric mean over a short window smooths
  // the oscillation caused by complex dominant pairs.
  const int window = 8;
  std::deque<double> ratios;
  double prev_estimate = -1.0;
  for (Index it = 0; it < max_iter; ++it) {
    Vector w = a * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;  // nilpotent within fp
    ratios.push_back(norm);
    if (static_cast<int>(ratios.size()) > window) ratios.pop_front();
    v = w / norm;
    double logsum = 0.0;
    for (double r : ratios) logsum += std::log(r);
    const double estimate = std::exp(logsum / static_cast<double>(ratios.size()));
    if (static_cast<int>(ratios.size()) == window &&
        std::abs(estimate - prev_estimate) <= tol * std::abs(estimate))
      return estimate;
    prev_estimate = estimate;
  }
  return prev_estimate;  // best effort after budget
}

namespace {

TransferResponse finish_response(const ComplexMatrix& h) {
  TransferResponse resp;
  resp.h = h;
  resp.sigma_max = max_singular_value(h);
  return resp;
}

}  // namespace

double max_singular_value(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

TransferResponse transfer_function(const StateSpaceSystem& sys, double omega) {
  const Index n = sys.state_dim();
  const Complex z = std::polar(1.0, omega);
  ComplexSparseMatrix m = sys.A.cast<Complex>();
  m *= Complex(-1.0, 0.0);
  ComplexSparseMatrix eye(n, n);
  eye.setIdentity();
  m += z * eye;
  m.makeCompressed();
  Eigen::SparseLU<ComplexSparseMatrix> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success)
    throw NumericalError("transfer_function: sparse LU factorization failed at omega = " +
                         std::to_string(omega));
  ComplexMatrix rhs = sys.B.cast<Complex>();
  ComplexMatrix x(n, rhs.cols());
  for (Index j = 0; j < rhs.cols(); ++j) x.col(j) = lu.solve(rhs.col(j));
  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0) {
    const double residual = (m * x - rhs).norm() / rhs_norm;
    if (!std::isfinite(residual) || residual > 1e-8)
      throw NumericalError("transfer_function: resolvent solve residual " +
                           std::to_string(residual) + " at omega = " + std::to_string(omega));
  }
  ComplexMatrix h(sys.output_dim(), sys.input_dim());
  h.real() = sys.C * x.real();
  h.imag() = sys.C * x.imag();
  return finish_response(h);
}

TransferResponse transfer_function_dense(const ComplexMatrix& a, const ComplexMatrix& b,
                                         const ComplexMatrix& c, double omega) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n || c.cols() != n)
    throw InputError("transfer_function_dense: inconsistent dimensions");
  const Complex z = std::polar(1.0, omega);
  ComplexMatrix m = -a;
  m.diagonal().array() += z;
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  ComplexMatrix x = lu.solve(b);
  const double rhs_norm = b.norm();
  if (rhs_norm > 0.0) {
    const double residual = (m * x - b).norm() / rhs_norm;
    if (!std::isfinite(residual) || residual > 1e-8)
      throw NumericalError("transfer_function_dense: resolvent solve residual " +
                           std::to_string(residual) + " at omega = " + std::to_string(omega));
  }
  return finish_response(c * x);
}

}  // namespace rpod
