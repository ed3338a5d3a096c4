#ifndef RPOD_STATE_SPACE_HPP
#define RPOD_STATE_SPACE_HPP

#include <string>

#include "rpod/common.hpp"

namespace rpod {

// Discrete-time linear triple
//   x_k = A x_{k-1} + B u_k,   y_k = C x_k
// with A an N x N sparse step map, B an N x p input map and C a q x N output
// map. C is held sparse so that selection maps (full-field or probe outputs
// on PDE grids) cost nothing; dense output maps are stored fully populated.
// Instances are immutable after construction and safe to share across threads.
struct StateSpaceSystem {
  SparseMatrix A;
  Matrix B;
  SparseMatrix C;
  double dt = 1.0;  // seconds per step, metadata only
  std::string description;

  Index state_dim() const { return A.rows(); }
  Index input_dim() const { return B.cols(); }
  Index output_dim() const { return C.rows(); }

  // Dimension consistency and finiteness. Throws InputError.
  void validate() const;
};

StateSpaceSystem make_system(SparseMatrix a, Matrix b, SparseMatrix c, double dt = 1.0,
                             std::string description = {});
StateSpaceSystem make_dense_system(const Matrix& a, const Matrix& b, const Matrix& c,
                                   double dt = 1.0, std::string description = {});

// The adjoint triple (A', C', B'): inputs of dimension q, outputs of
// dimension p. adjoint(adjoint(sys)) reproduces sys exactly.
StateSpaceSystem adjoint(const StateSpaceSystem& sys);

// States x_1..x_K (one column per step) for x_k = A x_{k-1} + B u_k starting
// from x0, with inputs given one column per step. O(K * nnz(A)).
Matrix propagate(const StateSpaceSystem& sys, const Vector& x0, const Matrix& inputs);

// Markov parameters C A^i B for i = 1..horizon, by repeated sparse
// application of A to the columns of B.
std::vector<Matrix> markov_parameters(const StateSpaceSystem& sys, Index horizon);

// Largest eigenvalue magnitude by power iteration (windowed geometric-mean
// ratio, handles complex dominant pairs). Relative tolerance on the estimate.
double spectral_radius(const SparseMatrix& a, double tol = 1e-6, Index max_iter = 100000);

struct TransferResponse {
  ComplexMatrix h;   // q x p
  double sigma_max;  // largest singular value of h
};

// H(omega) = C (e^{j omega} I - A)^{-1} B via one sparse complex solve per
// column of B. Throws NumericalError with the residual when the solve breaks
// down.
TransferResponse transfer_function(const StateSpaceSystem& sys, double omega);

// Same resolvent evaluation for an explicit complex triple (used for reduced
// models, where A may be complex).
TransferResponse transfer_function_dense(const ComplexMatrix& a, const ComplexMatrix& b,
                                         const ComplexMatrix& c, double omega);

double max_singular_value(const ComplexMatrix& m);

}  // namespace rpod

#endif
