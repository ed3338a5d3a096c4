#ifndef RPOD_COMMON_HPP
#define RPOD_COMMON_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <stdexcept>
#include <string>

namespace rpod {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<double>;  // compressed column
using ComplexSparseMatrix = Eigen::SparseMatrix<std::complex<double>>;
using Complex = std::complex<double>;

inline constexpr const char* kVersion = "0.1.0";

// Error taxonomy. The CLI maps these onto exit codes, everything else just
// lets them propagate.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};
struct NumericalError : Error {
  using Error::Error;
};
struct SizeSelectionError : Error {
  using Error::Error;
};

// A sparse real matrix applied to a complex dense block, done as two real
// products so A never has to be complexified.
inline ComplexMatrix sparse_apply(const SparseMatrix& a, const ComplexMatrix& x) {
  ComplexMatrix out(a.rows(), x.cols());
  out.real() = a * x.real();
  out.imag() = a * x.imag();
  return out;
}

}  // namespace rpod

#endif
