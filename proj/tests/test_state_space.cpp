#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rpod/gaussian.hpp"
#include "rpod/state_space.hpp"

using namespace rpod;

namespace {

StateSpaceSystem scalar_system(double a = 0.5) {
  Matrix am(1, 1), bm(1, 1), cm(1, 1);
  am << a;
  bm << 1.0;
  cm << 1.0;
  return make_dense_system(am, bm, cm);
}

StateSpaceSystem diag3_system() {
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << 0.9, 0.5, 0.3;
  Matrix b(3, 1);
  b << 1, 1, 0;
  Matrix c(1, 3);
  c << 1, 0, 1;
  return make_dense_system(a, b, c);
}

StateSpaceSystem random_stable(Index n, Index p, Index q, std::uint64_t seed, double rho = 0.8) {
  GaussianStream gauss(seed);
  Matrix a = gauss.draw(n, n);
  const double scale = rho / oracles::spectral_norm(a);  // ||A|| >= rho(A)
  a *= scale;
  return make_dense_system(a, gauss.draw(n, p), gauss.draw(q, n));
}

}  // namespace

TEST_CASE("scalar recursion") {
  const StateSpaceSystem sys = scalar_system();
  Matrix inputs(1, 2);
  inputs << 1.0, 0.0;
  const Matrix states = propagate(sys, Vector::Zero(1), inputs);
  CHECK(states(0, 0) == doctest::Approx(1.0));
  CHECK(states(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("zero input gives the zero trajectory") {
  const StateSpaceSystem sys = random_stable(6, 2, 3, 42);
  const Matrix states = propagate(sys, Vector::Zero(6), Matrix::Zero(2, 10));
  CHECK(states.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("impulse states of the diagonal system follow the closed form") {
  const StateSpaceSystem sys = diag3_system();
  Matrix inputs = Matrix::Zero(1, 5);
  inputs(0, 0) = 1.0;  // impulse at the first step
  const Matrix states = propagate(sys, Vector::Zero(3), inputs);
  for (Index k = 0; k < 5; ++k) {
    CHECK(states(0, k) == doctest::Approx(std::pow(0.9, k)).epsilon(1e-12));
    CHECK(states(1, k) == doctest::Approx(std::pow(0.5, k)).epsilon(1e-12));
    CHECK(states(2, k) == 0.0);
  }
}

TEST_CASE("propagate rejects mismatched dimensions") {
  const StateSpaceSystem sys = diag3_system();
  CHECK_THROWS_AS(propagate(sys, Vector::Zero(2), Matrix::Zero(1, 3)), InputError);
  CHECK_THROWS_AS(propagate(sys, Vector::Zero(3), Matrix::Zero(2, 3)), InputError);
}

TEST_CASE("adjoint of a self-adjoint triple is itself") {
  Matrix a(2, 2);
  a << 0.4, 0.1, 0.1, 0.3;
  Matrix b(2, 1);
  b << 1, 2;
  const StateSpaceSystem sys = make_dense_system(a, b, b.transpose());
  const StateSpaceSystem adj = adjoint(sys);
  CHECK(Matrix(adj.A - sys.A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((adj.B - sys.B).cwiseAbs().maxCoeff() == 0.0);
  CHECK(Matrix(adj.C - sys.C).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adjoint transposes the step map and is an involution") {
  Matrix a(2, 2);
  a << 0, 1, 0, 0;
  const StateSpaceSystem sys = make_dense_system(a, Matrix::Identity(2, 2), Matrix::Identity(2, 2));
  const StateSpaceSystem adj = adjoint(sys);
  Matrix expected(2, 2);
  expected << 0, 0, 1, 0;
  CHECK(Matrix(adj.A).isApprox(expected));
  const StateSpaceSystem twice = adjoint(adj);
  CHECK(Matrix(twice.A - sys.A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((twice.B - sys.B).cwiseAbs().maxCoeff() == 0.0);
  CHECK(Matrix(twice.C - sys.C).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adjoint Markov parameters are the transposes of the primal ones") {
  const StateSpaceSystem sys = random_stable(5, 2, 3, 7);
  const auto primal = markov_parameters(sys, 12);
  const auto dual = markov_parameters(adjoint(sys), 12);
  for (size_t i = 0; i < primal.size(); ++i)
    CHECK((dual[i] - primal[i].transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("markov parameters: scalar powers start at C A B") {
  const auto params = markov_parameters(scalar_system(), 3);
  REQUIRE(params.size() == 3);
  CHECK(params[0](0, 0) == doctest::Approx(0.5));
  CHECK(params[1](0, 0) == doctest::Approx(0.25));
  CHECK(params[2](0, 0) == doctest::Approx(0.125));
}

TEST_CASE("markov parameters of a nilpotent map vanish from the nilpotency index") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 1) = 1.0;
  a(1, 2) = 1.0;
  const StateSpaceSystem sys = make_dense_system(a, Matrix::Identity(3, 3), Matrix::Identity(3, 3));
  const auto params = markov_parameters(sys, 5);
  CHECK(params[0].cwiseAbs().maxCoeff() > 0.0);
  CHECK(params[1].cwiseAbs().maxCoeff() > 0.0);
  for (size_t i = 2; i < 5; ++i) CHECK(params[i].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("markov parameters of the diagonal example follow 0.9^i") {
  const auto params = markov_parameters(diag3_system(), 10);
  for (size_t i = 0; i < params.size(); ++i)
    CHECK(params[i](0, 0) == doctest::Approx(std::pow(0.9, i + 1)).epsilon(1e-12));
}

TEST_CASE("markov parameters match the dense power oracle") {
  const StateSpaceSystem sys = random_stable(12, 2, 4, 3);
  const auto params = markov_parameters(sys, 15);
  const auto oracle = oracles::dense_markov(Matrix(sys.A), sys.B, Matrix(sys.C), 15);
  for (size_t i = 0; i < params.size(); ++i)
    CHECK((params[i] - oracle[i]).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("transfer function: scalar resolvent values") {
  const StateSpaceSystem sys = scalar_system();
  const TransferResponse at_zero = transfer_function(sys, 0.0);
  CHECK(at_zero.h(0, 0).real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(at_zero.sigma_max == doctest::Approx(2.0).epsilon(1e-12));
  const TransferResponse at_pi = transfer_function(sys, M_PI);
  CHECK(at_pi.h(0, 0).real() == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
  CHECK(at_pi.sigma_max == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("transfer function of the diagonal example at omega = 0") {
  // only the coupled mode contributes: 1 / (1 - 0.9) = 10
  const TransferResponse resp = transfer_function(diag3_system(), 0.0);
  CHECK(resp.h(0, 0).real() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(std::abs(resp.h(0, 0).imag()) <= 1e-12);
}

TEST_CASE("transfer function matches the truncated Neumann series") {
  const StateSpaceSystem sys = random_stable(20, 2, 3, 21, 0.6);
  for (double omega : {1e-3, 0.1, 1.0, M_PI}) {
    const TransferResponse resp = transfer_function(sys, omega);
    const ComplexMatrix series = oracles::neumann_transfer(Matrix(sys.A), sys.B, Matrix(sys.C), omega);
    CHECK((resp.h - series).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("spectral radius on diagonal and rotation blocks") {
  Matrix a = Matrix::Zero(3, 3);
  a.diagonal() << 0.9, 0.5, 0.3;
  CHECK(spectral_radius(a.sparseView()) == doctest::Approx(0.9).epsilon(1e-5));
  Matrix rot = Matrix::Zero(4, 4);
  rot(0, 1) = 0.8;
  rot(1, 0) = -0.8;  // complex pair of magnitude 0.8
  rot(2, 2) = 0.2;
  rot(3, 3) = -0.5;
  CHECK(spectral_radius(rot.sparseView()) == doctest::Approx(0.8).epsilon(1e-5));
}

TEST_CASE("dense transfer path agrees with the sparse one") {
  const StateSpaceSystem sys = random_stable(10, 2, 2, 77);
  for (double omega : {0.01, 0.5, 2.0}) {
    const TransferResponse sparse = transfer_function(sys, omega);
    const TransferResponse dense = transfer_function_dense(
        Matrix(sys.A).cast<Complex>(), sys.B.cast<Complex>(), Matrix(sys.C).cast<Complex>(), omega);
    CHECK((sparse.h - dense.h).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(sparse.sigma_max == doctest::Approx(dense.sigma_max).epsilon(1e-10));
  }
}
