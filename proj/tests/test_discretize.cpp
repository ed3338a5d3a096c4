#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rpod/discretize.hpp"
#include "rpod/snapshots.hpp"

using namespace rpod;

TEST_CASE("heat benchmark configuration matches the published dimensions") {
  HeatConfig cfg;  // defaults are the benchmark values
  const StateSpaceSystem sys = build_heat_1d(cfg);
  CHECK(sys.state_dim() == 100);
  CHECK(sys.input_dim() == 2);
  CHECK(sys.output_dim() == 100);
  CHECK(sys.B(14, 0) == 1.0);  // x = 0.15 -> node 15 (1-based)
  CHECK(sys.B(44, 1) == 1.0);  // x = 0.45
  CHECK(sys.B.sum() == 2.0);
  CHECK(spectral_radius(sys.A) < 1.0);
}

TEST_CASE("zero diffusivity freezes the field") {
  HeatConfig cfg;
  cfg.diffusivity = 0.0;
  cfg.grid = 10;
  cfg.source_positions = {0.35};
  const StateSpaceSystem sys = build_heat_1d(cfg);
  CHECK(Matrix(sys.A).isApprox(Matrix::Identity(10, 10)));
  const auto params = markov_parameters(sys, 5);
  for (const auto& p : params) CHECK((p - params[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("5-node stencil matches the hand-assembled tridiagonal") {
  HeatConfig cfg;
  cfg.grid = 5;
  cfg.length = 1.0;
  cfg.dt = 1.0;
  const double dx = 0.2;
  const double r = 0.1;
  cfg.diffusivity = r * dx * dx;
  cfg.source_positions = {0.4};
  const StateSpaceSystem sys = build_heat_1d(cfg);

  Matrix expected = Matrix::Zero(5, 5);
  for (Index i = 0; i < 5; ++i) {
    if (i == 4) {  // Neumann mirror at x = L
      expected(i, i - 1) = 2 * r;
      expected(i, i) = 1 - 2 * r;
    } else {
      if (i > 0) expected(i, i - 1) = r;
      expected(i, i) = 1 - 2 * r;
      expected(i, i + 1) = r;
    }
  }
  CHECK((Matrix(sys.A) - expected).cwiseAbs().maxCoeff() <= 1e-15);
  // row sums: 1 - r at the Dirichlet row, 1 elsewhere
  const Vector sums = Matrix(sys.A).rowwise().sum();
  CHECK(sums(0) == doctest::Approx(1 - r));
  for (Index i = 1; i < 5; ++i) CHECK(sums(i) == doctest::Approx(1.0));
}

TEST_CASE("explicit-step stability violation names the ratio") {
  HeatConfig cfg;
  cfg.diffusivity = 1.0;  // alpha dt / dx^2 = 1e4
  CHECK_THROWS_WITH_AS(build_heat_1d(cfg), doctest::Contains("0.5"), ConfigError);
}

TEST_CASE("implicit variant accepts stiff steps and stays stable") {
  HeatConfig cfg;
  cfg.grid = 40;
  cfg.diffusivity = 1e-3;  // r = 1.6, explicit would be rejected
  cfg.implicit_step = true;
  cfg.source_positions = {0.5};
  const StateSpaceSystem sys = build_heat_1d(cfg);
  CHECK(spectral_radius(sys.A) < 1.0);
}

TEST_CASE("source positions outside the domain are rejected") {
  HeatConfig cfg;
  cfg.source_positions = {1.5};
  CHECK_THROWS_AS(build_heat_1d(cfg), ConfigError);
}

TEST_CASE("eddy diffusivity closed form and oracle") {
  DispersionConfig cfg;  // a_y = 0.008, b_y = 1e-5, u = 4
  auto [ky0, kz0] = eddy_diffusivity(0.0, cfg);
  CHECK(ky0 == 0.0);
  CHECK(kz0 == 0.0);

  auto [ky, kz] = eddy_diffusivity(1000.0, cfg);
  CHECK(ky == doctest::Approx(0.25984).epsilon(1e-12));

  // degenerate coefficient: exactly linear
  DispersionConfig lin = cfg;
  lin.b_y = 0.0;
  for (double x : {1.0, 10.0, 500.0}) {
    auto [k, unused] = eddy_diffusivity(x, lin);
    CHECK(k == doctest::Approx(lin.wind_speed * lin.a_y * lin.a_y * x).epsilon(1e-14));
  }

  // finite-difference oracle on a 100-point log grid
  for (Index i = 0; i < 100; ++i) {
    const double x = std::pow(10.0, -1.0 + 4.0 * i / 99.0);
    const double h = 1e-4 * x;
    auto [kyi, kzi] = eddy_diffusivity(x, cfg);
    CHECK(kyi == doctest::Approx(oracles::fd_eddy_diffusivity(x, cfg.a_y, cfg.b_y,
                                                              cfg.wind_speed, h))
                     .epsilon(1e-6));
    CHECK(kzi == doctest::Approx(oracles::fd_eddy_diffusivity(x, cfg.a_z, cfg.b_z,
                                                              cfg.wind_speed, h))
                     .epsilon(1e-6));
  }
}

namespace {

DispersionConfig desk_config() {
  DispersionConfig cfg;
  cfg.nx = 20;
  cfg.ny = 20;
  cfg.nz = 5;
  cfg.dt = 10.0;
  cfg.sources = {{200, 0, 10}, {500, 150, 10}, {900, 250, 20}, {1500, 100, 0}};
  cfg.output = DispersionConfig::Output::full_field;
  return cfg;
}

}  // namespace

TEST_CASE("frozen field: no wind, no diffusion") {
  DispersionConfig cfg = desk_config();
  cfg.wind_speed = 0.0;
  cfg.a_y = cfg.a_z = 0.0;
  const StateSpaceSystem sys = build_advection_diffusion_3d(cfg);
  CHECK(Matrix(sys.A).isApprox(Matrix::Identity(sys.state_dim(), sys.state_dim())));
  // an impulse stays put, and the total field sum is conserved
  Matrix inputs = Matrix::Zero(sys.input_dim(), 4);
  inputs.col(0).setOnes();
  const Matrix states = propagate(sys, Vector::Zero(sys.state_dim()), inputs);
  for (Index k = 1; k < 4; ++k) {
    CHECK((states.col(k) - states.col(0)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(states.col(k).sum() == doctest::Approx(states.col(0).sum()).epsilon(1e-12));
  }
}

TEST_CASE("small grid matches a hand-assembled stencil row by row") {
  DispersionConfig cfg;
  cfg.nx = 4;
  cfg.ny = 3;
  cfg.nz = 2;
  cfg.x_extent = 400.0;
  cfg.y_min = -50.0;
  cfg.y_max = 50.0;
  cfg.z_extent = 20.0;
  cfg.wind_speed = 1.0;
  cfg.dt = 5.0;
  cfg.sources = {{100, 0, 5}};
  cfg.output = DispersionConfig::Output::full_field;
  const StateSpaceSystem sys = build_advection_diffusion_3d(cfg);
  REQUIRE(sys.state_dim() == 24);

  const double dx = 100.0, dy = 25.0, dz = 10.0;
  Matrix expected = Matrix::Zero(24, 24);
  auto id = [&](Index i, Index j, Index k) { return (i - 1) + 4 * ((j - 1) + 3 * k); };
  for (Index k = 0; k < 2; ++k)
    for (Index j = 1; j <= 3; ++j)
      for (Index i = 1; i <= 4; ++i) {
        const double x = i * dx;
        auto [ky, kz] = eddy_diffusivity(x, cfg);
        const double ax = cfg.wind_speed * cfg.dt / dx;
        const double ry = ky * cfg.dt / (dy * dy);
        const double rz = kz * cfg.dt / (dz * dz);
        const Index row = id(i, j, k);
        expected(row, row) = 1 - ax - 2 * ry - 2 * rz;
        if (i > 1) expected(row, id(i - 1, j, k)) = ax;
        if (j > 1) expected(row, id(i, j - 1, k)) = ry;
        if (j < 3) expected(row, id(i, j + 1, k)) = ry;
        if (k == 0) {
          expected(row, id(i, j, 1)) = 2 * rz;  // reflective ground
        } else {
          expected(row, id(i, j, 0)) = rz;  // top layer: Dirichlet ghost dropped
        }
      }
  CHECK((Matrix(sys.A) - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("desk-scale dispersion system is stable and sized as configured") {
  const StateSpaceSystem sys = build_advection_diffusion_3d(desk_config());
  CHECK(sys.state_dim() == 20 * 20 * 5);
  CHECK(sys.input_dim() == 4);
  CHECK(sys.output_dim() == sys.state_dim());
  CHECK(spectral_radius(sys.A) < 1.0);
}

TEST_CASE("published-scale dispersion grid: 1e5 nodes, 10 inputs, 810 outputs") {
  DispersionConfig cfg;  // defaults: 100 x 100 x 10, probe stride 10
  cfg.dt = 2.0;
  for (int s = 0; s < 10; ++s)
    cfg.sources.push_back({100.0 + 150.0 * s, -50.0 + 40.0 * s, 5.0 + 4.0 * s});
  const StateSpaceSystem sys = build_advection_diffusion_3d(cfg);
  CHECK(sys.state_dim() == 100000);
  CHECK(sys.input_dim() == 10);
  CHECK(sys.output_dim() == 810);
  CHECK(spectral_radius(sys.A) < 1.0);
}

TEST_CASE("Courant violation is a configuration error") {
  DispersionConfig cfg = desk_config();
  cfg.dt = 50.0;  // u dt / dx = 2
  CHECK_THROWS_WITH_AS(build_advection_diffusion_3d(cfg), doctest::Contains("Courant"),
                       ConfigError);
}

TEST_CASE("sources must lie inside the domain") {
  DispersionConfig cfg = desk_config();
  cfg.sources = {{-5, 0, 10}};
  CHECK_THROWS_AS(build_advection_diffusion_3d(cfg), ConfigError);
}

TEST_CASE("heat refinement: omega = 0 response converges at second order") {
  auto response = [](Index n) {
    HeatConfig cfg;
    cfg.grid = n;
    cfg.source_positions = {0.32};
    cfg.full_field_output = false;
    cfg.output_nodes = {static_cast<Index>(std::lround(0.64 * n)) - 1};
    const StateSpaceSystem sys = build_heat_1d(cfg);
    const double dx = cfg.length / static_cast<double>(n);
    // normalize the injection like a delta so levels are comparable
    return transfer_function(sys, 0.0).sigma_max * dx;
  };
  const double h25 = response(25), h50 = response(50), h100 = response(100);
  const double e1 = std::abs(h25 - h50);
  const double e2 = std::abs(h50 - h100);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 1.8);
}
