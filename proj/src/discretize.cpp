#include "rpod/discretize.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rpod {

namespace {

SparseMatrix selection_map(const std::vector<Index>& nodes, Index n) {
  SparseMatrix c(static_cast<Index>(nodes.size()), n);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(nodes.size());
  for (size_t r = 0; r < nodes.size(); ++r) {
    if (nodes[r] < 0 || nodes[r] >= n)
      throw ConfigError("output node index out of range: " + std::to_string(nodes[r]));
    triplets.emplace_back(static_cast<int>(r), static_cast<int>(nodes[r]), 1.0);
  }
  c.setFromTriplets(triplets.begin(), triplets.end());
  return c;
}

SparseMatrix identity_map(Index n) {
  SparseMatrix c(n, n);
  c.setIdentity();
  return c;
}

}  // namespace

StateSpaceSystem build_heat_1d(const HeatConfig& cfg) {
  if (cfg.grid < 2) throw ConfigError("heat: grid must have at least 2 nodes");
  if (cfg.length <= 0) throw ConfigError("heat: length must be positive");
  if (cfg.dt <= 0) throw ConfigError("heat: dt must be positive");
  if (cfg.diffusivity < 0) throw ConfigError("heat: diffusivity must be non-negative");
  if (cfg.source_positions.empty()) throw ConfigError("heat: at least one source required");
  for (double x : cfg.source_positions)
    if (!(x > 0.0 && x < cfg.length))
      throw ConfigError("heat: source position " + std::to_string(x) +
                        " outside the open domain (0, " + std::to_string(cfg.length) + ")");

  const Index n = cfg.grid;
  const double dx = cfg.length / static_cast<double>(n);
  const double r = cfg.diffusivity * cfg.dt / (dx * dx);
  if (!cfg.implicit_step && r > 0.5) {
    std::ostringstream msg;
    msg << "heat: explicit step unstable, alpha*dt/dx^2 = " << r << " > 0.5";
    throw ConfigError(msg.str());
  }

  // Second-difference rows on x_i = i*dx: Dirichlet neighbor at x = 0 is
  // dropped; the Neumann end mirrors through x = L (2, -2 row).
  SparseMatrix lap(n, n);
  {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<size_t>(3 * n));
    for (Index i = 0; i < n; ++i) {
      if (i + 1 == n) {
        t.emplace_back(static_cast<int>(i), static_cast<int>(i - 1), 2.0);
        t.emplace_back(static_cast<int>(i), static_cast<int>(i), -2.0);
      } else {
        if (i > 0) t.emplace_back(static_cast<int>(i), static_cast<int>(i - 1), 1.0);
        t.emplace_back(static_cast<int>(i), static_cast<int>(i), -2.0);
        t.emplace_back(static_cast<int>(i), static_cast<int>(i + 1), 1.0);
      }
    }
    lap.setFromTriplets(t.begin(), t.end());
  }

  SparseMatrix a;
  if (cfg.implicit_step) {
    // (I - r L) x_{k} = x_{k-1}; the step map is a dense inverse, acceptable
    // at the grid sizes this variant is meant for.
    Matrix m = Matrix::Identity(n, n) - r * Matrix(lap);
    Matrix ainv = m.partialPivLu().solve(Matrix::Identity(n, n));
    a = ainv.sparseView();
  } else {
    SparseMatrix eye(n, n);
    eye.setIdentity();
    a = eye + r * lap;
  }

  Matrix b = Matrix::Zero(n, static_cast<Index>(cfg.source_positions.size()));
  for (size_t s = 0; s < cfg.source_positions.size(); ++s) {
    Index node = static_cast<Index>(std::lround(cfg.source_positions[s] / dx)) - 1;
    node = std::clamp<Index>(node, 0, n - 1);
    b(node, static_cast<Index>(s)) = 1.0;
  }

  SparseMatrix c = cfg.full_field_output ? identity_map(n) : selection_map(cfg.output_nodes, n);

  std::ostringstream desc;
  desc << "heat-1d N=" << n << " alpha=" << cfg.diffusivity << " dt=" << cfg.dt;
  return make_system(std::move(a), std::move(b), std::move(c), cfg.dt, desc.str());
}

std::pair<double, double> eddy_diffusivity(double x, const DispersionConfig& cfg) {
  if (x < 0) throw InputError("eddy_diffusivity: x must be non-negative");
  const double half_u = 0.5 * cfg.wind_speed;
  const double ky = half_u * cfg.a_y * cfg.a_y * (2.0 * x + 3.0 * cfg.b_y * x * x);
  const double kz = half_u * cfg.a_z * cfg.a_z * (2.0 * x + 3.0 * cfg.b_z * x * x);
  return {ky, kz};
}

StateSpaceSystem build_advection_diffusion_3d(const DispersionConfig& cfg) {
  if (cfg.nx < 2 || cfg.ny < 2 || cfg.nz < 1)
    throw ConfigError("dispersion: grid must be at least 2 x 2 x 1");
  if (cfg.wind_speed < 0) throw ConfigError("dispersion: wind speed must be non-negative");
  if (cfg.dt <= 0) throw ConfigError("dispersion: dt must be positive");
  if (cfg.x_extent <= 0 || cfg.z_extent <= 0 || cfg.y_max <= cfg.y_min)
    throw ConfigError("dispersion: degenerate domain extents");
  if (cfg.sources.empty()) throw ConfigError("dispersion: at least one source required");

  const Index nx = cfg.nx, ny = cfg.ny, nz = cfg.nz;
  const Index n = nx * ny * nz;
  const double dx = cfg.x_extent / static_cast<double>(nx);
  const double dy = (cfg.y_max - cfg.y_min) / static_cast<double>(ny + 1);
  const double dz = cfg.z_extent / static_cast<double>(nz);
  const double ux = cfg.wind_speed * std::cos(cfg.wind_angle);
  const double uy = cfg.wind_speed * std::sin(cfg.wind_angle);

  const double courant = std::abs(ux) * cfg.dt / dx + std::abs(uy) * cfg.dt / dy;
  if (courant > 1.0) {
    std::ostringstream msg;
    msg << "dispersion: advection Courant number " << courant << " > 1";
    throw ConfigError(msg.str());
  }
  {
    // Positivity of the explicit step at the worst (farthest downwind) column.
    auto [ky, kz] = eddy_diffusivity(cfg.x_extent, cfg);
    const double load =
        courant + 2.0 * ky * cfg.dt / (dy * dy) + 2.0 * kz * cfg.dt / (dz * dz);
    if (load > 1.0) {
      std::ostringstream msg;
      msg << "dispersion: explicit step unstable, advection+diffusion load " << load << " > 1";
      throw ConfigError(msg.str());
    }
  }

  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<size_t>(7 * n));
  auto idx = [&](Index i, Index j, Index k) { return cfg.node_index(i, j, k); };
  for (Index k = 0; k < nz; ++k) {
    for (Index j = 1; j <= ny; ++j) {
      for (Index i = 1; i <= nx; ++i) {
        const double x = static_cast<double>(i) * dx;
        auto [ky, kz] = eddy_diffusivity(x, cfg);
        const double ry = ky * cfg.dt / (dy * dy);
        const double rz = kz * cfg.dt / (dz * dz);
        const double ax = std::abs(ux) * cfg.dt / dx;
        const double ay = std::abs(uy) * cfg.dt / dy;
        const int row = static_cast<int>(idx(i, j, k));
        double diag = 1.0 - ax - ay - 2.0 * ry - 2.0 * rz;

        // upwind advection; missing upwind neighbors are Dirichlet zeros
        if (ux >= 0) {
          if (i > 1) t.emplace_back(row, static_cast<int>(idx(i - 1, j, k)), ax);
        } else {
          if (i < nx) t.emplace_back(row, static_cast<int>(idx(i + 1, j, k)), ax);
        }
        if (uy > 0) {
          if (j > 1) t.emplace_back(row, static_cast<int>(idx(i, j - 1, k)), ay);
        } else if (uy < 0) {
          if (j < ny) t.emplace_back(row, static_cast<int>(idx(i, j + 1, k)), ay);
        }

        // cross-wind diffusion, Dirichlet at both far-y boundaries
        if (j > 1) t.emplace_back(row, static_cast<int>(idx(i, j - 1, k)), ry);
        if (j < ny) t.emplace_back(row, static_cast<int>(idx(i, j + 1, k)), ry);

        // vertical diffusion: reflective ground (mirrored neighbor), Dirichlet top
        if (k == 0) {
          if (nz > 1) t.emplace_back(row, static_cast<int>(idx(i, j, k + 1)), 2.0 * rz);
        } else {
          t.emplace_back(row, static_cast<int>(idx(i, j, k - 1)), rz);
          if (k + 1 < nz) t.emplace_back(row, static_cast<int>(idx(i, j, k + 1)), rz);
        }
        t.emplace_back(row, row, diag);
      }
    }
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());

  const double cell_volume = dx * dy * dz;
  Matrix b = Matrix::Zero(n, static_cast<Index>(cfg.sources.size()));
  for (size_t s = 0; s < cfg.sources.size(); ++s) {
    const auto& src = cfg.sources[s];
    if (!(src[0] > 0 && src[0] < cfg.x_extent && src[1] > cfg.y_min && src[1] < cfg.y_max &&
          src[2] >= 0 && src[2] < cfg.z_extent))
      throw ConfigError("dispersion: source " + std::to_string(s) + " outside the domain");
    Index i = std::clamp<Index>(static_cast<Index>(std::lround(src[0] / dx)), 1, nx);
    Index j = std::clamp<Index>(static_cast<Index>(std::lround((src[1] - cfg.y_min) / dy)), 1, ny);
    Index k = std::clamp<Index>(static_cast<Index>(std::lround(src[2] / dz)), 0, nz - 1);
    b(idx(i, j, k), static_cast<Index>(s)) = cfg.emission_rate / cell_volume;
  }

  SparseMatrix c;
  switch (cfg.output) {
    case DispersionConfig::Output::full_field:
      c = identity_map(n);
      break;
    case DispersionConfig::Output::node_list:
      c = selection_map(cfg.output_nodes, n);
      break;
    case DispersionConfig::Output::probe_grid: {
      if (cfg.probe_stride_x < 1 || cfg.probe_stride_y < 1)
        throw ConfigError("dispersion: probe strides must be >= 1");
      std::vector<Index> nodes;
      for (Index k = 0; k < nz; ++k)
        for (Index j = cfg.probe_stride_y; j < ny; j += cfg.probe_stride_y)
          for (Index i = cfg.probe_stride_x; i < nx; i += cfg.probe_stride_x)
            nodes.push_back(idx(i, j, k));
      if (nodes.empty()) throw ConfigError("dispersion: probe grid selects no nodes");
      c = selection_map(nodes, n);
      break;
    }
  }

  std::ostringstream desc;
  desc << "advection-diffusion-3d " << nx << "x" << ny << "x" << nz << " u=" << cfg.wind_speed
       << " dt=" << cfg.dt;
  return make_system(std::move(a), std::move(b), std::move(c), cfg.dt, desc.str());
}

}  // namespace rpod
