#ifndef RPOD_DISCRETIZE_HPP
#define RPOD_DISCRETIZE_HPP

#include <array>
#include <vector>

#include "rpod/state_space.hpp"

namespace rpod {

// 1-D heat conduction on [0, L]: dT/dt = alpha d2T/dx2 + f, T(0) = 0 and
// dT/dx(L) = 0. Forward-Euler step of the second-difference stencil on the
// node grid x_i = i*dx, i = 1..N (the Dirichlet node is eliminated); a
// backward-Euler variant is available for stiff settings. Each source maps to
// a unit injection at the nearest node.
struct HeatConfig {
  double length = 1.0;          // m
  Index grid = 100;             // N
  double diffusivity = 4.2e-6;  // m^2/s
  double dt = 1.0;              // s
  std::vector<double> source_positions = {0.15, 0.45};
  bool full_field_output = true;
  std::vector<Index> output_nodes;  // 0-based node indices, used when !full_field_output
  bool implicit_step = false;
};

StateSpaceSystem build_heat_1d(const HeatConfig& cfg);

// 3-D advection-diffusion for atmospheric dispersion:
//   dc/dt + div(c u) = div(K grad c) + Q delta(X - Xs)
// Streamwise diffusion is neglected; advection is first-order upwind and the
// cross-wind/vertical diffusion uses central second differences with
// K_y(x), K_z(x) from the sigma-curve coefficients. Boundary conditions:
// zero at the inflow plane x = 0 and at the far y/top-z boundaries, and a
// reflective ground K_z dc/dz = 0 at z = 0. The state covers the node grid
// x_i = i*dx (i = 1..nx), y_j = y_min + j*dy (j = 1..ny), z_k = k*dz
// (k = 0..nz-1), so N = nx*ny*nz.
struct DispersionConfig {
  double x_extent = 2000.0;  // m
  double y_min = -100.0, y_max = 400.0;
  double z_extent = 50.0;
  Index nx = 100, ny = 100, nz = 10;
  double wind_speed = 4.0;   // m/s
  double wind_angle = 0.0;   // rad, 0 = along +x
  double dt = 1.0;           // s
  double a_y = 0.008, b_y = 1e-5;
  double a_z = 0.006, b_z = 1.5e-4;
  std::vector<std::array<double, 3>> sources;  // (x, y, z) in meters
  double emission_rate = 1.0;                  // Q

  enum class Output { full_field, probe_grid, node_list };
  Output output = Output::probe_grid;
  // probe_grid: nodes at x indices s_x, 2 s_x, ... < nx, same in y, all z
  // levels. With the 100 x 100 x 10 grid and strides 10 this selects
  // 9 * 9 * 10 = 810 nodes.
  Index probe_stride_x = 10, probe_stride_y = 10;
  std::vector<Index> output_nodes;  // 0-based state indices for node_list

  Index node_index(Index i, Index j, Index k) const {  // i,j 1-based, k 0-based
    return (i - 1) + nx * ((j - 1) + ny * k);
  }
};

StateSpaceSystem build_advection_diffusion_3d(const DispersionConfig& cfg);

// (K_y, K_z) at downwind distance x, from sigma_y = a_y x (1 + b_y x)^0.5:
// K_y(x) = (u/2) d(sigma_y^2)/dx = (u/2) a_y^2 (2x + 3 b_y x^2), same in z.
std::pair<double, double> eddy_diffusivity(double x, const DispersionConfig& cfg);

}  // namespace rpod

#endif
