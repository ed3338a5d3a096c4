#include "rpod/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "rpod/gaussian.hpp"

namespace rpod {

namespace {

struct Block {
  int cls;        // 0 co, 1 c-obar, 2 cbar-o, 3 cbar-obar
  Index start;    // first state index
  Index size;     // 1 or 2
  Complex lambda; // pair blocks: the +imag member
};

bool eig_less(const Complex& a, const Complex& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() < b.imag();
}

}  // namespace

SyntheticSystem make_synthetic(const SyntheticConfig& cfg) {
  if (cfg.coupled_modes < 1 || cfg.coupled_modes >= cfg.dimension)
    throw InputError("make_synthetic: need 1 <= l < N");
  if (cfg.inputs < 1 || cfg.outputs < 1)
    throw InputError("make_synthetic: inputs and outputs must be >= 1");
  if (cfg.kind == SyntheticKind::a4_perturbed && cfg.epsilon < 0)
    throw InputError("make_synthetic: epsilon must be non-negative");

  GaussianStream gauss(cfg.seed);
  auto uniform = [&gauss] { return 0.5 * (1.0 + std::erf(gauss.next() / std::sqrt(2.0))); };

  // State counts per class: l coupled, the rest split across the three
  // decoupled classes.
  const Index n = cfg.dimension;
  const Index l = cfg.coupled_modes;
  Index budget[4];
  budget[0] = l;
  const Index rest = n - l;
  budget[1] = rest / 3;
  budget[2] = rest / 3;
  budget[3] = rest - budget[1] - budget[2];

  std::vector<Block> blocks;
  Index next_state = 0;
  for (int cls = 0; cls < 4; ++cls) {
    Index left = budget[cls];
    while (left > 0) {
      const bool pair = left >= 2 && uniform() < cfg.conjugate_fraction;
      const double mag = std::exp(std::log(cfg.magnitude_min) +
                                  uniform() * (std::log(cfg.magnitude_max) -
                                               std::log(cfg.magnitude_min)));
      Block b;
      b.cls = cls;
      b.start = next_state;
      if (pair) {
        const double angle = 0.1 + uniform() * (M_PI - 0.2);
        b.size = 2;
        b.lambda = Complex(mag * std::cos(angle), mag * std::sin(angle));
      } else {
        b.size = 1;
        b.lambda = Complex(uniform() < 0.5 ? -mag : mag, 0.0);
      }
      next_state += b.size;
      left -= b.size;
      blocks.push_back(b);
    }
  }

  std::vector<Eigen::Triplet<double>> at;
  for (const Block& b : blocks) {
    if (b.size == 1) {
      at.emplace_back(static_cast<int>(b.start), static_cast<int>(b.start), b.lambda.real());
    } else {
      const double re = b.lambda.real(), im = b.lambda.imag();
      at.emplace_back(static_cast<int>(b.start), static_cast<int>(b.start), re);
      at.emplace_back(static_cast<int>(b.start), static_cast<int>(b.start + 1), im);
      at.emplace_back(static_cast<int>(b.start + 1), static_cast<int>(b.start), -im);
      at.emplace_back(static_cast<int>(b.start + 1), static_cast<int>(b.start + 1), re);
    }
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(at.begin(), at.end());

  // Couplings: rows of B per block, columns of C per block. Every random
  // draw happens for every block regardless of class so that a fixed seed
  // yields the same system for any epsilon (and for a3 vs a4).
  const double eps = cfg.kind == SyntheticKind::a3_exact ? 0.0 : cfg.epsilon;
  Matrix b = Matrix::Zero(n, cfg.inputs);
  Matrix c = Matrix::Zero(cfg.outputs, n);
  for (const Block& blk : blocks) {
    Matrix brows = gauss.draw(blk.size, cfg.inputs);
    Matrix ccols = gauss.draw(cfg.outputs, blk.size);
    brows /= brows.norm();
    ccols /= ccols.norm();
    const bool driven = blk.cls == 0 || blk.cls == 1;
    const bool observed = blk.cls == 0 || blk.cls == 2;
    const double bscale = driven ? 1.0 : eps;
    const double cscale = observed ? 1.0 : eps;
    b.middleRows(blk.start, blk.size) = bscale * brows;
    c.middleCols(blk.start, blk.size) = cscale * ccols;
  }

  SyntheticSystem out;
  out.system = make_dense_system(Matrix(a), b, c, 1.0,
                                 cfg.kind == SyntheticKind::a3_exact ? "synthetic-a3"
                                                                     : "synthetic-a4");
  out.coupled_modes = l;
  std::vector<Complex> lam;
  for (const Block& blk : blocks) {
    if (blk.cls != 0) continue;
    for (Index s = 0; s < blk.size; ++s) out.coupled_states.push_back(blk.start + s);
    if (blk.size == 1) {
      lam.push_back(blk.lambda);
    } else {
      lam.push_back(std::conj(blk.lambda));
      lam.push_back(blk.lambda);
    }
  }
  std::sort(lam.begin(), lam.end(), eig_less);
  out.lambda_coupled = Eigen::Map<const ComplexVector>(lam.data(), static_cast<Index>(lam.size()));
  return out;
}

}  // namespace rpod
