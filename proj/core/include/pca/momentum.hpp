#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pca/lattice.hpp"

namespace pca {

/// Momenta p = pi q / (eps m_x) for q in (-m_x/2, m_x/2]; q and q + m_x are
/// the same mode. Mode n of the FFT ordering carries q = n for n <= m_x/2
/// and q = n - m_x above.
struct MomentumGrid {
  double eps = 1.0;
  int m_x = 2;

  MomentumGrid() = default;
  MomentumGrid(double e, int m);
  explicit MomentumGrid(const LatticeConfig& cfg) : MomentumGrid(cfg.eps, cfg.m_x) {}

  [[nodiscard]] int size() const { return m_x; }
  [[nodiscard]] int q_of_mode(int n) const { return 2 * n > m_x ? n - m_x : n; }
  [[nodiscard]] double momentum(int n) const;
  [[nodiscard]] std::vector<double> momenta() const;
  /// pi / eps, the period of the grid.
  [[nodiscard]] double period() const;
};

/// D(p, k) = exp(-i p x_k) / sqrt(m_x) with x_k = (2k + parity) eps.
[[nodiscard]] Eigen::MatrixXcd dft_matrix(const MomentumGrid& grid, int parity = 0);

/// P~ = D^-1 p D in the position basis. Identical for both parities.
[[nodiscard]] Eigen::MatrixXcd momentum_operator(const MomentumGrid& grid);

/// D_to^-1 D_from: band-limited resampling from the sublattice of
/// parity `from` onto the one of parity `to`.
[[nodiscard]] Eigen::MatrixXcd frame_transfer(const MomentumGrid& grid, int to, int from);

}  // namespace pca
