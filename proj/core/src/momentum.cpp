#include "pca/momentum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pca/errors.hpp"

namespace pca {

MomentumGrid::MomentumGrid(double e, int m) : eps(e), m_x(m) {
  if (!(e > 0.0) || m < 2) {
    throw GeometryError("momentum grid needs eps > 0 and m_x >= 2 (got m_x=" + std::to_string(m) + ")");
  }
}

double MomentumGrid::momentum(int n) const {
  return std::numbers::pi * q_of_mode(n) / (eps * m_x);
}

std::vector<double> MomentumGrid::momenta() const {
  std::vector<double> p(static_cast<std::size_t>(m_x));
  for (int n = 0; n < m_x; ++n) p[static_cast<std::size_t>(n)] = momentum(n);
  return p;
}

double MomentumGrid::period() const { return std::numbers::pi / eps; }

Eigen::MatrixXcd dft_matrix(const MomentumGrid& grid, int parity) {
  const int m = grid.m_x;
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  Eigen::MatrixXcd d(m, m);
  for (int n = 0; n < m; ++n) {
    // integer phase bookkeeping keeps the entries exact roots of unity
    const long long q = grid.q_of_mode(n);
    for (int k = 0; k < m; ++k) {
      const long long units = (2LL * k + parity) * q;  // p x / pi * m_x
      const long long r = ((units % (2LL * m)) + 2LL * m) % (2LL * m);
      const double angle = -std::numbers::pi * static_cast<double>(r) / m;
      d(n, k) = std::polar(norm, angle);
    }
  }
  return d;
}

Eigen::MatrixXcd momentum_operator(const MomentumGrid& grid) {
  const auto d = dft_matrix(grid, 0);
  Eigen::VectorXd p(grid.m_x);
  for (int n = 0; n < grid.m_x; ++n) p(n) = grid.momentum(n);
  Eigen::MatrixXcd out = d.adjoint() * p.asDiagonal() * d;
  return 0.5 * (out + out.adjoint());
}

Eigen::MatrixXcd frame_transfer(const MomentumGrid& grid, int to, int from) {
  return dft_matrix(grid, to).adjoint() * dft_matrix(grid, from);
}

}  // namespace pca
