#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "pca/errors.hpp"
#include "pca/momentum.hpp"

using namespace pca;

TEST(Momentum, GridIsOneSided) {
  const MomentumGrid even(0.5, 8);
  EXPECT_EQ(even.q_of_mode(4), 4);
  EXPECT_EQ(even.q_of_mode(5), -3);
  EXPECT_DOUBLE_EQ(even.momentum(4), std::numbers::pi / (2 * 0.5));
  EXPECT_DOUBLE_EQ(even.period(), std::numbers::pi / 0.5);
  const MomentumGrid odd(1.0, 7);
  EXPECT_EQ(odd.q_of_mode(3), 3);
  EXPECT_EQ(odd.q_of_mode(4), -3);
  const auto p = odd.momenta();
  const auto ref = oracle::momenta(7, 1.0);
  for (int n = 0; n < 7; ++n) EXPECT_DOUBLE_EQ(p[static_cast<std::size_t>(n)], ref[static_cast<std::size_t>(n)]);
}

TEST(Momentum, RejectsBadGrid) {
  EXPECT_THROW(MomentumGrid(1.0, 1), GeometryError);
  EXPECT_THROW(MomentumGrid(0.0, 4), GeometryError);
}

TEST(Momentum, DftMatchesDefinitionAndIsUnitary) {
  for (int m : {2, 5, 16, 33}) {
    const MomentumGrid grid(0.7, m);
    for (int par = 0; par < 2; ++par) {
      const auto d = dft_matrix(grid, par);
      EXPECT_LT((d - oracle::dft(m, 0.7, par)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((d.adjoint() * d - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Momentum, OperatorIsHermitianAndFrameIndependent) {
  for (int m : {4, 9, 32}) {
    const MomentumGrid grid(1.0, m);
    const auto p = momentum_operator(grid);
    EXPECT_LT((p - p.adjoint()).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((p - oracle::momentum(m, 1.0)).cwiseAbs().maxCoeff(), 1e-11);
    const auto d1 = oracle::dft(m, 1.0, 1);
    const Eigen::VectorXd pv = Eigen::Map<const Eigen::VectorXd>(oracle::momenta(m, 1.0).data(), m);
    const Eigen::MatrixXcd direct = d1.adjoint() * pv.cast<cplx>().asDiagonal() * d1;
    EXPECT_LT((p - direct).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(Momentum, PlaneWaveEigenvector) {
  const int m = 12;
  const MomentumGrid grid(0.25, m);
  const auto p = momentum_operator(grid);
  const auto pv = grid.momenta();
  for (int n = 0; n < m; ++n) {
    if (2 * n == m) continue;  // the Nyquist mode is a standing wave on the grid
    Eigen::VectorXcd v(m);
    for (int k = 0; k < m; ++k) v(k) = std::exp(cplx(0, pv[static_cast<std::size_t>(n)] * 2.0 * k * 0.25));
    EXPECT_LT((p * v - pv[static_cast<std::size_t>(n)] * v).norm(), 1e-10);
  }
}

TEST(Momentum, FrameTransfer) {
  const MomentumGrid grid(1.0, 10);
  const auto f10 = frame_transfer(grid, 1, 0);
  const auto f01 = frame_transfer(grid, 0, 1);
  EXPECT_LT((f01 * f10 - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((frame_transfer(grid, 0, 0) - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((f10 - oracle::dft(10, 1.0, 1).adjoint() * oracle::dft(10, 1.0, 0)).cwiseAbs().maxCoeff(), 1e-12);

  // a smooth function resampled half a site over
  Eigen::VectorXcd f(10), g(10);
  for (int k = 0; k < 10; ++k) {
    f(k) = std::exp(cplx(0, 2 * std::numbers::pi * 2 * k / 10.0));
    g(k) = std::exp(cplx(0, 2 * std::numbers::pi * 2 * (k + 0.5) / 10.0));
  }
  EXPECT_LT((f10 * f - g).norm(), 1e-12);
}
