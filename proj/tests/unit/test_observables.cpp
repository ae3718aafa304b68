#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pca/automaton.hpp"
#include "pca/errors.hpp"
#include "pca/observables.hpp"

using namespace pca;

TEST(Observables, OccupationSumsSpecies) {
  std::mt19937_64 rng(1);
  const auto cfg = make_lattice(1.0, 6, 2);
  const auto q = oracle::random_wave(rng, cfg, 1);
  const auto p = occupation_probabilities(q);
  EXPECT_EQ(p.t_index, 1);
  for (int x = 0; x < 6; ++x) {
    double s = 0.0;
    for (int sector = 0; sector < 4; ++sector) s += q[static_cast<std::size_t>(sector * 6 + x)] * q[static_cast<std::size_t>(sector * 6 + x)];
    EXPECT_DOUBLE_EQ(p.p[static_cast<std::size_t>(x)], s);
  }
  EXPECT_NEAR(p.total(), 1.0, 1e-14);
  const auto pc = occupation_probabilities(decode_wave(q));
  for (int x = 0; x < 6; ++x) EXPECT_NEAR(pc.p[static_cast<std::size_t>(x)], p.p[static_cast<std::size_t>(x)], 1e-15);
}

TEST(Observables, MomentumExpectationMatchesOperator) {
  std::mt19937_64 rng(2);
  for (int m : {4, 7, 16}) {
    const auto cfg = make_lattice(0.5, m, 2);
    const MomentumGrid grid(cfg);
    const auto q = oracle::random_wave(rng, cfg);
    const Eigen::VectorXcd phi = oracle::complex_of(q);
    const Eigen::MatrixXcd p = oracle::momentum(m, 0.5);
    const double expect = (phi.head(m).adjoint() * p * phi.head(m)).value().real() +
                          (phi.tail(m).adjoint() * p * phi.tail(m)).value().real();
    EXPECT_NEAR(momentum_expectation(q, grid), expect, 1e-12);
    EXPECT_NEAR(momentum_expectation(decode_wave(q), grid), expect, 1e-12);
  }
  EXPECT_THROW((void)momentum_expectation(RealWave(make_lattice(1.0, 4, 1), 0), MomentumGrid(1.0, 5)), DimensionError);
}

TEST(Observables, Kernels) {
  const auto t = SmoothingKernel::triangular(3);
  EXPECT_EQ(t.first_offset(), -2);
  ASSERT_EQ(t.support(), 5);
  const std::vector<double> tw{1.0 / 9, 2.0 / 9, 3.0 / 9, 2.0 / 9, 1.0 / 9};
  for (int i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(t.weights()[static_cast<std::size_t>(i)], tw[static_cast<std::size_t>(i)]);
  const auto u = SmoothingKernel::uniform(3);
  EXPECT_EQ(u.first_offset(), -1);
  EXPECT_DOUBLE_EQ(u.weights()[1], 1.0 / 3);
  EXPECT_EQ(SmoothingKernel::delta().support(), 1);
  EXPECT_THROW(SmoothingKernel(0, {1.0, -0.5}), RangeError);
  EXPECT_THROW(SmoothingKernel(0, {}), RangeError);
  EXPECT_THROW((void)SmoothingKernel::triangular(0), RangeError);
}

TEST(Observables, CoarseGraining) {
  OccupationDistribution d{3, {0, 0, 1, 0, 0, 0}};
  const auto same = coarse_grain(d, SmoothingKernel::delta());
  EXPECT_EQ(same.p, d.p);
  const auto s = coarse_grain(d, SmoothingKernel::triangular(2));
  const std::vector<double> expect{0, 0.25, 0.5, 0.25, 0, 0};
  for (int i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(s.p[static_cast<std::size_t>(i)], expect[static_cast<std::size_t>(i)]);
  EXPECT_EQ(s.t_index, 3);
  // wraps around the circle and conserves probability
  OccupationDistribution edge{0, {1, 0, 0, 0, 0, 0}};
  const auto w = coarse_grain(edge, SmoothingKernel::uniform(3));
  EXPECT_DOUBLE_EQ(w.p[5], 1.0 / 3);
  EXPECT_NEAR(w.total(), 1.0, 1e-15);
  EXPECT_THROW((void)coarse_grain(d, SmoothingKernel::triangular(4)), RangeError);
}

TEST(Observables, CoarseGrainWavePreservesNorm) {
  std::mt19937_64 rng(3);
  const auto cfg = make_lattice(1.0, 12, 2);
  auto phi = decode_wave(oracle::random_wave(rng, cfg));
  const auto folded = coarse_grain_wave(phi, SmoothingKernel::triangular(3));
  EXPECT_NEAR(folded.norm_squared(), phi.norm_squared(), 1e-14);
  const auto id = coarse_grain_wave(phi, SmoothingKernel::delta());
  for (std::size_t i = 0; i < phi.phi.size(); ++i) EXPECT_NEAR(std::abs(id.phi[i] - phi.phi[i]), 0.0, 1e-15);
}

TEST(Observables, Comparison) {
  OccupationDistribution a{5, std::vector<double>(20, 0.0)};
  OccupationDistribution b{5, std::vector<double>(20, 0.0)};
  a.p[0] = 1.0;
  b.p[12] = 0.5;
  b.p[19] = 0.5;
  const auto r = compare_distributions(a, b);
  EXPECT_EQ(r.t_index, 5);
  EXPECT_DOUBLE_EQ(r.l1, 2.0);
  EXPECT_DOUBLE_EQ(r.max_abs, 1.0);
  EXPECT_DOUBLE_EQ(r.l2, std::sqrt(1.5));
  EXPECT_DOUBLE_EQ(r.regions_b[6], 0.5);
  EXPECT_DOUBLE_EQ(r.regions_b[9], 0.5);
  EXPECT_DOUBLE_EQ(r.transmitted_b, 0.5);
  EXPECT_DOUBLE_EQ(r.reflected_a, 1.0);
  EXPECT_DOUBLE_EQ(r.transmitted_a, 0.0);

  // the last region absorbs the remainder
  RegionLayout layout{3, {2}, {0}};
  OccupationDistribution c{0, std::vector<double>(7, 1.0 / 7)};
  const auto rc = compare_distributions(c, c, layout);
  EXPECT_NEAR(rc.regions_a[2], 3.0 / 7, 1e-15);
  EXPECT_EQ(rc.l1, 0.0);

  OccupationDistribution other{5, std::vector<double>(21, 0.0)};
  EXPECT_THROW((void)compare_distributions(a, other), DimensionError);
  EXPECT_THROW((void)compare_distributions(a, b, RegionLayout{10, {10}, {0}}), RangeError);
}

TEST(Observables, ReportFormats) {
  OccupationDistribution a{7, {0.5, 0.5, 0, 0}};
  OccupationDistribution b{7, {0.25, 0.25, 0.25, 0.25}};
  const auto r = compare_distributions(a, b, RegionLayout{2, {1}, {0}});
  std::ostringstream kv;
  write_report_kv(kv, r, "x.");
  EXPECT_NE(kv.str().find("x.l1 1\n"), std::string::npos);
  EXPECT_NE(kv.str().find("x.region_2_b 0.5\n"), std::string::npos);
  std::ostringstream csv;
  write_report_csv_header(csv, 2);
  write_report_csv_row(csv, "a-b", r);
  EXPECT_EQ(csv.str(),
            "t_index,comparison,l1,l2,max_abs,region_1_a,region_1_b,region_2_a,region_2_b,"
            "transmitted_a,transmitted_b,reflected_a,reflected_b\n"
            "7,a-b,1,0.5,0.25,1,0.5,0,0.5,0,0.5,1,0.5\n");
}
