#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"
#include "pca/errors.hpp"
#include "pca/hamiltonian.hpp"
#include "pca/observables.hpp"
#include "pca/solvers.hpp"

using namespace pca;

namespace {

ComplexWave smooth_wave(const LatticeConfig& cfg, double x0, double sigma, double p0, cplx left = {0.0, 0.0}) {
  const auto chi = gaussian_packet(cfg, 0, x0, sigma, p0);
  ComplexWave phi(cfg, 0);
  for (int k = 0; k < cfg.m_x; ++k) {
    phi.component(Mover::right)[static_cast<std::size_t>(k)] = chi.chi[static_cast<std::size_t>(k)];
    phi.component(Mover::left)[static_cast<std::size_t>(k)] = left * chi.chi[static_cast<std::size_t>(k)];
  }
  phi.normalize();
  return phi;
}

double max_diff(const ComplexWave& a, const ComplexWave& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.phi.size(); ++i) d = std::max(d, std::abs(a.phi[i] - b.phi[i]));
  return d;
}

PotentialProfile barrier(double eps, int m, double mass, double height) {
  auto p = PotentialProfile::homogeneous(eps, m, mass);
  for (int k = m / 2; k < m / 2 + m / 8; ++k) p.potential[static_cast<std::size_t>(k)] = height;
  return p;
}

}  // namespace

TEST(Solvers, DiracDispersion) {
  const int m = 16;
  const double mass = 0.4;
  const DenseDiracPropagator prop(PotentialProfile::homogeneous(0.5, m, mass));
  std::vector<double> expect;
  for (double p : MomentumGrid(0.5, m).momenta()) {
    const double e = std::sqrt(p * p + mass * mass);
    expect.push_back(e);
    expect.push_back(-e);
  }
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 2 * m; ++i) EXPECT_NEAR(prop.energies()(i), expect[static_cast<std::size_t>(i)], 1e-11);
}

TEST(Solvers, MasslessTranslationIsExact) {
  const auto cfg = make_lattice(1.0, 32, 64);
  const auto phi = smooth_wave(cfg, 20.0, 4.0, 0.2, {0.0, 0.5});
  const auto out = dirac_evolve(phi, PotentialProfile::homogeneous(1.0, 32, 0.0), 6.0, {DiracMethod::dense});
  EXPECT_EQ(out.t_index, 6);
  for (int k = 0; k < 32; ++k) {
    EXPECT_NEAR(std::abs(out.component(Mover::right)[static_cast<std::size_t>((k + 3) % 32)] -
                         phi.component(Mover::right)[static_cast<std::size_t>(k)]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out.component(Mover::left)[static_cast<std::size_t>((k + 29) % 32)] -
                         phi.component(Mover::left)[static_cast<std::size_t>(k)]), 0.0, 1e-12);
  }
}

TEST(Solvers, DenseMatchesMatrixExponential) {
  const int m = 12;
  const auto profile = barrier(1.0, m, 0.3, 0.2);
  const auto h = leading_hamiltonian(profile, MomentumGrid(1.0, m)).h;
  const auto cfg = make_lattice(1.0, m, 8);
  const auto phi = smooth_wave(cfg, 8.0, 3.0, 0.1);
  const Eigen::MatrixXcd u = (cplx(0, -4.0) * h).exp();
  const Eigen::VectorXcd expect = u * oracle::as_vector(phi);
  const auto out = DenseDiracPropagator(profile).evolve(phi, 4.0);
  EXPECT_EQ(out.t_index, 4);
  EXPECT_LT((oracle::as_vector(out) - expect).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Solvers, SplitStepMatchesDense) {
  const int m = 128;
  const auto cfg = make_lattice(0.5, m, 200);
  const auto profile = barrier(0.5, m, 0.5, 0.1);
  const auto phi = smooth_wave(cfg, 40.0, 8.0, 0.2, {0.0, 1.0});
  const auto dense = DenseDiracPropagator(profile).evolve(phi, 30.0);
  for (int order : {2, 4}) {
    const auto split = SplitStepDirac(profile, order, 0.05).evolve(phi, 30.0);
    EXPECT_EQ(split.t_index, dense.t_index);
    EXPECT_LT(max_diff(split, dense), order == 4 ? 1e-6 : 1e-3) << order;
  }
  const double e2a = max_diff(SplitStepDirac(profile, 2, 0.2).evolve(phi, 30.0), dense);
  const double e2b = max_diff(SplitStepDirac(profile, 2, 0.1).evolve(phi, 30.0), dense);
  EXPECT_NEAR(e2a / e2b, 4.0, 0.5);
  const double e4a = max_diff(SplitStepDirac(profile, 4, 0.4).evolve(phi, 30.0), dense);
  const double e4b = max_diff(SplitStepDirac(profile, 4, 0.2).evolve(phi, 30.0), dense);
  EXPECT_NEAR(e4a / e4b, 16.0, 3.0);
  EXPECT_THROW(SplitStepDirac(profile, 3), RangeError);
}

TEST(Solvers, OddDurationResamplesFrame) {
  const int m = 64;
  const auto cfg = make_lattice(1.0, m, 20);
  const auto profile = PotentialProfile::homogeneous(1.0, m, 0.2);
  const auto phi = smooth_wave(cfg, 60.0, 10.0, 0.05);
  const auto a = DenseDiracPropagator(profile).evolve(phi, 5.0);
  const auto b = SplitStepDirac(profile, 4, 0.1).evolve(phi, 5.0);
  EXPECT_EQ(a.t_index, 5);
  EXPECT_LT(max_diff(a, b), 1e-7);
  // back-propagation returns to the starting slice
  const auto back = DenseDiracPropagator(profile).evolve(a, -5.0);
  EXPECT_EQ(back.t_index, 0);
  EXPECT_LT(max_diff(back, phi), 1e-10);
}

TEST(Solvers, ShiftFrameRoundTrip) {
  const auto cfg = make_lattice(1.0, 40, 4);
  const auto phi = smooth_wave(cfg, 30.0, 6.0, 0.1, {0.3, 0.2});
  EXPECT_LT(max_diff(shift_frame(phi, 2), phi), 1e-15);
  EXPECT_EQ(shift_frame(phi, 2).t_index, 2);
  const auto there = shift_frame(phi, 1);
  EXPECT_LT(max_diff(shift_frame(there, 0), phi), 1e-12);
  // the half-site shift of a smooth packet is close to sampling it there
  const auto wide = make_lattice(1.0, 120, 4);
  const auto direct = gaussian_packet(wide, 1, 120.0, 10.0, 0.1);
  const auto chi = shift_frame(gaussian_packet(wide, 0, 120.0, 10.0, 0.1), 1);
  for (int k = 0; k < 120; ++k) EXPECT_NEAR(std::abs(chi.chi[static_cast<std::size_t>(k)] - direct.chi[static_cast<std::size_t>(k)]), 0.0, 1e-9);
}

TEST(Solvers, ResidualShrinksWithTimeStep) {
  const int m = 64;
  const auto cfg = make_lattice(1.0, m, 20);
  const auto profile = barrier(1.0, m, 0.3, 0.05);
  const DenseDiracPropagator prop(profile);
  const auto centre = prop.evolve(smooth_wave(cfg, 40.0, 8.0, 0.1), 2.0);
  double last = 1.0;
  for (double dt : {0.2, 0.1, 0.05}) {
    const double r = dirac_residual(profile, prop.evolve(centre, -dt), centre, prop.evolve(centre, dt), dt);
    EXPECT_LT(r, 0.3 * last);
    last = r;
  }
  EXPECT_LT(last, 1e-3);
  // a wave that does not solve the equation has a large residual
  EXPECT_GT(dirac_residual(profile, centre, centre, centre, 0.05), 0.1);
}

TEST(Solvers, NonSmoothInputWarns) {
  const auto cfg = make_lattice(1.0, 16, 4);
  ComplexWave phi(cfg, 0);
  phi.phi[3] = 1.0;
  SolverDiagnostics diag;
  (void)dirac_evolve(phi, PotentialProfile::homogeneous(1.0, 16, 0.1), 1.0, {}, &diag);
  EXPECT_GT(diag.spectral_tail, kSmoothnessThreshold);
  ASSERT_EQ(diag.warnings.size(), 1u);
  EXPECT_LT(diag.norm_error, 1e-12);
}

TEST(Solvers, SchrodingerSpectrum) {
  const int m = 20;
  const double eps = 0.5, mass = 2.0, h = 2 * eps;
  const SchrodingerPropagator prop(PotentialProfile::homogeneous(eps, m, mass));
  std::vector<double> expect;
  for (int n = 0; n < m; ++n) expect.push_back((1.0 - std::cos(2 * std::numbers::pi * n / m)) / (mass * h * h));
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < m; ++i) EXPECT_NEAR(prop.energies()(i), expect[static_cast<std::size_t>(i)], 1e-12);
  const auto& ham = prop.hamiltonian();
  EXPECT_NEAR(ham(0, 1), -1.0 / (2 * mass * h * h), 1e-15);
  EXPECT_NEAR(ham(0, m - 1), -1.0 / (2 * mass * h * h), 1e-15);
}

TEST(Solvers, SchrodingerPlaneWaveAndPotential) {
  const int m = 24;
  const auto cfg = make_lattice(1.0, m, 10);
  auto profile = PotentialProfile::homogeneous(1.0, m, 1.0);
  for (auto& v : profile.potential) v = 0.25;
  SchrodingerWave chi(cfg, 0);
  const double k = 2 * std::numbers::pi * 3 / (2.0 * m);
  for (int x = 0; x < m; ++x) chi.chi[static_cast<std::size_t>(x)] = std::polar(1.0 / std::sqrt(double(m)), k * 2 * x);
  const auto out = schrodinger_evolve(chi, profile, 4.0);
  const double e = (1.0 - std::cos(2 * k)) / 4.0 + 0.25;
  for (int x = 0; x < m; ++x) {
    EXPECT_NEAR(std::abs(out.chi[static_cast<std::size_t>(x)] - chi.chi[static_cast<std::size_t>(x)] * std::polar(1.0, -e * 4.0)), 0.0, 1e-12);
  }
  EXPECT_EQ(out.t_index, 4);
}

TEST(Solvers, SchrodingerBarrierMatchesExponential) {
  const int m = 16;
  const auto cfg = make_lattice(1.0, m, 10);
  const auto profile = barrier(1.0, m, 1.5, 0.3);
  const SchrodingerPropagator prop(profile);
  const auto chi = gaussian_packet(cfg, 0, 10.0, 3.0, 0.2);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  const double hop = 1.0 / (2 * 1.5 * 4.0);
  for (int x = 0; x < m; ++x) {
    h(x, x) = 2 * hop + profile.potential[static_cast<std::size_t>(x)];
    h(x, (x + 1) % m) = -hop;
    h(x, (x + m - 1) % m) = -hop;
  }
  const Eigen::MatrixXcd u = (cplx(0, -2.0) * h).exp();
  Eigen::VectorXcd v(m);
  for (int x = 0; x < m; ++x) v(x) = chi.chi[static_cast<std::size_t>(x)];
  const Eigen::VectorXcd expect = u * v;
  const auto out = prop.evolve(chi, 2.0);
  for (int x = 0; x < m; ++x) EXPECT_NEAR(std::abs(out.chi[static_cast<std::size_t>(x)] - expect(x)), 0.0, 1e-11);
}

TEST(Solvers, SchrodingerNeedsPositiveMass) {
  EXPECT_THROW(SchrodingerPropagator(PotentialProfile::homogeneous(1.0, 8, 0.0)), InvalidProfileError);
  EXPECT_THROW((void)nonrel_embed(SchrodingerWave(make_lattice(1.0, 8, 2), 0), 0.0), InvalidProfileError);
}

TEST(Solvers, NonrelEmbedConstant) {
  const auto cfg = make_lattice(0.5, 8, 4);
  SchrodingerWave chi(cfg, 2);
  for (auto& c : chi.chi) c = 1.0;
  SolverDiagnostics diag;
  const auto phi = nonrel_embed(chi, 2.0, &diag);
  EXPECT_NEAR(diag.momentum_ratio, 0.0, 1e-15);
  EXPECT_TRUE(diag.warnings.empty());
  const cplx phase = std::polar(1.0, -2.0 * 2 * 0.5);
  for (int x = 0; x < 8; ++x) {
    const cplx r = phi.component(Mover::right)[static_cast<std::size_t>(x)];
    const cplx l = phi.component(Mover::left)[static_cast<std::size_t>(x)];
    EXPECT_NEAR(std::abs(r - phase / std::sqrt(16.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(l - cplx(0, 1) * r), 0.0, 1e-14);
  }
}

TEST(Solvers, NonrelEmbedWarnsForFastPackets) {
  const auto cfg = make_lattice(1.0, 64, 4);
  SolverDiagnostics slow, fast;
  (void)nonrel_embed(gaussian_packet(cfg, 0, 64.0, 12.0, 0.05), 1.0, &slow);
  (void)nonrel_embed(gaussian_packet(cfg, 0, 64.0, 12.0, 0.5), 1.0, &fast);
  EXPECT_TRUE(slow.warnings.empty());
  EXPECT_LT(slow.momentum_ratio, kNonrelThreshold);
  EXPECT_EQ(fast.warnings.size(), 1u);
  EXPECT_GT(fast.momentum_ratio, kNonrelThreshold);
}

TEST(Solvers, NonrelEmbedTracksSchrodinger) {
  const int m = 256;
  const double mass = 1.0;
  const auto cfg = make_lattice(1.0, m, 100);
  const auto chi = gaussian_packet(cfg, 0, 200.0, 20.0, 0.05);
  const auto profile = PotentialProfile::homogeneous(1.0, m, mass);
  const auto dirac = dirac_evolve(nonrel_embed(chi, mass), profile, 40.0);
  const auto schrod = nonrel_embed(schrodinger_evolve(chi, profile, 40.0), mass);
  const auto pa = occupation_probabilities(dirac);
  const auto pb = occupation_probabilities(schrod);
  EXPECT_LT(compare_distributions(pa, pb).l1, 0.02);
}

TEST(Solvers, GaussianPacket) {
  const auto cfg = make_lattice(1.0, 20, 2);
  const auto chi = gaussian_packet(cfg, 0, 1.0, 2.0, 0.3, 0, 5);
  EXPECT_NEAR(chi.norm_squared(), 1.0, 1e-14);
  for (int k = 5; k < 20; ++k) EXPECT_EQ(chi.chi[static_cast<std::size_t>(k)], cplx(0.0));
  // periodic distance: a packet at the seam is symmetric across it
  const auto seam = gaussian_packet(cfg, 0, 0.0, 3.0, 0.0);
  EXPECT_NEAR(std::abs(seam.chi[1]), std::abs(seam.chi[19]), 1e-15);
  EXPECT_THROW((void)gaussian_packet(cfg, 0, 1.0, 0.0, 0.0), RangeError);
  EXPECT_THROW((void)gaussian_packet(cfg, 0, 1.0, 1.0, 0.0, 4, 4), RangeError);
}
