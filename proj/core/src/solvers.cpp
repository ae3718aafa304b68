#include "pca/solvers.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "pca/errors.hpp"
#include "pca/hamiltonian.hpp"
#include "pca/momentum.hpp"

namespace pca {

namespace {

constexpr int kMaxDenseSites = 256;

void warn(SolverDiagnostics* diag, std::string message) {
  if (diag) {
    diag->warnings.push_back(std::move(message));
  } else {
    std::clog << "warning: " << message << '\n';
  }
}

void check_profile(const PotentialProfile& profile, const LatticeConfig& cfg) {
  if (profile.potential.size() != static_cast<std::size_t>(cfg.m_x)) {
    throw DimensionError("profile has " + std::to_string(profile.potential.size()) +
                         " sites, wave has " + std::to_string(cfg.m_x));
  }
}

/// new-frame samples from old-frame samples: coefficients times e^{i p (b - a) eps}.
void resample(std::span<cplx> f, const Fft& fft, const MomentumGrid& grid, int shift_units) {
  fft.forward(f);
  const double inv = 1.0 / grid.m_x;
  for (int n = 0; n < grid.m_x; ++n) {
    f[static_cast<std::size_t>(n)] *= std::polar(inv, grid.momentum(n) * shift_units * grid.eps);
  }
  fft.backward(f);
}

std::int64_t advanced_index(std::int64_t t_index, double duration, double eps) {
  return t_index + std::llround(duration / eps);
}

void check_unitarity(double before, double after, SolverDiagnostics* diag, const char* solver) {
  const double err = std::abs(after - before);
  if (diag) diag->norm_error = std::max(diag->norm_error, err);
  if (err > kUnitarityTolerance) {
    throw NumericalError(std::string(solver) + " lost unitarity: |norm^2 change| = " + std::to_string(err));
  }
}

}  // namespace

ComplexWave shift_frame(const ComplexWave& phi, std::int64_t new_t) {
  ComplexWave out = phi;
  out.t_index = new_t;
  const int d = parity(new_t) - parity(phi.t_index);
  if (d == 0) return out;
  const MomentumGrid grid(phi.cfg);
  const Fft fft(phi.cfg.m_x);
  resample(out.component(Mover::right), fft, grid, d);
  resample(out.component(Mover::left), fft, grid, d);
  return out;
}

SchrodingerWave shift_frame(const SchrodingerWave& chi, std::int64_t new_t) {
  SchrodingerWave out = chi;
  out.t_index = new_t;
  const int d = parity(new_t) - parity(chi.t_index);
  if (d == 0) return out;
  const MomentumGrid grid(chi.cfg);
  const Fft fft(chi.cfg.m_x);
  resample(out.chi, fft, grid, d);
  return out;
}

DenseDiracPropagator::DenseDiracPropagator(const PotentialProfile& profile) {
  const int m = static_cast<int>(profile.potential.size());
  cfg_ = LatticeConfig{profile.eps, m, 1};
  const auto h0 = leading_hamiltonian(profile, MomentumGrid(profile.eps, m));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h0.h);
  if (es.info() != Eigen::Success) throw NumericalError("H_0 eigensolver did not converge");
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

ComplexWave DenseDiracPropagator::evolve(const ComplexWave& phi, double duration) const {
  if (phi.cfg.m_x != cfg_.m_x) throw DimensionError("wave and propagator differ in m_x");
  const Eigen::Map<const Eigen::VectorXcd> in(phi.phi.data(), 2 * cfg_.m_x);
  Eigen::VectorXcd c = vectors_.adjoint() * in;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -energies_(k) * duration);
  ComplexWave out(phi.cfg, phi.t_index);
  Eigen::Map<Eigen::VectorXcd>(out.phi.data(), 2 * cfg_.m_x) = vectors_ * c;
  return shift_frame(out, advanced_index(phi.t_index, duration, phi.cfg.eps));
}

SplitStepDirac::SplitStepDirac(const PotentialProfile& profile, int order, double max_dt)
    : eps_(profile.eps), order_(order), max_dt_(max_dt > 0 ? max_dt : profile.eps), vbar_(profile.total()) {
  if (order != 2 && order != 4) throw RangeError("split-step order must be 2 or 4");
  const int m = static_cast<int>(vbar_.size());
  momenta_ = MomentumGrid(profile.eps, m).momenta();
  fft_ = std::make_shared<Fft>(m);
}

void SplitStepDirac::strang(std::vector<cplx>& r, std::vector<cplx>& l, double h) const {
  const auto n = r.size();
  auto potential = [&](double tau) {
    for (std::size_t x = 0; x < n; ++x) {
      const double c = std::cos(vbar_[x] * tau);
      const double s = std::sin(vbar_[x] * tau);
      const cplx nr = c * r[x] - s * l[x];
      const cplx nl = s * r[x] + c * l[x];
      r[x] = nr;
      l[x] = nl;
    }
  };
  potential(0.5 * h);
  fft_->forward(r);
  fft_->forward(l);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx ph = std::polar(inv, -momenta_[k] * h);
    r[k] *= ph;
    l[k] *= std::conj(ph);
  }
  fft_->backward(r);
  fft_->backward(l);
  potential(0.5 * h);
}

ComplexWave SplitStepDirac::evolve(const ComplexWave& phi, double duration) const {
  const auto m = vbar_.size();
  if (phi.phi.size() != 2 * m) throw DimensionError("wave and propagator differ in m_x");
  std::vector<cplx> r(phi.phi.begin(), phi.phi.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<cplx> l(phi.phi.begin() + static_cast<std::ptrdiff_t>(m), phi.phi.end());
  const double span = std::abs(duration);
  if (span > 0.0) {
    const auto steps = static_cast<long long>(std::ceil(span / max_dt_ - 1e-9));
    const double h = duration / static_cast<double>(std::max(1LL, steps));
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = -cbrt2 / (2.0 - cbrt2);
    for (long long s = 0; s < std::max(1LL, steps); ++s) {
      if (order_ == 2) {
        strang(r, l, h);
      } else {
        strang(r, l, w1 * h);
        strang(r, l, w0 * h);
        strang(r, l, w1 * h);
      }
    }
  }
  ComplexWave out(phi.cfg, phi.t_index);
  std::copy(r.begin(), r.end(), out.phi.begin());
  std::copy(l.begin(), l.end(), out.phi.begin() + static_cast<std::ptrdiff_t>(m));
  return shift_frame(out, advanced_index(phi.t_index, duration, eps_));
}

ComplexWave dirac_evolve(const ComplexWave& phi, const PotentialProfile& profile, double duration,
                         const DiracOptions& options, SolverDiagnostics* diag) {
  check_profile(profile, phi.cfg);
  const Fft fft(phi.cfg.m_x);
  const double tail = std::max(spectral_tail(fft, phi.component(Mover::right)),
                               spectral_tail(fft, phi.component(Mover::left)));
  if (diag) diag->spectral_tail = tail;
  if (tail > kSmoothnessThreshold) {
    warn(diag, "initial wave is not smooth: spectral tail " + std::to_string(tail) + " above " +
                   std::to_string(kSmoothnessThreshold));
  }
  auto method = options.method;
  if (method == DiracMethod::automatic) {
    method = phi.cfg.m_x <= kMaxDenseSites ? DiracMethod::dense : DiracMethod::split_step;
  }
  ComplexWave out = method == DiracMethod::dense
                        ? DenseDiracPropagator(profile).evolve(phi, duration)
                        : SplitStepDirac(profile, options.order, options.max_dt).evolve(phi, duration);
  check_unitarity(phi.norm_squared(), out.norm_squared(), diag, "Dirac solver");
  return out;
}

double dirac_residual(const PotentialProfile& profile, const ComplexWave& before, const ComplexWave& centre,
                      const ComplexWave& after, double dt) {
  check_profile(profile, centre.cfg);
  const int m = centre.cfg.m_x;
  if (before.cfg.m_x != m || after.cfg.m_x != m) throw DimensionError("residual waves differ in m_x");
  const auto vbar = profile.total();
  const Fft fft(m);
  std::vector<cplx> dr(static_cast<std::size_t>(m)), dl(static_cast<std::size_t>(m));
  spectral_derivative(fft, centre.component(Mover::right), dr, 2.0 * centre.cfg.eps);
  spectral_derivative(fft, centre.component(Mover::left), dl, 2.0 * centre.cfg.eps);
  double res = 0.0;
  for (int x = 0; x < m; ++x) {
    const auto k = static_cast<std::size_t>(x);
    const cplx tr = (after.phi[k] - before.phi[k]) / (2.0 * dt);
    const cplx tl = (after.phi[k + m] - before.phi[k + m]) / (2.0 * dt);
    const cplx rr = -tl + dl[k] + vbar[k] * centre.phi[k];
    const cplx rl = tr + dr[k] + vbar[k] * centre.phi[k + m];
    res += std::norm(rr) + std::norm(rl);
  }
  return std::sqrt(res / centre.norm_squared());
}

SchrodingerPropagator::SchrodingerPropagator(const PotentialProfile& profile) {
  if (!(profile.mass > 0.0)) {
    throw InvalidProfileError("Schrodinger solver needs m > 0 (got " + std::to_string(profile.mass) + ")");
  }
  const int m = static_cast<int>(profile.potential.size());
  if (m < 2) throw DimensionError("Schrodinger solver needs at least two sites");
  cfg_ = LatticeConfig{profile.eps, m, 1};
  const double h = 2.0 * profile.eps;
  const double hop = 1.0 / (2.0 * profile.mass * h * h);
  h_ = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    h_(k, k) += 2.0 * hop + profile.potential[static_cast<std::size_t>(k)];
    h_(k, (k + 1) % m) -= hop;
    h_(k, (k + m - 1) % m) -= hop;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_);
  if (es.info() != Eigen::Success) throw NumericalError("Schrodinger eigensolver did not converge");
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

SchrodingerWave SchrodingerPropagator::evolve(const SchrodingerWave& chi, double duration) const {
  if (chi.cfg.m_x != cfg_.m_x) throw DimensionError("wave and propagator differ in m_x");
  const Eigen::Map<const Eigen::VectorXcd> in(chi.chi.data(), cfg_.m_x);
  Eigen::VectorXcd c = vectors_.transpose().cast<cplx>() * in;
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -energies_(k) * duration);
  SchrodingerWave out(chi.cfg, chi.t_index);
  Eigen::Map<Eigen::VectorXcd>(out.chi.data(), cfg_.m_x) = vectors_.cast<cplx>() * c;
  return shift_frame(out, advanced_index(chi.t_index, duration, chi.cfg.eps));
}

SchrodingerWave schrodinger_evolve(const SchrodingerWave& chi, const PotentialProfile& profile,
                                   double duration, SolverDiagnostics* diag) {
  check_profile(profile, chi.cfg);
  const SchrodingerPropagator prop(profile);
  auto out = prop.evolve(chi, duration);
  check_unitarity(chi.norm_squared(), out.norm_squared(), diag, "Schrodinger solver");
  return out;
}

ComplexWave nonrel_embed(const SchrodingerWave& chi, double mass, SolverDiagnostics* diag) {
  if (!(mass > 0.0)) throw InvalidProfileError("non-relativistic embedding needs m > 0");
  const int m = chi.cfg.m_x;
  const Fft fft(m);
  const MomentumGrid grid(chi.cfg);

  std::vector<cplx> c(chi.chi.begin(), chi.chi.end());
  fft.forward(c);
  double p2 = 0.0, w = 0.0;
  for (int n = 0; n < m; ++n) {
    const double a = std::norm(c[static_cast<std::size_t>(n)]);
    p2 += a * grid.momentum(n) * grid.momentum(n);
    w += a;
  }
  if (w == 0.0) throw NormalizationError("cannot embed a zero wave");
  const double ratio = std::sqrt(p2 / w) / mass;
  if (diag) diag->momentum_ratio = ratio;
  if (ratio > kNonrelThreshold) {
    warn(diag, "packet momentum p_rms/m = " + std::to_string(ratio) + " exceeds " +
                   std::to_string(kNonrelThreshold) + "; non-relativistic embedding is approximate");
  }

  std::vector<cplx> d(static_cast<std::size_t>(m));
  spectral_derivative(fft, chi.chi, d, 2.0 * chi.cfg.eps);
  const cplx i(0.0, 1.0);
  const cplx phase = std::polar(1.0 / std::numbers::sqrt2, -mass * chi.t_index * chi.cfg.eps);
  ComplexWave out(chi.cfg, chi.t_index);
  for (int x = 0; x < m; ++x) {
    const auto k = static_cast<std::size_t>(x);
    out.phi[k] = phase * (chi.chi[k] - i * d[k] / (2.0 * mass));
    out.phi[k + m] = phase * (i * chi.chi[k] - d[k] / (2.0 * mass));
  }
  out.normalize();
  return out;
}

SchrodingerWave gaussian_packet(const LatticeConfig& cfg, std::int64_t t_index, double x0, double sigma,
                                double p0, int x_begin, int x_end) {
  if (!(sigma > 0.0)) throw RangeError("packet width must be positive");
  if (x_end < 0) x_end = cfg.m_x;
  if (x_begin < 0 || x_begin >= x_end || x_end > cfg.m_x) throw RangeError("packet support window is empty");
  SchrodingerWave chi(cfg, t_index);
  const double len = cfg.circumference();
  for (int k = x_begin; k < x_end; ++k) {
    const double x = (2.0 * k + parity(t_index)) * cfg.eps;
    const double d = x - x0 - len * std::floor((x - x0) / len + 0.5);
    chi.chi[static_cast<std::size_t>(k)] = std::polar(std::exp(-d * d / (4.0 * sigma * sigma)), p0 * d);
  }
  chi.normalize();
  return chi;
}

}  // namespace pca
