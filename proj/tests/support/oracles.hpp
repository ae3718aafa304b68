#pragma once

// Brute-force reference constructions, written from the definitions and
// sharing no code with the engine.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "pca/automaton.hpp"
#include "pca/disorder.hpp"
#include "pca/waves.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Target of one mover on the circle of 2 m_x eps-units, as an index of the
/// next slice. u is the physical coordinate in eps units.
inline int next_index(long long u, long long t_next, int m_x) {
  const long long period = 2LL * m_x;
  long long v = ((u % period) + period) % period;
  v -= t_next % 2;
  return static_cast<int>(((v / 2) % m_x + m_x) % m_x);
}

/// Real 4 m_x step matrix, layout [gamma][eta][x]: scatter with
/// -i tau_2 = [[0,-1],[1,0]] at events, then shift by one eps.
inline Eigen::MatrixXd real_step(const pca::DisorderField& field, long long t) {
  const int m = field.config().m_x;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(4 * m, 4 * m);
  for (int eta = 0; eta < 2; ++eta) {
    for (int k = 0; k < m; ++k) {
      const long long u = 2LL * k + t % 2;
      const int r_src = (0 * 2 + eta) * m + k;
      const int l_src = (1 * 2 + eta) * m + k;
      if (field.has_event(t, k)) {
        // phi_R' = -phi_L, phi_L' = phi_R
        s((1 * 2 + eta) * m + next_index(u - 1, t + 1, m), r_src) = 1.0;
        s((0 * 2 + eta) * m + next_index(u + 1, t + 1, m), l_src) = -1.0;
      } else {
        s((0 * 2 + eta) * m + next_index(u + 1, t + 1, m), r_src) = 1.0;
        s((1 * 2 + eta) * m + next_index(u - 1, t + 1, m), l_src) = 1.0;
      }
    }
  }
  return s;
}

/// Complex 2 m_x step matrix acting on (phi_R, phi_L), index gamma * m_x + x.
inline Eigen::MatrixXcd complex_step(const pca::DisorderField& field, long long t) {
  const int m = field.config().m_x;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    const long long u = 2LL * k + t % 2;
    if (field.has_event(t, k)) {
      s(m + next_index(u - 1, t + 1, m), k) = 1.0;
      s(next_index(u + 1, t + 1, m), m + k) = -1.0;
    } else {
      s(next_index(u + 1, t + 1, m), k) = 1.0;
      s(m + next_index(u - 1, t + 1, m), m + k) = 1.0;
    }
  }
  return s;
}

/// Free shift only.
inline Eigen::MatrixXcd complex_shift(int m, long long t) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    const long long u = 2LL * k + t % 2;
    s(next_index(u + 1, t + 1, m), k) = 1.0;
    s(m + next_index(u - 1, t + 1, m), m + k) = 1.0;
  }
  return s;
}

/// -i tau_2 at events, identity elsewhere.
inline Eigen::MatrixXcd complex_scatter(const pca::DisorderField& field, long long t) {
  const int m = field.config().m_x;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    if (!field.has_event(t, k)) continue;
    s(k, k) = 0.0;
    s(m + k, m + k) = 0.0;
    s(k, m + k) = -1.0;
    s(m + k, k) = 1.0;
  }
  return s;
}

inline std::vector<double> momenta(int m, double eps) {
  std::vector<double> p(static_cast<std::size_t>(m));
  for (int n = 0; n < m; ++n) {
    const int q = n <= m / 2 ? n : n - m;
    p[static_cast<std::size_t>(n)] = std::numbers::pi * q / (eps * m);
  }
  return p;
}

/// D(p, k) = exp(-i p (2k + parity) eps) / sqrt(m).
inline Eigen::MatrixXcd dft(int m, double eps, int parity) {
  const auto p = momenta(m, eps);
  Eigen::MatrixXcd d(m, m);
  for (int n = 0; n < m; ++n) {
    for (int k = 0; k < m; ++k) {
      d(n, k) = std::exp(cplx(0.0, -p[static_cast<std::size_t>(n)] * (2.0 * k + parity) * eps)) / std::sqrt(double(m));
    }
  }
  return d;
}

inline Eigen::MatrixXcd momentum(int m, double eps) {
  const auto d = dft(m, eps, 0);
  const auto p = momenta(m, eps);
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(m, m);
  for (int n = 0; n < m; ++n) diag(n, n) = p[static_cast<std::size_t>(n)];
  return d.adjoint() * diag * d;
}

inline Eigen::MatrixXcd block2(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& c,
                               const Eigen::MatrixXcd& d) {
  const auto m = a.rows();
  Eigen::MatrixXcd out(2 * m, 2 * m);
  out << a, b, c, d;
  return out;
}

/// Field with each slot occupied independently with the given probability.
inline pca::DisorderField random_field(std::mt19937_64& rng, pca::LatticeConfig cfg, double density) {
  std::bernoulli_distribution occ(density);
  std::vector<pca::DisorderField::Event> events;
  for (int t = 0; t < cfg.m_t; ++t) {
    for (int x = 0; x < cfg.m_x; ++x) {
      if (occ(rng)) events.emplace_back(t, x);
    }
  }
  return pca::DisorderField::from_events(cfg, events);
}

inline pca::RealWave random_wave(std::mt19937_64& rng, pca::LatticeConfig cfg, long long t = 0) {
  std::normal_distribution<double> g;
  pca::RealWave w(cfg, t);
  double n = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = g(rng);
    n += w[i] * w[i];
  }
  for (std::size_t i = 0; i < w.size(); ++i) w[i] /= std::sqrt(n);
  return w;
}

inline Eigen::VectorXcd as_vector(const pca::ComplexWave& phi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(phi.phi.size()));
  for (std::size_t i = 0; i < phi.phi.size(); ++i) v(static_cast<Eigen::Index>(i)) = phi.phi[i];
  return v;
}

/// phi from q straight from the definition of the complex structure.
inline Eigen::VectorXcd complex_of(const pca::RealWave& q) {
  const int m = q.config().m_x;
  Eigen::VectorXcd v(2 * m);
  const cplx a(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  for (int g = 0; g < 2; ++g) {
    for (int k = 0; k < m; ++k) {
      v(g * m + k) = a * q[static_cast<std::size_t>((g * 2 + 0) * m + k)] +
                     std::conj(a) * q[static_cast<std::size_t>((g * 2 + 1) * m + k)];
    }
  }
  return v;
}

}  // namespace oracle
