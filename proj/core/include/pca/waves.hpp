#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "pca/lattice.hpp"

namespace pca {

using cplx = std::complex<double>;

/// Mover species gamma.
enum class Mover : int { right = 0, left = 1 };
/// Particle/hole label eta = +1 / -1.
enum class Charge : int { plus = 0, minus = 1 };

/// Position of one real amplitude q_{gamma eta}(x) in a RealWave.
struct BasisIndex {
  Mover gamma = Mover::right;
  Charge eta = Charge::plus;
  int x_index = 0;

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

[[nodiscard]] constexpr std::size_t flat_index(BasisIndex b, int m_x) {
  return (static_cast<std::size_t>(b.gamma) * 2 + static_cast<std::size_t>(b.eta)) * m_x +
         static_cast<std::size_t>(b.x_index);
}

[[nodiscard]] constexpr BasisIndex basis_of(std::size_t flat, int m_x) {
  const auto sector = flat / static_cast<std::size_t>(m_x);
  return BasisIndex{static_cast<Mover>(sector / 2), static_cast<Charge>(sector % 2),
                    static_cast<int>(flat % static_cast<std::size_t>(m_x))};
}

/// Real classical wave function q_{gamma eta}(x) on slice t_index; the squares
/// are the probabilities of the one-particle bit configurations.
class RealWave {
 public:
  RealWave() = default;
  RealWave(LatticeConfig cfg, std::int64_t t_index);

  /// Unit amplitude on a single basis configuration.
  static RealWave delta(LatticeConfig cfg, std::int64_t t_index, BasisIndex at);

  [[nodiscard]] const LatticeConfig& config() const { return cfg_; }
  [[nodiscard]] std::int64_t t_index() const { return t_; }
  void set_t_index(std::int64_t t) { t_ = t; }

  [[nodiscard]] std::size_t size() const { return q_.size(); }
  [[nodiscard]] double& operator[](std::size_t i) { return q_[i]; }
  [[nodiscard]] double operator[](std::size_t i) const { return q_[i]; }
  [[nodiscard]] double& at(BasisIndex b) { return q_[flat_index(b, cfg_.m_x)]; }
  [[nodiscard]] double at(BasisIndex b) const { return q_[flat_index(b, cfg_.m_x)]; }

  [[nodiscard]] std::span<double> values() { return q_; }
  [[nodiscard]] std::span<const double> values() const { return q_; }
  [[nodiscard]] std::span<const double> component(Mover g, Charge e) const;
  [[nodiscard]] std::span<double> component(Mover g, Charge e);

  [[nodiscard]] double norm_squared() const;

  friend bool operator==(const RealWave&, const RealWave&) = default;

 private:
  LatticeConfig cfg_{};
  std::int64_t t_ = 0;
  std::vector<double> q_;
};

/// Two-component complex wave (phi_R, phi_L) on slice t_index.
struct ComplexWave {
  LatticeConfig cfg{};
  std::int64_t t_index = 0;
  std::vector<cplx> phi;  // [gamma][x], length 2 m_x

  ComplexWave() = default;
  ComplexWave(LatticeConfig c, std::int64_t t) : cfg(c), t_index(t), phi(2 * static_cast<std::size_t>(c.m_x)) {}

  [[nodiscard]] int m_x() const { return cfg.m_x; }
  [[nodiscard]] std::span<cplx> component(Mover g) {
    return {phi.data() + static_cast<std::size_t>(g) * cfg.m_x, static_cast<std::size_t>(cfg.m_x)};
  }
  [[nodiscard]] std::span<const cplx> component(Mover g) const {
    return {phi.data() + static_cast<std::size_t>(g) * cfg.m_x, static_cast<std::size_t>(cfg.m_x)};
  }
  [[nodiscard]] double norm_squared() const;
  void normalize();
};

/// Non-relativistic wave function chi(x) on the sublattice grid.
struct SchrodingerWave {
  LatticeConfig cfg{};
  std::int64_t t_index = 0;
  std::vector<cplx> chi;  // length m_x

  SchrodingerWave() = default;
  SchrodingerWave(LatticeConfig c, std::int64_t t) : cfg(c), t_index(t), chi(static_cast<std::size_t>(c.m_x)) {}

  [[nodiscard]] double norm_squared() const;
  void normalize();
};

}  // namespace pca
