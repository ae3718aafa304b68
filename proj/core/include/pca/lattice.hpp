#pragma once

#include <compare>
#include <cstdint>

namespace pca {

enum class Direction { right, left };

/// Spacetime lattice: m_x sites per time slice on a circle of length
/// 2 m_x eps, and m_t time steps. The spatial sites of slice t sit on the
/// sublattice x = (2 k + parity(t)) eps.
struct LatticeConfig {
  double eps = 1.0;
  int m_x = 2;
  int m_t = 1;

  [[nodiscard]] double circumference() const { return 2.0 * m_x * eps; }

  /// Throws GeometryError when m_x < 2, m_t < 1 or eps <= 0.
  void validate() const;

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

[[nodiscard]] LatticeConfig make_lattice(double eps, int m_x, int m_t);

struct SitePosition {
  std::int64_t t_index = 0;
  std::int64_t x_index = 0;

  friend auto operator<=>(const SitePosition&, const SitePosition&) = default;
};

[[nodiscard]] constexpr int parity(std::int64_t t_index) {
  return static_cast<int>(t_index & 1);
}

/// Physical coordinate in units of eps, i.e. 2 k + parity(t), in [0, 2 m_x).
[[nodiscard]] std::int64_t coordinate_units(SitePosition site, const LatticeConfig& cfg);

/// Physical coordinate (2 x_index + parity(t_index)) eps wrapped into [0, L).
/// Throws InvalidSiteError when t_index is outside [0, m_t] or x_index
/// outside [0, m_x).
[[nodiscard]] double physical_coordinate(SitePosition site, const LatticeConfig& cfg);

/// Index on slice t+1 reached by moving one eps from index x on slice t.
/// Right: x + parity(t); left: x - 1 + parity(t); both modulo m_x.
[[nodiscard]] constexpr int moved_index(int x_index, std::int64_t t_index, Direction d, int m_x) {
  const int step = d == Direction::right ? parity(t_index) : parity(t_index) - 1;
  int target = x_index + step;
  if (target >= m_x) target -= m_x;
  if (target < 0) target += m_x;
  return target;
}

/// One free step: t_index + 1, physical coordinate +eps (right) or -eps (left).
[[nodiscard]] SitePosition shift(SitePosition site, Direction d, const LatticeConfig& cfg);

}  // namespace pca
