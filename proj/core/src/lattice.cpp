#include "pca/lattice.hpp"

#include <string>

#include "pca/errors.hpp"

namespace pca {

void LatticeConfig::validate() const {
  if (m_x < 2) throw GeometryError("lattice needs m_x >= 2, got " + std::to_string(m_x));
  if (m_t < 1) throw GeometryError("lattice needs m_t >= 1, got " + std::to_string(m_t));
  if (!(eps > 0.0)) throw GeometryError("lattice spacing eps must be positive");
}

LatticeConfig make_lattice(double eps, int m_x, int m_t) {
  LatticeConfig cfg{eps, m_x, m_t};
  cfg.validate();
  return cfg;
}

namespace {

void check_site(SitePosition site, const LatticeConfig& cfg) {
  if (site.t_index < 0 || site.t_index > cfg.m_t) {
    throw InvalidSiteError("t_index " + std::to_string(site.t_index) + " outside [0, " +
                           std::to_string(cfg.m_t) + "]");
  }
  if (site.x_index < 0 || site.x_index >= cfg.m_x) {
    throw InvalidSiteError("x_index " + std::to_string(site.x_index) + " outside [0, " +
                           std::to_string(cfg.m_x) + ")");
  }
}

}  // namespace

std::int64_t coordinate_units(SitePosition site, const LatticeConfig& cfg) {
  check_site(site, cfg);
  const std::int64_t period = 2 * static_cast<std::int64_t>(cfg.m_x);
  const std::int64_t units = 2 * site.x_index + parity(site.t_index);
  return ((units % period) + period) % period;
}

double physical_coordinate(SitePosition site, const LatticeConfig& cfg) {
  return static_cast<double>(coordinate_units(site, cfg)) * cfg.eps;
}

SitePosition shift(SitePosition site, Direction d, const LatticeConfig& cfg) {
  check_site(site, cfg);
  if (site.t_index + 1 > cfg.m_t) {
    throw InvalidSiteError("shift past the last time slice " + std::to_string(cfg.m_t));
  }
  const int x = moved_index(static_cast<int>(site.x_index), site.t_index, d, cfg.m_x);
  return SitePosition{site.t_index + 1, x};
}

}  // namespace pca
