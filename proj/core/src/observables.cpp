#include "pca/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "pca/errors.hpp"
#include "pca/spectral.hpp"
#include "pca/text_format.hpp"

namespace pca {

double OccupationDistribution::total() const { return std::accumulate(p.begin(), p.end(), 0.0); }

OccupationDistribution occupation_probabilities(const RealWave& q) {
  const int m = q.config().m_x;
  OccupationDistribution d{q.t_index(), std::vector<double>(static_cast<std::size_t>(m), 0.0)};
  for (auto g : {Mover::right, Mover::left}) {
    for (auto e : {Charge::plus, Charge::minus}) {
      const auto c = q.component(g, e);
      for (int x = 0; x < m; ++x) d.p[static_cast<std::size_t>(x)] += c[static_cast<std::size_t>(x)] * c[static_cast<std::size_t>(x)];
    }
  }
  return d;
}

OccupationDistribution occupation_probabilities(const ComplexWave& phi) {
  const int m = phi.cfg.m_x;
  OccupationDistribution d{phi.t_index, std::vector<double>(static_cast<std::size_t>(m))};
  for (int x = 0; x < m; ++x) {
    const auto k = static_cast<std::size_t>(x);
    d.p[k] = std::norm(phi.phi[k]) + std::norm(phi.phi[k + static_cast<std::size_t>(m)]);
  }
  return d;
}

OccupationDistribution occupation_probabilities(const SchrodingerWave& chi) {
  OccupationDistribution d{chi.t_index, std::vector<double>(chi.chi.size())};
  for (std::size_t k = 0; k < chi.chi.size(); ++k) d.p[k] = std::norm(chi.chi[k]);
  return d;
}

namespace {

double spectral_momentum(std::span<const cplx> f, const Fft& fft, const MomentumGrid& grid) {
  std::vector<cplx> c(f.begin(), f.end());
  fft.forward(c);
  double s = 0.0;
  for (int n = 0; n < grid.m_x; ++n) s += grid.momentum(n) * std::norm(c[static_cast<std::size_t>(n)]);
  return s / grid.m_x;
}

}  // namespace

double momentum_expectation(const ComplexWave& phi, const MomentumGrid& grid) {
  if (phi.cfg.m_x != grid.m_x) throw DimensionError("wave and momentum grid differ in m_x");
  const Fft fft(grid.m_x);
  return spectral_momentum(phi.component(Mover::right), fft, grid) +
         spectral_momentum(phi.component(Mover::left), fft, grid);
}

double momentum_expectation(const RealWave& q, const MomentumGrid& grid) {
  if (q.config().m_x != grid.m_x) throw DimensionError("wave and momentum grid differ in m_x");
  // phi_gamma = ((q+ + q-) + i (q+ - q-)) / sqrt2 carries the same quadratic form
  ComplexWave phi(q.config(), q.t_index());
  const double r = 1.0 / std::sqrt(2.0);
  for (auto g : {Mover::right, Mover::left}) {
    const auto plus = q.component(g, Charge::plus);
    const auto minus = q.component(g, Charge::minus);
    auto dst = phi.component(g);
    for (std::size_t x = 0; x < dst.size(); ++x) dst[x] = cplx(r * (plus[x] + minus[x]), r * (plus[x] - minus[x]));
  }
  return momentum_expectation(phi, grid);
}

SmoothingKernel::SmoothingKernel(int first_offset, std::vector<double> weights)
    : first_(first_offset), w_(std::move(weights)) {
  if (w_.empty()) throw RangeError("smoothing kernel has no weights");
  double sum = 0.0;
  for (double v : w_) {
    if (!(v >= 0.0)) throw RangeError("smoothing kernel weights must be non-negative");
    sum += v;
  }
  if (!(sum > 0.0)) throw RangeError("smoothing kernel weights sum to zero");
  for (double& v : w_) v /= sum;
}

SmoothingKernel SmoothingKernel::delta() { return SmoothingKernel(0, {1.0}); }

SmoothingKernel SmoothingKernel::triangular(int width) {
  if (width < 1) throw RangeError("triangular kernel width must be at least 1");
  std::vector<double> w(static_cast<std::size_t>(2 * width - 1));
  for (int h = -(width - 1); h <= width - 1; ++h) w[static_cast<std::size_t>(h + width - 1)] = width - std::abs(h);
  return SmoothingKernel(-(width - 1), std::move(w));
}

SmoothingKernel SmoothingKernel::uniform(int width) {
  if (width < 1) throw RangeError("uniform kernel width must be at least 1");
  return SmoothingKernel(-(width / 2), std::vector<double>(static_cast<std::size_t>(width), 1.0));
}

namespace {

void check_support(const SmoothingKernel& kernel, int m_x) {
  if (kernel.support() > m_x) {
    throw RangeError("kernel support " + std::to_string(kernel.support()) + " exceeds the " +
                     std::to_string(m_x) + "-site circle");
  }
}

int wrap(int x, int m) {
  const int r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

OccupationDistribution coarse_grain(const OccupationDistribution& dist, const SmoothingKernel& kernel) {
  const int m = dist.m_x();
  check_support(kernel, m);
  OccupationDistribution out{dist.t_index, std::vector<double>(static_cast<std::size_t>(m), 0.0)};
  const auto& w = kernel.weights();
  for (int x = 0; x < m; ++x) {
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const int h = kernel.first_offset() + static_cast<int>(j);
      s += w[j] * dist.p[static_cast<std::size_t>(wrap(x - h, m))];
    }
    out.p[static_cast<std::size_t>(x)] = s;
  }
  return out;
}

ComplexWave coarse_grain_wave(const ComplexWave& phi, const SmoothingKernel& kernel) {
  const int m = phi.cfg.m_x;
  check_support(kernel, m);
  ComplexWave out(phi.cfg, phi.t_index);
  const auto& w = kernel.weights();
  for (auto g : {Mover::right, Mover::left}) {
    const auto src = phi.component(g);
    auto dst = out.component(g);
    for (int x = 0; x < m; ++x) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        const int h = kernel.first_offset() + static_cast<int>(j);
        s += w[j] * src[static_cast<std::size_t>(wrap(x - h, m))];
      }
      dst[static_cast<std::size_t>(x)] = s;
    }
  }
  const double before = phi.norm_squared();
  const double after = out.norm_squared();
  if (after > 0.0) {
    const double scale = std::sqrt(before / after);
    for (auto& v : out.phi) v *= scale;
  }
  return out;
}

ComparisonReport compare_distributions(const OccupationDistribution& a, const OccupationDistribution& b,
                                       const RegionLayout& layout) {
  if (a.m_x() != b.m_x()) {
    throw DimensionError("distributions on different grids: " + std::to_string(a.m_x()) + " vs " +
                         std::to_string(b.m_x()) + " sites");
  }
  const int m = a.m_x();
  if (layout.regions < 1 || layout.regions > m) throw RangeError("region count must lie in [1, m_x]");
  ComparisonReport r;
  r.t_index = a.t_index;
  double l2 = 0.0;
  for (int x = 0; x < m; ++x) {
    const double d = std::abs(a.p[static_cast<std::size_t>(x)] - b.p[static_cast<std::size_t>(x)]);
    r.l1 += d;
    l2 += d * d;
    r.max_abs = std::max(r.max_abs, d);
  }
  r.l2 = std::sqrt(l2);
  const int width = m / layout.regions;
  r.regions_a.assign(static_cast<std::size_t>(layout.regions), 0.0);
  r.regions_b.assign(static_cast<std::size_t>(layout.regions), 0.0);
  for (int x = 0; x < m; ++x) {
    const int j = std::min(x / width, layout.regions - 1);
    r.regions_a[static_cast<std::size_t>(j)] += a.p[static_cast<std::size_t>(x)];
    r.regions_b[static_cast<std::size_t>(j)] += b.p[static_cast<std::size_t>(x)];
  }
  auto sum_over = [&](const std::vector<int>& idx, const std::vector<double>& reg) {
    double s = 0.0;
    for (int j : idx) {
      if (j < 0 || j >= layout.regions) throw RangeError("region index " + std::to_string(j) + " out of range");
      s += reg[static_cast<std::size_t>(j)];
    }
    return s;
  };
  r.transmitted_a = sum_over(layout.transmitted, r.regions_a);
  r.transmitted_b = sum_over(layout.transmitted, r.regions_b);
  r.reflected_a = sum_over(layout.reflected, r.regions_a);
  r.reflected_b = sum_over(layout.reflected, r.regions_b);
  return r;
}

void write_report_kv(std::ostream& os, const ComparisonReport& r, const std::string& prefix) {
  using text::format_double;
  os << prefix << "t_index " << r.t_index << '\n';
  os << prefix << "l1 " << format_double(r.l1) << '\n';
  os << prefix << "l2 " << format_double(r.l2) << '\n';
  os << prefix << "max_abs " << format_double(r.max_abs) << '\n';
  for (std::size_t j = 0; j < r.regions_a.size(); ++j) {
    os << prefix << "region_" << j + 1 << "_a " << format_double(r.regions_a[j]) << '\n';
    os << prefix << "region_" << j + 1 << "_b " << format_double(r.regions_b[j]) << '\n';
  }
  os << prefix << "transmitted_a " << format_double(r.transmitted_a) << '\n';
  os << prefix << "transmitted_b " << format_double(r.transmitted_b) << '\n';
  os << prefix << "reflected_a " << format_double(r.reflected_a) << '\n';
  os << prefix << "reflected_b " << format_double(r.reflected_b) << '\n';
}

void write_report_csv_header(std::ostream& os, int regions) {
  os << "t_index,comparison,l1,l2,max_abs";
  for (int j = 1; j <= regions; ++j) os << ",region_" << j << "_a,region_" << j << "_b";
  os << ",transmitted_a,transmitted_b,reflected_a,reflected_b\n";
}

void write_report_csv_row(std::ostream& os, const std::string& label, const ComparisonReport& r) {
  using text::format_double;
  os << r.t_index << ',' << label << ',' << format_double(r.l1) << ',' << format_double(r.l2) << ','
     << format_double(r.max_abs);
  for (std::size_t j = 0; j < r.regions_a.size(); ++j) {
    os << ',' << format_double(r.regions_a[j]) << ',' << format_double(r.regions_b[j]);
  }
  os << ',' << format_double(r.transmitted_a) << ',' << format_double(r.transmitted_b) << ','
     << format_double(r.reflected_a) << ',' << format_double(r.reflected_b) << '\n';
}

}  // namespace pca
