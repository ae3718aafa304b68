#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pca/momentum.hpp"
#include "pca/waves.hpp"

namespace pca {

struct OccupationDistribution {
  std::int64_t t_index = 0;
  std::vector<double> p;  // per site, summed over gamma and eta

  [[nodiscard]] int m_x() const { return static_cast<int>(p.size()); }
  [[nodiscard]] double total() const;
};

/// p(x) = sum_{gamma eta} q^2.
[[nodiscard]] OccupationDistribution occupation_probabilities(const RealWave& q);
/// p(x) = |phi_R|^2 + |phi_L|^2.
[[nodiscard]] OccupationDistribution occupation_probabilities(const ComplexWave& phi);
/// p(x) = |chi|^2.
[[nodiscard]] OccupationDistribution occupation_probabilities(const SchrodingerWave& chi);

/// <P> of the real wave, with P~ = A + iB acting through the complex
/// structure (the imaginary unit pairs q_{gamma+} with q_{gamma-}):
/// sum_gamma q+^T A q+ + q-^T A q- + 2 q+^T B q-. Equals phi^dagger P~ phi.
[[nodiscard]] double momentum_expectation(const RealWave& q, const MomentumGrid& grid);
[[nodiscard]] double momentum_expectation(const ComplexWave& phi, const MomentumGrid& grid);

/// Circular smoothing window: weights at site offsets first_offset ...
/// first_offset + weights.size() - 1, non-negative and summing to 1.
class SmoothingKernel {
 public:
  SmoothingKernel(int first_offset, std::vector<double> weights);

  static SmoothingKernel delta();
  /// Weights proportional to max(0, width - |h|): full width at half maximum `width` sites.
  static SmoothingKernel triangular(int width);
  /// Equal weights over `width` consecutive sites centred on zero.
  static SmoothingKernel uniform(int width);

  [[nodiscard]] int first_offset() const { return first_; }
  [[nodiscard]] const std::vector<double>& weights() const { return w_; }
  [[nodiscard]] int support() const { return static_cast<int>(w_.size()); }

 private:
  int first_ = 0;
  std::vector<double> w_;
};

/// out[x] = sum_h f(h) p[x - h] on the circle. Throws RangeError when the
/// kernel support exceeds m_x sites.
[[nodiscard]] OccupationDistribution coarse_grain(const OccupationDistribution& dist,
                                                  const SmoothingKernel& kernel);

/// Folded wave phi_bar = sum_h f(h) phi(x - h), rescaled to the norm of phi.
[[nodiscard]] ComplexWave coarse_grain_wave(const ComplexWave& phi, const SmoothingKernel& kernel);

struct RegionLayout {
  int regions = 10;
  std::vector<int> transmitted = {5, 6, 7, 8};  // zero-based region indices
  std::vector<int> reflected = {0, 1, 2, 3};
};

struct ComparisonReport {
  std::int64_t t_index = 0;
  double l1 = 0;
  double l2 = 0;
  double max_abs = 0;
  std::vector<double> regions_a;
  std::vector<double> regions_b;
  double transmitted_a = 0;
  double transmitted_b = 0;
  double reflected_a = 0;
  double reflected_b = 0;
};

/// Distances and region sums. Regions split m_x into equal blocks
/// (the last one absorbs any remainder). Throws DimensionError on a grid mismatch.
[[nodiscard]] ComparisonReport compare_distributions(const OccupationDistribution& a,
                                                     const OccupationDistribution& b,
                                                     const RegionLayout& layout = {});

/// "key value" lines, every key prefixed with `prefix`.
void write_report_kv(std::ostream& os, const ComparisonReport& r, const std::string& prefix = "");
void write_report_csv_header(std::ostream& os, int regions);
/// One row keyed by t_index and a comparison label.
void write_report_csv_row(std::ostream& os, const std::string& label, const ComparisonReport& r);

}  // namespace pca
