#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pca/lattice.hpp"

namespace pca {

/// Block sizes in lattice units: n_t_block time steps by n_x_block sites.
struct BlockGrid {
  int n_t_block = 1;
  int n_x_block = 1;

  friend bool operator==(const BlockGrid&, const BlockGrid&) = default;
};

/// Target number of scattering events per (time block i, space block j).
struct DisorderPlan {
  BlockGrid blocks;
  int time_blocks = 0;
  int space_blocks = 0;
  std::vector<int> counts;  // row-major: counts[i * space_blocks + j]
  std::uint64_t seed = 0;

  [[nodiscard]] int count(int i, int j) const {
    return counts[static_cast<std::size_t>(i) * space_blocks + j];
  }
  [[nodiscard]] bool is_static() const;

  /// Same per-space-block counts in every time block.
  static DisorderPlan static_plan(BlockGrid blocks, int time_blocks,
                                  std::vector<int> per_space_block, std::uint64_t seed);
};

/// The fixed set of scattering points for every time slice t in [0, m_t).
/// Immutable once built.
class DisorderField {
 public:
  using Event = std::pair<int, int>;  // (t_index, x_index)

  /// Empty field (free theory).
  explicit DisorderField(LatticeConfig cfg, std::uint64_t seed = 0,
                         std::optional<BlockGrid> blocks = std::nullopt);

  /// Field from an explicit event list. Duplicates or out-of-range events
  /// throw InvalidSiteError.
  static DisorderField from_events(LatticeConfig cfg, std::span<const Event> events,
                                   std::uint64_t seed = 0,
                                   std::optional<BlockGrid> blocks = std::nullopt);

  [[nodiscard]] const LatticeConfig& config() const { return cfg_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] const std::optional<BlockGrid>& blocks() const { return blocks_; }

  [[nodiscard]] bool has_event(std::int64_t t_index, int x_index) const {
    return occupancy_[static_cast<std::size_t>(t_index) * cfg_.m_x + x_index] != 0;
  }
  /// 0/1 occupancy of slice t, length m_x.
  [[nodiscard]] std::span<const std::uint8_t> slice(std::int64_t t_index) const {
    return {occupancy_.data() + static_cast<std::size_t>(t_index) * cfg_.m_x,
            static_cast<std::size_t>(cfg_.m_x)};
  }
  /// Sorted x indices carrying an event at slice t.
  [[nodiscard]] std::span<const int> events_at(std::int64_t t_index) const;

  [[nodiscard]] std::size_t event_count() const { return positions_.size(); }
  [[nodiscard]] std::vector<Event> events() const;

  friend bool operator==(const DisorderField& a, const DisorderField& b);

 private:
  void rebuild_index();

  LatticeConfig cfg_;
  std::uint64_t seed_ = 0;
  std::optional<BlockGrid> blocks_;
  std::vector<std::uint8_t> occupancy_;  // m_t * m_x
  std::vector<int> positions_;           // CSR x indices
  std::vector<std::size_t> offsets_;     // m_t + 1
};

/// Mass m and potential V(x) per site, with Vbar = m + V = pi n(x).
struct PotentialProfile {
  double eps = 1.0;
  double mass = 0.0;
  std::vector<double> potential;  // V(x) per site, length m_x
  std::vector<double> density;    // n(x) = nbar(x) / (2 eps), events per unit time

  [[nodiscard]] std::vector<double> total() const;  // Vbar(x) = m + V(x)
  /// Throws InvalidProfileError when Vbar < 0 anywhere.
  void validate() const;

  /// Profile with Vbar(x) given per site; m is its spatial mean.
  static PotentialProfile from_total(double eps, std::vector<double> vbar);
  /// Homogeneous mass m, V = 0.
  static PotentialProfile homogeneous(double eps, int m_x, double mass);
};

/// Places exactly plan.count(i, j) events uniformly without replacement in
/// every block. Deterministic in plan.seed.
/// Throws GeometryError when the blocks do not tile cfg, InfeasiblePlanError
/// when a count exceeds the block's slots.
[[nodiscard]] DisorderField synthesize_disorder(const DisorderPlan& plan, const LatticeConfig& cfg);

/// Event counts of field summed over blocks of the given grid, row-major.
[[nodiscard]] std::vector<int> block_counts(const DisorderField& field, BlockGrid blocks);

/// Time-averaged potential from the events: nhat over intervals of
/// interval_steps, averaged over block_width sites; Vbar = pi nhat / (2 Dt);
/// m = spatial mean of Vbar, V = Vbar - m.
[[nodiscard]] PotentialProfile coarse_grained_potential(const DisorderField& field,
                                                        int interval_steps, int block_width);

/// Inverse of coarse_grained_potential for scenario authoring:
/// n_int(i, j) = round(2 Dt N_x <Vbar>_j / pi), constant in i.
[[nodiscard]] DisorderPlan plan_from_potential(const PotentialProfile& profile,
                                               const LatticeConfig& cfg, BlockGrid blocks,
                                               std::uint64_t seed = 0);

/// Plan whose potential is Vbar/m = 1 + v_over_m[j] per space block, with
/// mass chosen so that a block of average count `mean_count` yields m.
[[nodiscard]] DisorderPlan plan_from_relative_potential(std::span<const double> v_over_m,
                                                        int mean_count, BlockGrid blocks,
                                                        int time_blocks, std::uint64_t seed);

// Line-oriented text format: '#'-prefixed header with cfg, seed and block
// grid, then one "t_index x_index" line per event.
void write_disorder(std::ostream& os, const DisorderField& field);
[[nodiscard]] DisorderField read_disorder(std::istream& is);

}  // namespace pca
