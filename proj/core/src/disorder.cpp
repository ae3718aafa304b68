#include "pca/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "pca/errors.hpp"
#include "pca/text_format.hpp"

namespace pca {

bool DisorderPlan::is_static() const {
  for (int i = 1; i < time_blocks; ++i) {
    for (int j = 0; j < space_blocks; ++j) {
      if (count(i, j) != count(0, j)) return false;
    }
  }
  return true;
}

DisorderPlan DisorderPlan::static_plan(BlockGrid blocks, int time_blocks,
                                       std::vector<int> per_space_block, std::uint64_t seed) {
  DisorderPlan plan;
  plan.blocks = blocks;
  plan.time_blocks = time_blocks;
  plan.space_blocks = static_cast<int>(per_space_block.size());
  plan.seed = seed;
  plan.counts.reserve(static_cast<std::size_t>(time_blocks) * per_space_block.size());
  for (int i = 0; i < time_blocks; ++i) {
    plan.counts.insert(plan.counts.end(), per_space_block.begin(), per_space_block.end());
  }
  return plan;
}

DisorderField::DisorderField(LatticeConfig cfg, std::uint64_t seed, std::optional<BlockGrid> blocks)
    : cfg_(cfg), seed_(seed), blocks_(blocks) {
  cfg_.validate();
  occupancy_.assign(static_cast<std::size_t>(cfg_.m_t) * cfg_.m_x, 0);
  rebuild_index();
}

DisorderField DisorderField::from_events(LatticeConfig cfg, std::span<const Event> events,
                                         std::uint64_t seed, std::optional<BlockGrid> blocks) {
  DisorderField field(cfg, seed, blocks);
  for (const auto& [t, x] : events) {
    if (t < 0 || t >= cfg.m_t || x < 0 || x >= cfg.m_x) {
      throw InvalidSiteError("disorder event (" + std::to_string(t) + ", " + std::to_string(x) +
                             ") outside the lattice");
    }
    auto& cell = field.occupancy_[static_cast<std::size_t>(t) * cfg.m_x + x];
    if (cell) {
      throw InvalidSiteError("duplicate disorder event (" + std::to_string(t) + ", " +
                             std::to_string(x) + ")");
    }
    cell = 1;
  }
  field.rebuild_index();
  return field;
}

void DisorderField::rebuild_index() {
  positions_.clear();
  offsets_.assign(static_cast<std::size_t>(cfg_.m_t) + 1, 0);
  for (int t = 0; t < cfg_.m_t; ++t) {
    const auto row = slice(t);
    for (int x = 0; x < cfg_.m_x; ++x) {
      if (row[x]) positions_.push_back(x);
    }
    offsets_[t + 1] = positions_.size();
  }
}

std::span<const int> DisorderField::events_at(std::int64_t t_index) const {
  return {positions_.data() + offsets_[t_index], offsets_[t_index + 1] - offsets_[t_index]};
}

std::vector<DisorderField::Event> DisorderField::events() const {
  std::vector<Event> out;
  out.reserve(positions_.size());
  for (int t = 0; t < cfg_.m_t; ++t) {
    for (int x : events_at(t)) out.emplace_back(t, x);
  }
  return out;
}

bool operator==(const DisorderField& a, const DisorderField& b) {
  return a.cfg_ == b.cfg_ && a.seed_ == b.seed_ && a.blocks_ == b.blocks_ &&
         a.occupancy_ == b.occupancy_;
}

std::vector<double> PotentialProfile::total() const {
  std::vector<double> out(potential.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mass + potential[i];
  return out;
}

void PotentialProfile::validate() const {
  for (std::size_t i = 0; i < potential.size(); ++i) {
    // Tolerate rounding from the m/V split.
    if (mass + potential[i] < -1e-12 * std::max(1.0, std::abs(mass))) {
      throw InvalidProfileError("Vbar = m + V is negative at site " + std::to_string(i));
    }
  }
}

PotentialProfile PotentialProfile::from_total(double eps, std::vector<double> vbar) {
  PotentialProfile p;
  p.eps = eps;
  p.mass = vbar.empty() ? 0.0
                        : std::accumulate(vbar.begin(), vbar.end(), 0.0) /
                              static_cast<double>(vbar.size());
  p.potential.resize(vbar.size());
  p.density.resize(vbar.size());
  for (std::size_t i = 0; i < vbar.size(); ++i) {
    p.potential[i] = vbar[i] - p.mass;
    p.density[i] = vbar[i] / std::numbers::pi;
  }
  return p;
}

PotentialProfile PotentialProfile::homogeneous(double eps, int m_x, double mass) {
  return from_total(eps, std::vector<double>(static_cast<std::size_t>(m_x), mass));
}

namespace {

// Unbiased draw in [0, bound) (Lemire). Independent of the standard
// library's distribution implementations, so fields are bit-identical
// across toolchains.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  __extension__ using u128 = unsigned __int128;
  u128 product = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

void check_tiling(const DisorderPlan& plan, const LatticeConfig& cfg) {
  const auto& b = plan.blocks;
  if (b.n_t_block < 1 || b.n_x_block < 1) throw GeometryError("block sizes must be positive");
  if (static_cast<long long>(plan.time_blocks) * b.n_t_block != cfg.m_t ||
      static_cast<long long>(plan.space_blocks) * b.n_x_block != cfg.m_x) {
    throw GeometryError("plan blocks " + std::to_string(plan.time_blocks) + "x" +
                        std::to_string(b.n_t_block) + " by " + std::to_string(plan.space_blocks) +
                        "x" + std::to_string(b.n_x_block) + " do not tile lattice m_t=" +
                        std::to_string(cfg.m_t) + ", m_x=" + std::to_string(cfg.m_x));
  }
  if (plan.counts.size() != static_cast<std::size_t>(plan.time_blocks) * plan.space_blocks) {
    throw GeometryError("plan count table has the wrong size");
  }
}

}  // namespace

DisorderField synthesize_disorder(const DisorderPlan& plan, const LatticeConfig& cfg) {
  cfg.validate();
  check_tiling(plan, cfg);
  const int nt = plan.blocks.n_t_block;
  const int nx = plan.blocks.n_x_block;
  const int slots = nt * nx;
  for (int c : plan.counts) {
    if (c < 0 || c > slots) {
      throw InfeasiblePlanError("block count " + std::to_string(c) + " outside [0, " +
                                std::to_string(slots) + "]");
    }
  }

  std::mt19937_64 rng(plan.seed);
  std::vector<int> pool(static_cast<std::size_t>(slots));
  std::vector<DisorderField::Event> events;
  events.reserve(static_cast<std::size_t>(
      std::accumulate(plan.counts.begin(), plan.counts.end(), 0LL)));
  for (int i = 0; i < plan.time_blocks; ++i) {
    for (int j = 0; j < plan.space_blocks; ++j) {
      const int k = plan.count(i, j);
      std::iota(pool.begin(), pool.end(), 0);
      // Partial Fisher-Yates: the first k entries are a uniform k-subset.
      for (int s = 0; s < k; ++s) {
        const auto r = s + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(slots - s)));
        std::swap(pool[s], pool[r]);
        const int slot = pool[s];
        events.emplace_back(i * nt + slot / nx, j * nx + slot % nx);
      }
    }
  }
  return DisorderField::from_events(cfg, events, plan.seed, plan.blocks);
}

std::vector<int> block_counts(const DisorderField& field, BlockGrid blocks) {
  const auto& cfg = field.config();
  if (blocks.n_t_block < 1 || blocks.n_x_block < 1 || cfg.m_t % blocks.n_t_block != 0 ||
      cfg.m_x % blocks.n_x_block != 0) {
    throw GeometryError("block grid does not tile the field's lattice");
  }
  const int tb = cfg.m_t / blocks.n_t_block;
  const int sb = cfg.m_x / blocks.n_x_block;
  std::vector<int> counts(static_cast<std::size_t>(tb) * sb, 0);
  for (int t = 0; t < cfg.m_t; ++t) {
    const int i = t / blocks.n_t_block;
    for (int x : field.events_at(t)) {
      ++counts[static_cast<std::size_t>(i) * sb + x / blocks.n_x_block];
    }
  }
  return counts;
}

PotentialProfile coarse_grained_potential(const DisorderField& field, int interval_steps,
                                          int block_width) {
  const auto& cfg = field.config();
  if (interval_steps < 1 || interval_steps > cfg.m_t) {
    throw RangeError("empty or oversized analysis interval: " + std::to_string(interval_steps));
  }
  if (cfg.m_t % interval_steps != 0) {
    throw RangeError("interval_steps " + std::to_string(interval_steps) +
                     " does not divide m_t " + std::to_string(cfg.m_t));
  }
  if (block_width < 1 || cfg.m_x % block_width != 0) {
    throw GeometryError("block_width " + std::to_string(block_width) + " does not divide m_x");
  }
  const int intervals = cfg.m_t / interval_steps;
  const int space_blocks = cfg.m_x / block_width;
  const auto counts = block_counts(field, BlockGrid{interval_steps, block_width});

  const double dt = interval_steps * cfg.eps;
  std::vector<double> vbar(static_cast<std::size_t>(cfg.m_x));
  for (int j = 0; j < space_blocks; ++j) {
    long long total = 0;
    for (int i = 0; i < intervals; ++i) total += counts[static_cast<std::size_t>(i) * space_blocks + j];
    // <nhat> per site per interval, averaged over the analysed intervals.
    const double nhat = static_cast<double>(total) / (static_cast<double>(intervals) * block_width);
    const double v = std::numbers::pi * nhat / (2.0 * dt);
    std::fill_n(vbar.begin() + static_cast<std::ptrdiff_t>(j) * block_width, block_width, v);
  }
  return PotentialProfile::from_total(cfg.eps, std::move(vbar));
}

DisorderPlan plan_from_potential(const PotentialProfile& profile, const LatticeConfig& cfg,
                                 BlockGrid blocks, std::uint64_t seed) {
  cfg.validate();
  if (profile.potential.size() != static_cast<std::size_t>(cfg.m_x)) {
    throw DimensionError("profile has " + std::to_string(profile.potential.size()) +
                         " sites, lattice has " + std::to_string(cfg.m_x));
  }
  if (blocks.n_t_block < 1 || blocks.n_x_block < 1 || cfg.m_t % blocks.n_t_block != 0 ||
      cfg.m_x % blocks.n_x_block != 0) {
    throw GeometryError("block grid does not tile the lattice");
  }
  const auto vbar = profile.total();
  const double dt = blocks.n_t_block * cfg.eps;
  const int space_blocks = cfg.m_x / blocks.n_x_block;
  const int slots = blocks.n_t_block * blocks.n_x_block;
  std::vector<int> per_block(static_cast<std::size_t>(space_blocks));
  for (int j = 0; j < space_blocks; ++j) {
    double sum = 0.0;
    for (int s = 0; s < blocks.n_x_block; ++s) {
      const double v = vbar[static_cast<std::size_t>(j) * blocks.n_x_block + s];
      if (v < -1e-12) {
        throw InfeasiblePlanError("negative Vbar in block " + std::to_string(j));
      }
      sum += v;
    }
    const double mean_vbar = sum / blocks.n_x_block;
    const long n = std::lround(2.0 * dt * blocks.n_x_block * mean_vbar / std::numbers::pi);
    if (n > slots) {
      throw InfeasiblePlanError("block " + std::to_string(j) + " needs " + std::to_string(n) +
                                " events but has only " + std::to_string(slots) + " slots");
    }
    per_block[j] = static_cast<int>(std::max(0L, n));
  }
  return DisorderPlan::static_plan(blocks, cfg.m_t / blocks.n_t_block, std::move(per_block), seed);
}

DisorderPlan plan_from_relative_potential(std::span<const double> v_over_m, int mean_count,
                                          BlockGrid blocks, int time_blocks, std::uint64_t seed) {
  std::vector<int> per_block;
  per_block.reserve(v_over_m.size());
  const int slots = blocks.n_t_block * blocks.n_x_block;
  for (double v : v_over_m) {
    if (1.0 + v < 0.0) throw InfeasiblePlanError("V/m below -1 gives a negative event count");
    const long n = std::lround(mean_count * (1.0 + v));
    if (n > slots) throw InfeasiblePlanError("relative potential exceeds the block's slots");
    per_block.push_back(static_cast<int>(n));
  }
  return DisorderPlan::static_plan(blocks, time_blocks, std::move(per_block), seed);
}

void write_disorder(std::ostream& os, const DisorderField& field) {
  const auto& cfg = field.config();
  os << "# pca-disorder 1\n";
  os << "# eps " << text::format_double(cfg.eps) << '\n';
  os << "# m_x " << cfg.m_x << '\n';
  os << "# m_t " << cfg.m_t << '\n';
  os << "# seed " << field.seed() << '\n';
  if (const auto& b = field.blocks()) {
    os << "# blocks " << b->n_t_block << ' ' << b->n_x_block << '\n';
  }
  os << "# events " << field.event_count() << '\n';
  for (int t = 0; t < cfg.m_t; ++t) {
    for (int x : field.events_at(t)) os << t << ' ' << x << '\n';
  }
}

DisorderField read_disorder(std::istream& is) {
  LatticeConfig cfg{};
  bool have_eps = false, have_mx = false, have_mt = false, have_magic = false;
  std::uint64_t seed = 0;
  std::optional<BlockGrid> blocks;
  std::optional<std::size_t> declared;
  std::vector<DisorderField::Event> events;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto body = text::trim(line);
    if (body.empty()) continue;
    const auto fields = text::split(body, " \t");
    if (body.front() == '#') {
      if (fields.size() < 2) continue;
      const auto key = fields[1];
      auto need = [&](std::size_t n) {
        if (fields.size() < n) {
          throw ParseError("disorder header line " + std::to_string(lineno) + " is truncated");
        }
      };
      if (key == "pca-disorder") {
        have_magic = true;
      } else if (key == "eps") {
        need(3);
        cfg.eps = text::parse_double(fields[2]);
        have_eps = true;
      } else if (key == "m_x") {
        need(3);
        cfg.m_x = static_cast<int>(text::parse_int(fields[2]));
        have_mx = true;
      } else if (key == "m_t") {
        need(3);
        cfg.m_t = static_cast<int>(text::parse_int(fields[2]));
        have_mt = true;
      } else if (key == "seed") {
        need(3);
        seed = text::parse_uint(fields[2]);
      } else if (key == "blocks") {
        need(4);
        blocks = BlockGrid{static_cast<int>(text::parse_int(fields[2])),
                           static_cast<int>(text::parse_int(fields[3]))};
      } else if (key == "events") {
        need(3);
        declared = text::parse_uint(fields[2]);
      }
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError("disorder line " + std::to_string(lineno) + ": expected 't_index x_index'");
    }
    events.emplace_back(static_cast<int>(text::parse_int(fields[0])),
                        static_cast<int>(text::parse_int(fields[1])));
  }
  if (!have_magic || !have_eps || !have_mx || !have_mt) {
    throw ParseError("disorder file is missing its header (pca-disorder, eps, m_x, m_t)");
  }
  if (declared && *declared != events.size()) {
    throw ParseError("disorder file declares " + std::to_string(*declared) + " events but lists " +
                     std::to_string(events.size()));
  }
  return DisorderField::from_events(cfg, events, seed, blocks);
}

}  // namespace pca
