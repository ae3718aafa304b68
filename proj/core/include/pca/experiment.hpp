#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pca/disorder.hpp"
#include "pca/observables.hpp"
#include "pca/solvers.hpp"
#include "pca/waves.hpp"

namespace pca {

enum class InitialType { gaussian_schrodinger, delta_basis, custom_file };

/// Flat INI configuration with sections [lattice], [disorder], [initial],
/// [run] and [output]. Lengths are in the same unit as eps (default 1);
/// space-block indices are 1-based as in the configuration file.
struct ExperimentConfig {
  // [lattice]
  int m_x = 1000;
  int m_t = 10000;
  double eps = 1.0;

  // [disorder]
  int n_t_block = 100;
  int n_x_block = 100;
  std::vector<int> counts;      // per space block, same in every time block
  std::vector<double> v_over_m;  // alternative to counts, with mean_count
  int mean_count = 0;
  std::uint64_t seed = 1;
  std::string field_file;  // load this field instead of synthesizing one

  // [initial]
  InitialType initial = InitialType::gaussian_schrodinger;
  int region_first = 1;
  int region_last = 4;
  std::optional<double> x0;     // default: centre of the region
  std::optional<double> sigma;  // default: region length / 8
  double p0_over_m = 0.1;
  std::optional<double> p0;  // overrides p0_over_m
  BasisIndex basis{};
  std::string wave_file;

  // [run]
  std::vector<std::string> solvers = {"automaton", "dirac", "schrodinger"};
  std::int64_t steps = 0;       // 0: the whole field
  std::int64_t snapshot_every = 0;  // 0: n_t_block
  int coarse_width = 0;         // 0: n_x_block; 1 disables smoothing
  int threads = 1;
  bool trajectories = true;     // trajectory engine instead of wave stepping
  DiracMethod dirac_method = DiracMethod::automatic;
  int dirac_order = 4;
  std::vector<int> reflected;    // default: the initial region
  std::vector<int> transmitted;  // default: region_last + 2 ... last block - 1

  // [output]
  std::string directory = "out";
  bool coarse_snapshots = false;  // smooth the snapshot columns too

  [[nodiscard]] int space_blocks() const { return m_x / n_x_block; }
  [[nodiscard]] int time_blocks() const { return m_t / n_t_block; }
  [[nodiscard]] std::int64_t effective_steps() const { return steps > 0 ? steps : m_t; }
  [[nodiscard]] std::int64_t effective_snapshot_every() const {
    return snapshot_every > 0 ? snapshot_every : n_t_block;
  }
  [[nodiscard]] int effective_coarse_width() const { return coarse_width > 0 ? coarse_width : n_x_block; }
  [[nodiscard]] bool wants(const std::string& solver) const;
  [[nodiscard]] RegionLayout region_layout() const;
  [[nodiscard]] LatticeConfig lattice() const;
  [[nodiscard]] DisorderPlan plan() const;

  /// Throws ParseError / GeometryError / InfeasiblePlanError on inconsistent blocks.
  void validate() const;

  /// Throws ParseError on syntax errors, unknown keys or bad values.
  static ExperimentConfig parse(std::istream& is);
  static ExperimentConfig load(const std::filesystem::path& path);
  /// Echo in the same format; parse(write) reproduces the run exactly.
  /// The thread count is left out since it never changes results.
  void write(std::ostream& os) const;
};

/// Per-block event counts of a field with the implied mass and potential.
struct DisorderSummary {
  LatticeConfig cfg{};
  BlockGrid blocks{};
  int time_blocks = 0;
  int space_blocks = 0;
  std::vector<int> counts;  // row-major (time block, space block)
  std::size_t events = 0;
  double mass = 0;          // m
  double eps_m = 0;         // eps m
  double dt_m = 0;          // Dt m with Dt = n_t_block eps
  std::vector<double> mean_counts;  // per space block, averaged over time blocks
  std::vector<double> v_over_m;     // per space block; empty when m = 0
};

[[nodiscard]] DisorderSummary summarize_disorder(const DisorderField& field, BlockGrid blocks);
void write_summary(std::ostream& os, const DisorderSummary& s);

/// Builds the disorder field of a configuration (synthesized or loaded).
[[nodiscard]] DisorderField make_field(const ExperimentConfig& cfg);

struct Snapshot {
  std::int64_t t_index = 0;
  std::vector<double> p_auto;
  std::vector<double> p_dirac;
  std::vector<double> p_schrod;
  std::vector<double> p_free;
};

struct LabelledComparison {
  std::string label;  // e.g. "automaton-dirac"
  ComparisonReport report;
};

struct RunReport {
  std::string config_echo;
  std::uint64_t seed = 0;
  DisorderSummary disorder;
  std::size_t trajectories = 0;
  double momentum_ratio = 0;
  double spectral_tail = 0;
  std::vector<Snapshot> snapshots;  // raw distributions
  std::vector<LabelledComparison> comparisons;  // on coarse-grained distributions
  std::vector<std::string> warnings;

  double automaton_seconds = 0;
  double reference_seconds = 0;
  double total_seconds = 0;
  double steps_per_second = 0;

  /// Comparison with the given label at t_index, if present.
  [[nodiscard]] const ComparisonReport* find(const std::string& label, std::int64_t t_index) const;
};

/// Runs the configured experiment. With write_files, the output directory
/// receives snapshots.csv, comparisons.csv, report.txt, timing.txt and
/// disorder.txt. Everything except timing.txt is bit-identical for equal
/// configurations, whatever the thread count.
[[nodiscard]] RunReport run_experiment(const ExperimentConfig& cfg, bool write_files = true);

/// Deterministic key-value report (no timings).
void write_run_report(std::ostream& os, const RunReport& report);
void write_timing(std::ostream& os, const RunReport& report, int threads);

}  // namespace pca
