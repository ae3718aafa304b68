#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "pca/automaton.hpp"
#include "pca/errors.hpp"
#include "pca/experiment.hpp"
#include "pca/observables.hpp"
#include "pca/text_format.hpp"

namespace fs = std::filesystem;

namespace {

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 1;
  std::optional<std::int64_t> snapshot_every;
};

pca::ExperimentConfig load_config(const Common& c) {
  auto cfg = pca::ExperimentConfig::load(c.config);
  if (c.seed) cfg.seed = *c.seed;
  if (!c.out.empty()) cfg.directory = c.out;
  cfg.threads = c.threads;
  if (c.snapshot_every) cfg.snapshot_every = *c.snapshot_every;
  return cfg;
}

int generate_disorder(const Common& c) {
  const auto cfg = load_config(c);
  cfg.validate();
  const auto field = pca::make_field(cfg);
  fs::create_directories(cfg.directory);
  const auto path = fs::path(cfg.directory) / "disorder.txt";
  std::ofstream os(path);
  if (!os) throw pca::Error("cannot write " + path.string());
  pca::write_disorder(os, field);
  os.close();
  std::cout << "file " << path.string() << '\n';
  pca::write_summary(std::cout, pca::summarize_disorder(field, {cfg.n_t_block, cfg.n_x_block}));
  return 0;
}

int inspect(const Common& c, const std::string& file, const std::vector<int>& blocks) {
  std::optional<pca::DisorderField> field;
  pca::BlockGrid grid{};
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw pca::Error("cannot open " + file);
    field = pca::read_disorder(in);
    if (field->blocks()) grid = *field->blocks();
    else grid = {field->config().m_t, field->config().m_x};
  } else if (!c.config.empty()) {
    const auto cfg = load_config(c);
    cfg.validate();
    field = pca::make_field(cfg);
    grid = {cfg.n_t_block, cfg.n_x_block};
  } else {
    throw pca::Error("inspect needs a disorder file or --config");
  }
  if (blocks.size() == 2) grid = {blocks[0], blocks[1]};
  pca::write_summary(std::cout, pca::summarize_disorder(*field, grid));
  return 0;
}

int run(const Common& c) {
  const auto cfg = load_config(c);
  const auto report = pca::run_experiment(cfg, true);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "output " << cfg.directory << '\n';
  std::cout << "snapshots " << report.snapshots.size() << '\n';
  std::cout << "trajectories " << report.trajectories << '\n';
  std::cout << "automaton_seconds " << pca::text::format_double(report.automaton_seconds) << '\n';
  std::cout << "steps_per_second " << pca::text::format_double(report.steps_per_second) << '\n';
  const auto last = report.snapshots.empty() ? 0 : report.snapshots.back().t_index;
  for (const auto* label : {"automaton-dirac", "automaton-schrodinger", "dirac-schrodinger", "automaton-free"}) {
    if (const auto* r = report.find(label, last)) {
      std::cout << label << ".l1 " << pca::text::format_double(r->l1) << '\n';
      std::cout << label << ".transmitted_a " << pca::text::format_double(r->transmitted_a) << '\n';
    }
  }
  return 0;
}

pca::OccupationDistribution wave_distribution(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw pca::Error("cannot open " + file);
  return pca::occupation_probabilities(pca::read_wave_snapshot(in));
}

int compare(const std::vector<std::string>& files, const std::string& snapshots, int width, int regions) {
  const auto kernel = width > 1 ? pca::SmoothingKernel::triangular(width) : pca::SmoothingKernel::delta();
  pca::RegionLayout layout;
  layout.regions = regions;
  layout.transmitted.clear();
  layout.reflected.clear();
  if (!snapshots.empty()) {
    std::ifstream in(snapshots);
    if (!in) throw pca::Error("cannot open " + snapshots);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    for (auto h : pca::text::split(line, ",")) header.emplace_back(h);
    if (header.size() < 5 || header[0] != "t_index" || header[1] != "x_index") {
      throw pca::ParseError(snapshots + " is not a snapshot table");
    }
    std::map<std::int64_t, std::vector<std::vector<double>>> columns;
    const std::size_t value_columns = header.size() - 2;
    while (std::getline(in, line)) {
      const auto f = pca::text::split(line, ",");
      if (f.size() != header.size()) throw pca::ParseError("snapshot row has the wrong number of columns");
      auto& cols = columns[pca::text::parse_int(f[0])];
      cols.resize(value_columns);
      for (std::size_t k = 0; k < value_columns; ++k) {
        cols[k].push_back(f[k + 2] == "nan" ? std::numeric_limits<double>::quiet_NaN() : pca::text::parse_double(f[k + 2]));
      }
    }
    pca::write_report_csv_header(std::cout, regions);
    for (const auto& [t, cols] : columns) {
      for (std::size_t b = 1; b < value_columns; ++b) {
        if (cols[0].empty() || std::isnan(cols[0][0]) || std::isnan(cols[b][0])) continue;
        const auto a = pca::coarse_grain({t, cols[0]}, kernel);
        const auto o = pca::coarse_grain({t, cols[b]}, kernel);
        const std::string label = header[2] + "-" + header[b + 2];
        pca::write_report_csv_row(std::cout, label, pca::compare_distributions(a, o, layout));
      }
    }
    return 0;
  }
  if (files.size() != 2) throw pca::Error("compare needs two wave snapshot files or --snapshots");
  const auto a = pca::coarse_grain(wave_distribution(files[0]), kernel);
  const auto b = pca::coarse_grain(wave_distribution(files[1]), kernel);
  pca::write_report_kv(std::cout, pca::compare_distributions(a, b, layout));
  return 0;
}

void add_common(CLI::App* app, Common& c, bool config_required) {
  auto* opt = app->add_option("--config", c.config, "Experiment configuration (INI)");
  if (config_required) opt->required();
  opt->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "Override the disorder seed");
  app->add_option("--out", c.out, "Output directory");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--snapshot-every", c.snapshot_every, "Snapshot cadence in time steps")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic cellular automaton for quantum particles in a potential"};
  app.require_subcommand(1);

  Common common;
  auto* gen = app.add_subcommand("generate-disorder", "Synthesize the disorder field of a configuration");
  add_common(gen, common, true);

  std::string field_file;
  std::vector<int> blocks;
  auto* insp = app.add_subcommand("inspect", "Summarize a disorder field (per-block counts, eps m, V/m)");
  add_common(insp, common, false);
  insp->add_option("field", field_file, "Disorder file")->check(CLI::ExistingFile);
  insp->add_option("--blocks", blocks, "Block grid N_t N_x")->expected(2);

  auto* runc = app.add_subcommand("run", "Run an experiment and write snapshots and reports");
  add_common(runc, common, true);

  std::vector<std::string> files;
  std::string snapshots;
  int width = 1;
  int regions = 10;
  auto* cmp = app.add_subcommand("compare", "Compare occupation distributions");
  cmp->add_option("files", files, "Two wave snapshot files")->check(CLI::ExistingFile);
  cmp->add_option("--snapshots", snapshots, "snapshots.csv from a run")->check(CLI::ExistingFile);
  cmp->add_option("--coarse-width", width, "Triangular kernel width in sites")->check(CLI::PositiveNumber);
  cmp->add_option("--regions", regions, "Number of equal regions")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return generate_disorder(common);
    if (*insp) return inspect(common, field_file, blocks);
    if (*runc) return run(common);
    if (*cmp) return compare(files, snapshots, width, regions);
  } catch (const pca::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
