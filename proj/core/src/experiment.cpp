#include "pca/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "pca/automaton.hpp"
#include "pca/errors.hpp"
#include "pca/text_format.hpp"

namespace pca {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"lattice", {"m_x", "m_t", "eps"}},
      {"disorder", {"n_t_block", "n_x_block", "counts", "v_over_m", "mean_count", "seed", "file"}},
      {"initial", {"type", "region", "x0", "sigma", "p0_over_m", "p0", "basis", "file"}},
      {"run",
       {"solvers", "steps", "snapshot_every", "coarse_width", "threads", "trajectories", "dirac_method",
        "dirac_order", "reflected", "transmitted"}},
      {"output", {"directory", "coarse_snapshots"}},
  };
  return keys;
}

std::string_view initial_name(InitialType t) {
  switch (t) {
    case InitialType::gaussian_schrodinger: return "gaussian-schrodinger";
    case InitialType::delta_basis: return "delta-basis";
    case InitialType::custom_file: return "custom-file";
  }
  return "?";
}

std::string_view dirac_name(DiracMethod m) {
  switch (m) {
    case DiracMethod::automatic: return "auto";
    case DiracMethod::dense: return "dense";
    case DiracMethod::split_step: return "split-step";
  }
  return "?";
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    if constexpr (std::is_same_v<T, double>) {
      out += text::format_double(v[i]);
    } else if constexpr (std::is_same_v<T, std::string>) {
      out += v[i];
    } else {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) { return text::split(s, " \t,"); }

std::vector<int> int_list(std::string_view s) {
  std::vector<int> out;
  for (auto w : words(s)) out.push_back(static_cast<int>(text::parse_int(w)));
  return out;
}

std::vector<double> double_list(std::string_view s) {
  std::vector<double> out;
  for (auto w : words(s)) out.push_back(text::parse_double(w));
  return out;
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return false;
  throw ParseError("expected a boolean, got '" + std::string(s) + "'");
}

std::string basis_text(const BasisIndex& b) {
  return std::string(b.gamma == Mover::right ? "R" : "L") + ' ' + (b.eta == Charge::plus ? "+" : "-") + ' ' +
         std::to_string(b.x_index);
}

BasisIndex parse_basis(std::string_view s) {
  const auto w = words(s);
  if (w.size() != 3) throw ParseError("basis must read 'R|L +|- x_index'");
  BasisIndex b;
  if (w[0] == "R") b.gamma = Mover::right;
  else if (w[0] == "L") b.gamma = Mover::left;
  else throw ParseError("basis gamma must be R or L");
  if (w[1] == "+") b.eta = Charge::plus;
  else if (w[1] == "-") b.eta = Charge::minus;
  else throw ParseError("basis eta must be + or -");
  b.x_index = static_cast<int>(text::parse_int(w[2]));
  return b;
}

pt::ptree to_ptree(const ExperimentConfig& c) {
  pt::ptree t;
  t.put("lattice.m_x", c.m_x);
  t.put("lattice.m_t", c.m_t);
  t.put("lattice.eps", text::format_double(c.eps));
  t.put("disorder.n_t_block", c.n_t_block);
  t.put("disorder.n_x_block", c.n_x_block);
  if (!c.counts.empty()) t.put("disorder.counts", join(c.counts));
  if (!c.v_over_m.empty()) {
    t.put("disorder.v_over_m", join(c.v_over_m));
    t.put("disorder.mean_count", c.mean_count);
  }
  t.put("disorder.seed", c.seed);
  if (!c.field_file.empty()) t.put("disorder.file", c.field_file);
  t.put("initial.type", std::string(initial_name(c.initial)));
  switch (c.initial) {
    case InitialType::gaussian_schrodinger:
      t.put("initial.region", std::to_string(c.region_first) + ' ' + std::to_string(c.region_last));
      if (c.x0) t.put("initial.x0", text::format_double(*c.x0));
      if (c.sigma) t.put("initial.sigma", text::format_double(*c.sigma));
      if (c.p0) t.put("initial.p0", text::format_double(*c.p0));
      else t.put("initial.p0_over_m", text::format_double(c.p0_over_m));
      break;
    case InitialType::delta_basis: t.put("initial.basis", basis_text(c.basis)); break;
    case InitialType::custom_file: t.put("initial.file", c.wave_file); break;
  }
  t.put("run.solvers", join(c.solvers));
  if (c.steps > 0) t.put("run.steps", c.steps);
  if (c.snapshot_every > 0) t.put("run.snapshot_every", c.snapshot_every);
  if (c.coarse_width > 0) t.put("run.coarse_width", c.coarse_width);
  t.put("run.trajectories", c.trajectories ? "true" : "false");
  t.put("run.dirac_method", std::string(dirac_name(c.dirac_method)));
  t.put("run.dirac_order", c.dirac_order);
  if (!c.reflected.empty()) t.put("run.reflected", join(c.reflected));
  if (!c.transmitted.empty()) t.put("run.transmitted", join(c.transmitted));
  t.put("output.directory", c.directory);
  t.put("output.coarse_snapshots", c.coarse_snapshots ? "true" : "false");
  return t;
}

}  // namespace

bool ExperimentConfig::wants(const std::string& solver) const {
  return std::find(solvers.begin(), solvers.end(), solver) != solvers.end();
}

LatticeConfig ExperimentConfig::lattice() const { return make_lattice(eps, m_x, m_t); }

RegionLayout ExperimentConfig::region_layout() const {
  RegionLayout layout;
  layout.regions = space_blocks();
  auto zero_based = [](const std::vector<int>& v) {
    std::vector<int> out;
    for (int j : v) out.push_back(j - 1);
    return out;
  };
  if (!reflected.empty()) {
    layout.reflected = zero_based(reflected);
  } else {
    layout.reflected.clear();
    for (int j = region_first; j <= region_last; ++j) layout.reflected.push_back(j - 1);
  }
  if (!transmitted.empty()) {
    layout.transmitted = zero_based(transmitted);
  } else {
    layout.transmitted.clear();
    for (int j = region_last + 2; j <= space_blocks() - 1; ++j) layout.transmitted.push_back(j - 1);
  }
  std::erase_if(layout.reflected, [&](int j) { return j < 0 || j >= layout.regions; });
  std::erase_if(layout.transmitted, [&](int j) { return j < 0 || j >= layout.regions; });
  return layout;
}

DisorderPlan ExperimentConfig::plan() const {
  const BlockGrid blocks{n_t_block, n_x_block};
  if (!v_over_m.empty()) {
    return plan_from_relative_potential(v_over_m, mean_count, blocks, time_blocks(), seed);
  }
  std::vector<int> per_block = counts.empty() ? std::vector<int>(static_cast<std::size_t>(space_blocks()), 0) : counts;
  return DisorderPlan::static_plan(blocks, time_blocks(), std::move(per_block), seed);
}

void ExperimentConfig::validate() const {
  lattice().validate();
  if (n_t_block < 1 || n_x_block < 1 || m_t % n_t_block != 0 || m_x % n_x_block != 0) {
    throw GeometryError("disorder blocks " + std::to_string(n_t_block) + "x" + std::to_string(n_x_block) +
                        " do not tile the " + std::to_string(m_t) + "x" + std::to_string(m_x) + " lattice");
  }
  if (!counts.empty() && !v_over_m.empty()) throw ParseError("give either counts or v_over_m, not both");
  if (!counts.empty() && static_cast<int>(counts.size()) != space_blocks()) {
    throw GeometryError("counts lists " + std::to_string(counts.size()) + " blocks, lattice has " +
                        std::to_string(space_blocks()));
  }
  if (!v_over_m.empty()) {
    if (static_cast<int>(v_over_m.size()) != space_blocks()) {
      throw GeometryError("v_over_m lists " + std::to_string(v_over_m.size()) + " blocks, lattice has " +
                          std::to_string(space_blocks()));
    }
    if (mean_count < 1) throw ParseError("v_over_m needs mean_count >= 1");
  }
  for (int c : counts) {
    if (c < 0) throw InfeasiblePlanError("negative event count");
    if (static_cast<long long>(c) > static_cast<long long>(n_t_block) * n_x_block) {
      throw InfeasiblePlanError("count " + std::to_string(c) + " exceeds the " +
                                std::to_string(n_t_block * n_x_block) + " slots of a block");
    }
  }
  if (effective_steps() > m_t) throw RangeError("run.steps exceeds the lattice time range");
  if (effective_snapshot_every() < 1) throw RangeError("snapshot cadence must be positive");
  if (effective_coarse_width() > m_x) throw RangeError("coarse_width exceeds m_x");
  if (dirac_order != 2 && dirac_order != 4) throw ParseError("dirac_order must be 2 or 4");
  if (threads < 1) throw ParseError("threads must be at least 1");
  for (const auto& s : solvers) {
    if (s != "automaton" && s != "dirac" && s != "schrodinger" && s != "free-translation") {
      throw ParseError("unknown solver '" + s + "'");
    }
  }
  switch (initial) {
    case InitialType::gaussian_schrodinger: {
      if (region_first < 1 || region_last < region_first || region_last > space_blocks()) {
        throw GeometryError("initial region " + std::to_string(region_first) + ".." +
                            std::to_string(region_last) + " does not fit the " +
                            std::to_string(space_blocks()) + " space blocks");
      }
      const double len = 2.0 * eps * n_x_block * (region_last - region_first + 1);
      if (sigma && (!(*sigma > 0.0) || *sigma > len)) throw GeometryError("packet width does not fit its region");
      if (x0 && (*x0 < 0.0 || *x0 >= 2.0 * eps * m_x)) throw GeometryError("packet centre lies off the circle");
      break;
    }
    case InitialType::delta_basis:
      if (basis.x_index < 0 || basis.x_index >= m_x) throw GeometryError("basis x_index off the lattice");
      break;
    case InitialType::custom_file:
      if (wave_file.empty()) throw ParseError("custom-file initial state needs initial.file");
      break;
  }
}

ExperimentConfig ExperimentConfig::parse(std::istream& is) {
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) throw ParseError("config: unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) throw ParseError("config: unknown key '" + key + "' in [" + section + "]");
    }
  }
  ExperimentConfig c;
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(path)) return std::string(text::trim(*v));
    return std::nullopt;
  };
  try {
    if (auto v = get("lattice.m_x")) c.m_x = static_cast<int>(text::parse_int(*v));
    if (auto v = get("lattice.m_t")) c.m_t = static_cast<int>(text::parse_int(*v));
    if (auto v = get("lattice.eps")) c.eps = text::parse_double(*v);
    if (auto v = get("disorder.n_t_block")) c.n_t_block = static_cast<int>(text::parse_int(*v));
    if (auto v = get("disorder.n_x_block")) c.n_x_block = static_cast<int>(text::parse_int(*v));
    if (auto v = get("disorder.counts")) c.counts = int_list(*v);
    if (auto v = get("disorder.v_over_m")) c.v_over_m = double_list(*v);
    if (auto v = get("disorder.mean_count")) c.mean_count = static_cast<int>(text::parse_int(*v));
    if (auto v = get("disorder.seed")) c.seed = text::parse_uint(*v);
    if (auto v = get("disorder.file")) c.field_file = *v;
    if (auto v = get("initial.type")) {
      if (*v == "gaussian-schrodinger") c.initial = InitialType::gaussian_schrodinger;
      else if (*v == "delta-basis") c.initial = InitialType::delta_basis;
      else if (*v == "custom-file") c.initial = InitialType::custom_file;
      else throw ParseError("unknown initial.type '" + *v + "'");
    }
    if (auto v = get("initial.region")) {
      const auto r = int_list(*v);
      if (r.size() != 2) throw ParseError("initial.region must list first and last block");
      c.region_first = r[0];
      c.region_last = r[1];
    }
    if (auto v = get("initial.x0")) c.x0 = text::parse_double(*v);
    if (auto v = get("initial.sigma")) c.sigma = text::parse_double(*v);
    if (auto v = get("initial.p0_over_m")) c.p0_over_m = text::parse_double(*v);
    if (auto v = get("initial.p0")) c.p0 = text::parse_double(*v);
    if (auto v = get("initial.basis")) c.basis = parse_basis(*v);
    if (auto v = get("initial.file")) c.wave_file = *v;
    if (auto v = get("run.solvers")) {
      c.solvers.clear();
      for (auto w : words(*v)) c.solvers.emplace_back(w);
    }
    if (auto v = get("run.steps")) c.steps = text::parse_int(*v);
    if (auto v = get("run.snapshot_every")) c.snapshot_every = text::parse_int(*v);
    if (auto v = get("run.coarse_width")) c.coarse_width = static_cast<int>(text::parse_int(*v));
    if (auto v = get("run.threads")) c.threads = static_cast<int>(text::parse_int(*v));
    if (auto v = get("run.trajectories")) c.trajectories = parse_bool(*v);
    if (auto v = get("run.dirac_method")) {
      if (*v == "auto") c.dirac_method = DiracMethod::automatic;
      else if (*v == "dense") c.dirac_method = DiracMethod::dense;
      else if (*v == "split-step") c.dirac_method = DiracMethod::split_step;
      else throw ParseError("unknown run.dirac_method '" + *v + "'");
    }
    if (auto v = get("run.dirac_order")) c.dirac_order = static_cast<int>(text::parse_int(*v));
    if (auto v = get("run.reflected")) c.reflected = int_list(*v);
    if (auto v = get("run.transmitted")) c.transmitted = int_list(*v);
    if (auto v = get("output.directory")) c.directory = *v;
    if (auto v = get("output.coarse_snapshots")) c.coarse_snapshots = parse_bool(*v);
  } catch (const ParseError& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  auto c = parse(in);
  // relative file references resolve against the config's directory
  auto resolve = [&](std::string& f) {
    if (!f.empty() && std::filesystem::path(f).is_relative()) f = (path.parent_path() / f).string();
  };
  resolve(c.field_file);
  resolve(c.wave_file);
  return c;
}

void ExperimentConfig::write(std::ostream& os) const { pt::write_ini(os, to_ptree(*this)); }

DisorderSummary summarize_disorder(const DisorderField& field, BlockGrid blocks) {
  const auto& cfg = field.config();
  if (blocks.n_t_block < 1 || blocks.n_x_block < 1 || cfg.m_t % blocks.n_t_block != 0 ||
      cfg.m_x % blocks.n_x_block != 0) {
    throw GeometryError("block grid does not tile the lattice");
  }
  DisorderSummary s;
  s.cfg = cfg;
  s.blocks = blocks;
  s.time_blocks = cfg.m_t / blocks.n_t_block;
  s.space_blocks = cfg.m_x / blocks.n_x_block;
  s.counts = block_counts(field, blocks);
  s.events = field.event_count();
  const double dt = blocks.n_t_block * cfg.eps;
  const double nhat = static_cast<double>(s.events) / (static_cast<double>(s.time_blocks) * cfg.m_x);
  s.mass = std::numbers::pi * nhat / (2.0 * dt);
  s.eps_m = cfg.eps * s.mass;
  s.dt_m = dt * s.mass;
  s.mean_counts.assign(static_cast<std::size_t>(s.space_blocks), 0.0);
  for (int i = 0; i < s.time_blocks; ++i) {
    for (int j = 0; j < s.space_blocks; ++j) {
      s.mean_counts[static_cast<std::size_t>(j)] += s.counts[static_cast<std::size_t>(i) * s.space_blocks + j];
    }
  }
  for (auto& v : s.mean_counts) v /= s.time_blocks;
  if (s.events > 0) {
    const double mean = nhat * blocks.n_x_block;
    for (double c : s.mean_counts) s.v_over_m.push_back(c / mean - 1.0);
  }
  return s;
}

void write_summary(std::ostream& os, const DisorderSummary& s) {
  using text::format_double;
  os << "m_x " << s.cfg.m_x << '\n';
  os << "m_t " << s.cfg.m_t << '\n';
  os << "eps " << format_double(s.cfg.eps) << '\n';
  os << "n_t_block " << s.blocks.n_t_block << '\n';
  os << "n_x_block " << s.blocks.n_x_block << '\n';
  os << "time_blocks " << s.time_blocks << '\n';
  os << "space_blocks " << s.space_blocks << '\n';
  os << "events " << s.events << '\n';
  os << "mass " << format_double(s.mass) << '\n';
  os << "eps_m " << format_double(s.eps_m) << '\n';
  os << "eps_m_over_pi " << format_double(s.eps_m / std::numbers::pi) << '\n';
  os << "dt_m " << format_double(s.dt_m) << '\n';
  os << "dt_m_over_pi " << format_double(s.dt_m / std::numbers::pi) << '\n';
  bool uniform_in_time = true;
  for (int i = 1; i < s.time_blocks && uniform_in_time; ++i) {
    for (int j = 0; j < s.space_blocks; ++j) {
      if (s.counts[static_cast<std::size_t>(i) * s.space_blocks + j] != s.counts[static_cast<std::size_t>(j)]) {
        uniform_in_time = false;
        break;
      }
    }
  }
  os << "static " << (uniform_in_time ? "true" : "false") << '\n';
  os << "block mean_count v_over_m\n";
  for (int j = 0; j < s.space_blocks; ++j) {
    os << j + 1 << ' ' << format_double(s.mean_counts[static_cast<std::size_t>(j)]) << ' '
       << (s.v_over_m.empty() ? std::string("nan") : format_double(s.v_over_m[static_cast<std::size_t>(j)]))
       << '\n';
  }
}

DisorderField make_field(const ExperimentConfig& cfg) {
  if (!cfg.field_file.empty()) {
    std::ifstream in(cfg.field_file);
    if (!in) throw Error("cannot open disorder file " + cfg.field_file);
    auto field = read_disorder(in);
    if (field.config().m_x != cfg.m_x || field.config().m_t != cfg.m_t) {
      throw GeometryError("disorder file lattice differs from the configured lattice");
    }
    return field;
  }
  return synthesize_disorder(cfg.plan(), cfg.lattice());
}

const ComparisonReport* RunReport::find(const std::string& label, std::int64_t t_index) const {
  for (const auto& c : comparisons) {
    if (c.label == label && c.report.t_index == t_index) return &c.report;
  }
  return nullptr;
}

namespace {

/// Exact free motion of every basis amplitude from its initial slice.
RealWave free_translation(const RealWave& q0, std::int64_t steps) {
  const auto& cfg = q0.config();
  const int m = cfg.m_x;
  const std::int64_t t0 = q0.t_index();
  const std::int64_t t1 = t0 + steps;
  RealWave out(cfg, t1);
  for (std::size_t s = 0; s < q0.size(); ++s) {
    auto b = basis_of(s, m);
    const std::int64_t units = 2LL * b.x_index + parity(t0) + (b.gamma == Mover::right ? steps : -steps);
    std::int64_t k = (units - parity(t1)) / 2 % m;
    if (k < 0) k += m;
    b.x_index = static_cast<int>(k);
    out.at(b) = q0[s];
  }
  return out;
}

std::vector<double> maybe_smooth(const std::vector<double>& p, std::int64_t t, const SmoothingKernel& k, bool on) {
  if (!on || p.empty()) return p;
  return coarse_grain(OccupationDistribution{t, p}, k).p;
}

std::string cell(const std::vector<double>& v, std::size_t x) {
  return v.empty() ? std::string("nan") : text::format_double(v[x]);
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& cfg, bool write_files) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();
  cfg.validate();

  RunReport report;
  {
    std::ostringstream echo;
    cfg.write(echo);
    report.config_echo = echo.str();
  }
  report.seed = cfg.seed;
  const auto field = make_field(cfg);
  const BlockGrid blocks{cfg.n_t_block, cfg.n_x_block};
  report.disorder = summarize_disorder(field, blocks);
  const auto lat = field.config();
  const PotentialProfile profile = coarse_grained_potential(field, cfg.n_t_block, cfg.n_x_block);

  // Initial state: chi -> phi -> q, the single path shared by all solvers.
  RealWave q0;
  ComplexWave phi0;
  std::optional<SchrodingerWave> chi0;
  SolverDiagnostics diag;
  switch (cfg.initial) {
    case InitialType::gaussian_schrodinger: {
      if (!(profile.mass > 0.0)) {
        throw InvalidProfileError("gaussian-schrodinger initial state needs a field with mass m > 0");
      }
      const int x_begin = (cfg.region_first - 1) * cfg.n_x_block;
      const int x_end = cfg.region_last * cfg.n_x_block;
      const double len = 2.0 * cfg.eps * (x_end - x_begin);
      const double x0 = cfg.x0.value_or(2.0 * cfg.eps * x_begin + 0.5 * len);
      const double sigma = cfg.sigma.value_or(len / 8.0);
      const double p0 = cfg.p0.value_or(cfg.p0_over_m * profile.mass);
      chi0 = gaussian_packet(lat, 0, x0, sigma, p0, x_begin, x_end);
      phi0 = nonrel_embed(*chi0, profile.mass, &diag);
      q0 = encode_wave(phi0);
      break;
    }
    case InitialType::delta_basis:
      q0 = RealWave::delta(lat, 0, cfg.basis);
      phi0 = decode_wave(q0);
      break;
    case InitialType::custom_file: {
      std::ifstream in(cfg.wave_file);
      if (!in) throw Error("cannot open wave file " + cfg.wave_file);
      const auto loaded = read_wave_snapshot(in);
      if (loaded.config().m_x != lat.m_x) throw GeometryError("wave file lattice differs from the configured lattice");
      q0 = RealWave(lat, loaded.t_index());
      std::copy(loaded.values().begin(), loaded.values().end(), q0.values().begin());
      phi0 = decode_wave(q0);
      break;
    }
  }
  if (q0.t_index() != 0) throw RangeError("initial wave must sit on slice 0");
  if (cfg.wants("schrodinger") && !chi0) {
    throw ParseError("the schrodinger solver needs a gaussian-schrodinger initial state");
  }
  if (cfg.wants("free-translation") && field.event_count() > 0) {
    diag.warnings.push_back("free-translation reference used on a field with scattering events");
  }
  report.momentum_ratio = diag.momentum_ratio;
  {
    const Fft fft(lat.m_x);
    report.spectral_tail = std::max(spectral_tail(fft, phi0.component(Mover::right)),
                                    spectral_tail(fft, phi0.component(Mover::left)));
    if (cfg.wants("dirac") && report.spectral_tail > kSmoothnessThreshold) {
      diag.warnings.push_back("initial wave is not smooth: spectral tail " +
                              text::format_double(report.spectral_tail));
    }
  }

  std::vector<std::int64_t> times;
  const auto total_steps = cfg.effective_steps();
  for (std::int64_t t = 0; t < total_steps; t += cfg.effective_snapshot_every()) times.push_back(t);
  times.push_back(total_steps);

  const bool want_auto = cfg.wants("automaton");
  const bool want_dirac = cfg.wants("dirac");
  const bool want_schrod = cfg.wants("schrodinger");
  const bool want_free = cfg.wants("free-translation");

  // Automaton
  std::vector<std::vector<double>> p_auto(times.size());
  if (want_auto) {
    const auto a0 = clock::now();
    if (cfg.trajectories) {
      auto state = TrajectoryState::start(q0);
      report.trajectories = state.size();
      std::int64_t now = 0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        state = evolve_trajectories(std::move(state), field, times[k] - now, cfg.threads);
        now = times[k];
        p_auto[k] = occupation_probabilities(wave_from_trajectories(state, q0)).p;
      }
    } else {
      RealWave q = q0;
      report.trajectories = q.size();
      for (std::size_t k = 0; k < times.size(); ++k) {
        q = evolve_wave(std::move(q), field, times[k] - q.t_index());
        p_auto[k] = occupation_probabilities(q).p;
      }
    }
    report.automaton_seconds = std::chrono::duration<double>(clock::now() - a0).count();
    report.steps_per_second =
        report.automaton_seconds > 0 ? static_cast<double>(total_steps) / report.automaton_seconds : 0.0;
  }

  const auto r0 = clock::now();
  std::vector<std::vector<double>> p_dirac(times.size()), p_schrod(times.size()), p_free(times.size());
  if (want_dirac) {
    auto method = cfg.dirac_method;
    if (method == DiracMethod::automatic) method = lat.m_x <= 256 ? DiracMethod::dense : DiracMethod::split_step;
    const double n0 = phi0.norm_squared();
    auto record = [&](std::size_t k, const ComplexWave& phi) {
      const double err = std::abs(phi.norm_squared() - n0);
      if (err > kUnitarityTolerance) throw NumericalError("Dirac solver lost unitarity over the run");
      p_dirac[k] = occupation_probabilities(phi).p;
    };
    if (method == DiracMethod::dense) {
      const DenseDiracPropagator prop(profile);
      for (std::size_t k = 0; k < times.size(); ++k) record(k, prop.evolve(phi0, times[k] * lat.eps));
    } else {
      const SplitStepDirac prop(profile, cfg.dirac_order);
      ComplexWave phi = phi0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        phi = prop.evolve(phi, (times[k] - phi.t_index) * lat.eps);
        record(k, phi);
      }
    }
  }
  if (want_schrod) {
    const SchrodingerPropagator prop(profile);
    const double n0 = chi0->norm_squared();
    for (std::size_t k = 0; k < times.size(); ++k) {
      const auto chi = prop.evolve(*chi0, times[k] * lat.eps);
      if (std::abs(chi.norm_squared() - n0) > kUnitarityTolerance) {
        throw NumericalError("Schrodinger solver lost unitarity over the run");
      }
      p_schrod[k] = occupation_probabilities(chi).p;
    }
  }
  if (want_free) {
    for (std::size_t k = 0; k < times.size(); ++k) p_free[k] = occupation_probabilities(free_translation(q0, times[k])).p;
  }
  report.reference_seconds = std::chrono::duration<double>(clock::now() - r0).count();

  const int width = cfg.effective_coarse_width();
  const SmoothingKernel kernel = width > 1 ? SmoothingKernel::triangular(width) : SmoothingKernel::delta();
  const auto layout = cfg.region_layout();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto t = times[k];
    report.snapshots.push_back(Snapshot{t, p_auto[k], p_dirac[k], p_schrod[k], p_free[k]});
    auto compare = [&](const std::string& label, const std::vector<double>& a, const std::vector<double>& b) {
      if (a.empty() || b.empty()) return;
      const auto ca = coarse_grain(OccupationDistribution{t, a}, kernel);
      const auto cb = coarse_grain(OccupationDistribution{t, b}, kernel);
      report.comparisons.push_back({label, compare_distributions(ca, cb, layout)});
    };
    compare("automaton-dirac", p_auto[k], p_dirac[k]);
    compare("automaton-schrodinger", p_auto[k], p_schrod[k]);
    compare("dirac-schrodinger", p_dirac[k], p_schrod[k]);
    compare("automaton-free", p_auto[k], p_free[k]);
  }
  report.warnings = diag.warnings;
  report.total_seconds = std::chrono::duration<double>(clock::now() - t_start).count();

  if (write_files) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.directory);
    fs::create_directories(dir);
    auto open = [&](const char* name) {
      std::ofstream os(dir / name);
      if (!os) throw Error("cannot write " + (dir / name).string());
      return os;
    };
    {
      auto os = open("snapshots.csv");
      os << "t_index,x_index,p_auto,p_dirac,p_schrod" << (want_free ? ",p_free" : "") << '\n';
      for (const auto& s : report.snapshots) {
        const bool smooth = cfg.coarse_snapshots;
        const auto a = maybe_smooth(s.p_auto, s.t_index, kernel, smooth);
        const auto d = maybe_smooth(s.p_dirac, s.t_index, kernel, smooth);
        const auto c = maybe_smooth(s.p_schrod, s.t_index, kernel, smooth);
        const auto f = maybe_smooth(s.p_free, s.t_index, kernel, smooth);
        for (std::size_t x = 0; x < static_cast<std::size_t>(lat.m_x); ++x) {
          os << s.t_index << ',' << x << ',' << cell(a, x) << ',' << cell(d, x) << ',' << cell(c, x);
          if (want_free) os << ',' << cell(f, x);
          os << '\n';
        }
      }
      if (!os) throw Error("failed writing snapshots.csv");
    }
    {
      auto os = open("comparisons.csv");
      write_report_csv_header(os, layout.regions);
      for (const auto& c : report.comparisons) write_report_csv_row(os, c.label, c.report);
    }
    {
      auto os = open("report.txt");
      write_run_report(os, report);
    }
    {
      auto os = open("config.ini");
      os << report.config_echo;
    }
    {
      auto os = open("timing.txt");
      write_timing(os, report, cfg.threads);
    }
    {
      auto os = open("disorder.txt");
      write_disorder(os, field);
    }
  }
  return report;
}

void write_run_report(std::ostream& os, const RunReport& report) {
  using text::format_double;
  os << "# pca-run-report 1\n";
  pt::ptree tree;
  {
    std::istringstream is(report.config_echo);
    pt::read_ini(is, tree);
  }
  for (const auto& [section, body] : tree) {
    for (const auto& [key, value] : body) os << "config." << section << '.' << key << ' ' << value.data() << '\n';
  }
  os << "seed " << report.seed << '\n';
  std::ostringstream summary;
  write_summary(summary, report.disorder);
  std::istringstream lines(summary.str());
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("block ", 0) == 0) continue;
    if (!line.empty() && std::isdigit(static_cast<unsigned char>(line[0]))) {
      const auto f = text::split(line, " ");
      os << "disorder.block_" << f[0] << ".mean_count " << f[1] << '\n';
      os << "disorder.block_" << f[0] << ".v_over_m " << f[2] << '\n';
      continue;
    }
    os << "disorder." << line << '\n';
  }
  os << "trajectories " << report.trajectories << '\n';
  os << "initial.momentum_ratio " << format_double(report.momentum_ratio) << '\n';
  os << "initial.spectral_tail " << format_double(report.spectral_tail) << '\n';
  os << "snapshots " << report.snapshots.size() << '\n';
  os << "warnings " << report.warnings.size() << '\n';
  for (const auto& w : report.warnings) os << "warning " << w << '\n';
  for (const auto& c : report.comparisons) {
    write_report_kv(os, c.report, c.label + ".t" + std::to_string(c.report.t_index) + '.');
  }
}

void write_timing(std::ostream& os, const RunReport& report, int threads) {
  using text::format_double;
  os << "threads " << threads << '\n';
  os << "automaton_seconds " << format_double(report.automaton_seconds) << '\n';
  os << "reference_seconds " << format_double(report.reference_seconds) << '\n';
  os << "total_seconds " << format_double(report.total_seconds) << '\n';
  os << "steps_per_second " << format_double(report.steps_per_second) << '\n';
}

}  // namespace pca
