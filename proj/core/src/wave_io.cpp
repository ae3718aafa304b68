#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "pca/automaton.hpp"
#include "pca/errors.hpp"
#include "pca/text_format.hpp"

namespace pca {

void write_wave_snapshot(std::ostream& os, const RealWave& wave) {
  const auto& cfg = wave.config();
  os << "# pca-wave 1\n";
  os << "# eps " << text::format_double(cfg.eps) << '\n';
  os << "# m_x " << cfg.m_x << '\n';
  os << "# m_t " << cfg.m_t << '\n';
  os << "t_index,gamma,eta,x_index,q\n";
  for (std::size_t i = 0; i < wave.size(); ++i) {
    const auto b = basis_of(i, cfg.m_x);
    os << wave.t_index() << ',' << (b.gamma == Mover::right ? 'R' : 'L') << ','
       << (b.eta == Charge::plus ? '+' : '-') << ',' << b.x_index << ','
       << text::format_double(wave[i]) << '\n';
  }
  os << "# norm2 " << text::format_double(wave.norm_squared()) << '\n';
}

RealWave read_wave_snapshot(std::istream& is) {
  LatticeConfig cfg{};
  bool have_magic = false, have_eps = false, have_mx = false, have_mt = false, have_header = false;
  std::optional<double> checksum;
  std::optional<RealWave> wave;
  std::vector<std::uint8_t> seen;
  std::size_t rows = 0;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("wave snapshot line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    const auto body = text::trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      const auto f = text::split(body, " \t");
      if (f.size() < 3) {
        if (f.size() == 2 && f[1] == "pca-wave") fail("missing format version");
        continue;
      }
      if (f[1] == "pca-wave") {
        have_magic = true;
      } else if (f[1] == "eps") {
        cfg.eps = text::parse_double(f[2]);
        have_eps = true;
      } else if (f[1] == "m_x") {
        cfg.m_x = static_cast<int>(text::parse_int(f[2]));
        have_mx = true;
      } else if (f[1] == "m_t") {
        cfg.m_t = static_cast<int>(text::parse_int(f[2]));
        have_mt = true;
      } else if (f[1] == "norm2") {
        checksum = text::parse_double(f[2]);
      }
      continue;
    }
    if (!have_header) {
      if (body != "t_index,gamma,eta,x_index,q") fail("expected column header");
      if (!have_magic || !have_eps || !have_mx || !have_mt) fail("missing pca-wave header");
      cfg.validate();
      have_header = true;
      seen.assign(4 * static_cast<std::size_t>(cfg.m_x), 0);
      continue;
    }
    const auto f = text::split(body, ",");
    if (f.size() != 5) fail("expected 5 columns");
    const auto t = text::parse_int(f[0]);
    if (!wave) {
      wave.emplace(cfg, t);
    } else if (wave->t_index() != t) {
      fail("mixed t_index values");
    }
    BasisIndex b;
    if (f[1] == "R") b.gamma = Mover::right;
    else if (f[1] == "L") b.gamma = Mover::left;
    else fail("gamma must be R or L");
    if (f[2] == "+") b.eta = Charge::plus;
    else if (f[2] == "-") b.eta = Charge::minus;
    else fail("eta must be + or -");
    const auto x = text::parse_int(f[3]);
    if (x < 0 || x >= cfg.m_x) fail("x_index out of range");
    b.x_index = static_cast<int>(x);
    const auto idx = flat_index(b, cfg.m_x);
    if (seen[idx]) fail("duplicate basis entry");
    seen[idx] = 1;
    wave->at(b) = text::parse_double(f[4]);
    ++rows;
  }
  if (!wave || rows != seen.size()) {
    throw ParseError("wave snapshot has " + std::to_string(rows) + " rows, expected " +
                     std::to_string(seen.size()));
  }
  if (!checksum) throw ParseError("wave snapshot has no norm2 checksum line");
  if (text::format_double(wave->norm_squared()) != text::format_double(*checksum)) {
    throw ParseError("wave snapshot norm checksum mismatch");
  }
  return *wave;
}

}  // namespace pca
