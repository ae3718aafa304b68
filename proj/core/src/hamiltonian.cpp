#include "pca/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "pca/automaton.hpp"
#include "pca/errors.hpp"
#include "pca/text_format.hpp"

namespace pca {

std::string_view to_string(HamiltonianLabel label) {
  switch (label) {
    case HamiltonianLabel::free: return "H_f";
    case HamiltonianLabel::scattering: return "H_V";
    case HamiltonianLabel::leading: return "H_0";
    case HamiltonianLabel::effective: return "Hbar";
  }
  return "?";
}

double HamiltonianMatrix::hermiticity_error() const {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd HamiltonianMatrix::eigenvalues() const {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  return es.eigenvalues();
}

Eigen::Matrix2cd pauli(int k) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd s;
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw RangeError("Pauli index " + std::to_string(k) + " outside 0..3");
  }
  return s;
}

Eigen::Matrix2cd gamma0() { return cplx(0.0, -1.0) * pauli(2); }
Eigen::Matrix2cd gamma1() { return pauli(1); }

namespace {

/// a (x) b with a the 2x2 internal factor: block (g, g') = a(g, g') b.
Eigen::MatrixXcd kron2(const Eigen::Matrix2cd& a, const Eigen::MatrixXcd& b) {
  const auto m = b.rows();
  Eigen::MatrixXcd out(2 * m, 2 * m);
  for (int g = 0; g < 2; ++g) {
    for (int h = 0; h < 2; ++h) out.block(g * m, h * m, m, m) = a(g, h) * b;
  }
  return out;
}

Eigen::MatrixXcd permutation_matrix(const SignedPermutation& op, int m_x) {
  // the operator is eta-diagonal with identical action on both eta sectors,
  // so its complex action on phi reads off the eta = + sector
  const int n = 2 * m_x;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int g = 0; g < 2; ++g) {
    for (int x = 0; x < m_x; ++x) {
      const auto s = flat_index({static_cast<Mover>(g), Charge::plus, x}, m_x);
      const auto b = basis_of(op.target(s), m_x);
      out(static_cast<int>(b.gamma) * m_x + b.x_index, g * m_x + x) = op.sign(s);
    }
  }
  return out;
}

}  // namespace

HamiltonianMatrix free_hamiltonian(const MomentumGrid& grid) {
  HamiltonianMatrix out{HamiltonianLabel::free, grid.eps, grid.m_x, 0, {}};
  out.h = kron2(pauli(3), momentum_operator(grid));
  return out;
}

HamiltonianMatrix scattering_hamiltonian(const DisorderField& field, std::int64_t t_index) {
  const auto& cfg = field.config();
  if (t_index < 0 || t_index >= cfg.m_t) {
    throw RangeError("time slice " + std::to_string(t_index) + " outside the disorder field");
  }
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(cfg.m_x);
  for (int x : field.events_at(t_index)) occ(x) = std::numbers::pi / (2.0 * cfg.eps);
  HamiltonianMatrix out{HamiltonianLabel::scattering, cfg.eps, cfg.m_x, t_index, {}};
  out.h = kron2(pauli(2), Eigen::MatrixXcd(occ.cast<cplx>().asDiagonal()));
  return out;
}

HamiltonianMatrix leading_hamiltonian(const PotentialProfile& profile, const MomentumGrid& grid) {
  if (profile.potential.size() != static_cast<std::size_t>(grid.m_x)) {
    throw DimensionError("profile has " + std::to_string(profile.potential.size()) +
                         " sites, grid has " + std::to_string(grid.m_x));
  }
  const auto vbar = profile.total();
  Eigen::VectorXcd v(grid.m_x);
  for (int x = 0; x < grid.m_x; ++x) v(x) = vbar[static_cast<std::size_t>(x)];
  HamiltonianMatrix out{HamiltonianLabel::leading, grid.eps, grid.m_x, 0, {}};
  out.h = kron2(pauli(3), momentum_operator(grid)) + kron2(pauli(2), Eigen::MatrixXcd(v.asDiagonal()));
  return out;
}

Eigen::MatrixXcd free_shift_matrix(const LatticeConfig& cfg, std::int64_t t_index) {
  return permutation_matrix(free_shift_operator(cfg, t_index), cfg.m_x);
}

Eigen::MatrixXcd scattering_matrix(const DisorderField& field, std::int64_t t_index) {
  return permutation_matrix(scattering_operator(field, t_index), field.config().m_x);
}

Eigen::MatrixXcd step_matrix(const DisorderField& field, std::int64_t t_index) {
  return permutation_matrix(build_step_operator(field, t_index), field.config().m_x);
}

Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& h, double t) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian eigensolver did not converge");
  Eigen::VectorXcd phase(sym.rows());
  for (Eigen::Index k = 0; k < phase.size(); ++k) phase(k) = std::polar(1.0, -t * es.eigenvalues()(k));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

constexpr int kMaxDenseSites = 256;
constexpr double kUnitarityTolerance = 1e-8;
constexpr double kBranchMargin = 1e-6;

}  // namespace

EffectiveHamiltonian effective_hamiltonian(const DisorderField& field, std::int64_t t0,
                                           std::int64_t n_steps) {
  const auto& cfg = field.config();
  if (cfg.m_x > kMaxDenseSites) {
    throw GeometryError("effective Hamiltonian is dense; m_x=" + std::to_string(cfg.m_x) +
                        " exceeds " + std::to_string(kMaxDenseSites));
  }
  if (n_steps < 1 || t0 < 0 || t0 + n_steps > cfg.m_t) {
    throw RangeError("step product [" + std::to_string(t0) + ", " + std::to_string(t0 + n_steps) +
                     ") is empty or leaves the disorder field");
  }
  const int m = cfg.m_x;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2 * m, 2 * m);
  for (std::int64_t t = t0; t < t0 + n_steps; ++t) {
    // left multiplication by a signed permutation is a row gather
    const auto op = build_step_operator(field, t);
    Eigen::MatrixXcd next(2 * m, 2 * m);
    for (int g = 0; g < 2; ++g) {
      for (int x = 0; x < m; ++x) {
        const auto s = flat_index({static_cast<Mover>(g), Charge::plus, x}, m);
        const auto b = basis_of(op.target(s), m);
        next.row(static_cast<int>(b.gamma) * m + b.x_index) = static_cast<double>(op.sign(s)) * u.row(g * m + x);
      }
    }
    u.swap(next);
  }
  const MomentumGrid grid(cfg);
  if (parity(t0 + n_steps) != parity(t0)) {
    const auto f = frame_transfer(grid, parity(t0), parity(t0 + n_steps));
    u = kron2(pauli(0), f) * u;
  }

  EffectiveHamiltonian out;
  out.unitarity_error =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(2 * m, 2 * m)).cwiseAbs().maxCoeff();
  if (out.unitarity_error > kUnitarityTolerance) {
    throw NumericalError("step product is not unitary (error " + std::to_string(out.unitarity_error) + ")");
  }
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  if (schur.info() != Eigen::Success) throw NumericalError("complex Schur decomposition did not converge");
  const auto& q = schur.matrixU();
  const auto& tri = schur.matrixT();
  const double dt = static_cast<double>(n_steps) * cfg.eps;
  Eigen::VectorXcd e(2 * m);
  for (int k = 0; k < 2 * m; ++k) {
    const double phase = std::arg(tri(k, k));
    out.max_phase = std::max(out.max_phase, std::abs(phase));
    if (std::numbers::pi - std::abs(phase) < kBranchMargin) out.branch_ambiguous = true;
    e(k) = -phase / dt;
  }
  out.hbar = HamiltonianMatrix{HamiltonianLabel::effective, cfg.eps, m, t0, {}};
  out.hbar.h = q * e.asDiagonal() * q.adjoint();
  out.product = std::move(u);
  return out;
}

void write_hamiltonian(std::ostream& os, const HamiltonianMatrix& h) {
  os << "# pca-hamiltonian 1\n";
  os << "# label " << to_string(h.label) << '\n';
  os << "# eps " << text::format_double(h.eps) << '\n';
  os << "# m_x " << h.m_x << '\n';
  os << "# t_index " << h.t_index << '\n';
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < h.h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.h.cols(); ++c) {
      const auto v = h.h(r, c);
      if (v == cplx(0.0, 0.0)) continue;
      os << r << ',' << c << ',' << text::format_double(v.real()) << ',' << text::format_double(v.imag())
         << '\n';
    }
  }
}

}  // namespace pca
