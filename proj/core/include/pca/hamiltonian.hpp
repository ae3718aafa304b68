#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string_view>

#include "pca/disorder.hpp"
#include "pca/momentum.hpp"
#include "pca/waves.hpp"

namespace pca {

enum class HamiltonianLabel { free, scattering, leading, effective };

[[nodiscard]] std::string_view to_string(HamiltonianLabel label);

/// Dense 2 m_x x 2 m_x operator over the (gamma, x_index) basis, index
/// gamma * m_x + x, in the sublattice frame of slice t_index.
struct HamiltonianMatrix {
  HamiltonianLabel label = HamiltonianLabel::free;
  double eps = 1.0;
  int m_x = 0;
  std::int64_t t_index = 0;
  Eigen::MatrixXcd h;

  /// max |H - H^dagger|.
  [[nodiscard]] double hermiticity_error() const;
  [[nodiscard]] Eigen::VectorXd eigenvalues() const;
};

/// Dirac matrices gamma^0 = -i tau_2, gamma^1 = tau_1 and the Pauli matrices.
[[nodiscard]] Eigen::Matrix2cd pauli(int k);
[[nodiscard]] Eigen::Matrix2cd gamma0();
[[nodiscard]] Eigen::Matrix2cd gamma1();

/// H_f = P~ tau_3.
[[nodiscard]] HamiltonianMatrix free_hamiltonian(const MomentumGrid& grid);

/// H_V(t) = (pi / 2 eps) tau_2 on the disorder points of slice t, zero elsewhere.
[[nodiscard]] HamiltonianMatrix scattering_hamiltonian(const DisorderField& field, std::int64_t t_index);

/// H_0 = P~ tau_3 + Vbar(x) tau_2.
[[nodiscard]] HamiltonianMatrix leading_hamiltonian(const PotentialProfile& profile,
                                                    const MomentumGrid& grid);

/// Complex action of the automaton operators on phi, index basis.
[[nodiscard]] Eigen::MatrixXcd free_shift_matrix(const LatticeConfig& cfg, std::int64_t t_index);
[[nodiscard]] Eigen::MatrixXcd scattering_matrix(const DisorderField& field, std::int64_t t_index);
[[nodiscard]] Eigen::MatrixXcd step_matrix(const DisorderField& field, std::int64_t t_index);

/// exp(-i t H) for hermitian H.
[[nodiscard]] Eigen::MatrixXcd unitary_exp(const Eigen::MatrixXcd& h, double t);

struct EffectiveHamiltonian {
  HamiltonianMatrix hbar;
  Eigen::MatrixXcd product;   // U, brought back to the frame of t0
  double unitarity_error = 0;  // max |U^dagger U - 1|
  double max_phase = 0;        // max |arg lambda|
  bool branch_ambiguous = false;
};

/// Hbar = i log(U) / Dt with U = S(t0 + n - 1) ... S(t0), Dt = n eps.
/// Principal branch; a phase within 1e-6 of +-pi sets branch_ambiguous.
/// Throws NumericalError when U is not unitary to 1e-8, RangeError for
/// n_steps < 1 or beyond the field, GeometryError for m_x > 256.
[[nodiscard]] EffectiveHamiltonian effective_hamiltonian(const DisorderField& field, std::int64_t t0,
                                                         std::int64_t n_steps);

/// Text table "row,col,re,im" of the nonzero entries, with a header naming
/// label, eps and m_x.
void write_hamiltonian(std::ostream& os, const HamiltonianMatrix& h);

}  // namespace pca
