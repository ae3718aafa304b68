#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "pca/disorder.hpp"
#include "pca/spectral.hpp"
#include "pca/waves.hpp"

namespace pca {

struct SolverDiagnostics {
  double norm_error = 0;      // |norm^2(out) - norm^2(in)|
  double spectral_tail = 0;   // fraction of |phi|^2 at |q| > 3 m_x / 8
  double momentum_ratio = 0;  // p_rms / m, set by nonrel_embed
  std::vector<std::string> warnings;
};

/// Unitarity tolerance of every reference evolution; NumericalError above it.
inline constexpr double kUnitarityTolerance = 1e-8;
/// Spectral-tail level above which an input counts as not smooth.
inline constexpr double kSmoothnessThreshold = 1e-6;
/// p_rms / m level above which the non-relativistic embedding is unreliable.
inline constexpr double kNonrelThreshold = 0.2;

enum class DiracMethod { automatic, dense, split_step };

struct DiracOptions {
  DiracMethod method = DiracMethod::automatic;  // dense up to m_x = 256
  int order = 4;                                // split-step order, 2 or 4
  double max_dt = 0;                            // split-step size bound; 0 means eps
};

/// Resamples a wave onto the sublattice of slice new_t (band limited) and
/// relabels it. A no-op when the parity does not change.
[[nodiscard]] ComplexWave shift_frame(const ComplexWave& phi, std::int64_t new_t);
[[nodiscard]] SchrodingerWave shift_frame(const SchrodingerWave& chi, std::int64_t new_t);

/// exp(-i t H_0) through one cached eigendecomposition of H_0.
class DenseDiracPropagator {
 public:
  explicit DenseDiracPropagator(const PotentialProfile& profile);
  [[nodiscard]] ComplexWave evolve(const ComplexWave& phi, double duration) const;
  [[nodiscard]] const Eigen::VectorXd& energies() const { return energies_; }

 private:
  LatticeConfig cfg_{};
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

/// Strang splitting of H_0 = P~ tau_3 + Vbar tau_2, optionally composed to
/// fourth order; the kinetic factor is exact in momentum space.
class SplitStepDirac {
 public:
  SplitStepDirac(const PotentialProfile& profile, int order = 4, double max_dt = 0);
  [[nodiscard]] ComplexWave evolve(const ComplexWave& phi, double duration) const;

 private:
  void strang(std::vector<cplx>& r, std::vector<cplx>& l, double h) const;

  double eps_ = 1.0;
  int order_ = 4;
  double max_dt_ = 1.0;
  std::vector<double> vbar_;
  std::vector<double> momenta_;
  std::shared_ptr<Fft> fft_;
};

/// Solves i d_t phi = (-i d_x tau_3 + Vbar tau_2) phi for the given duration.
/// The result is labelled t_index + round(duration / eps) and sampled on
/// that slice's sublattice. Non-smooth input is reported as a warning.
/// Warnings go to `diag` when given, otherwise to std::clog.
[[nodiscard]] ComplexWave dirac_evolve(const ComplexWave& phi, const PotentialProfile& profile,
                                       double duration, const DiracOptions& options = {},
                                       SolverDiagnostics* diag = nullptr);

/// |(gamma^0 d_t + gamma^1 d_x + Vbar) phi| / |phi| at the middle wave, with
/// a central time difference of step dt and a spectral x derivative. All
/// three waves must be sampled on the same sublattice.
[[nodiscard]] double dirac_residual(const PotentialProfile& profile, const ComplexWave& before,
                                    const ComplexWave& centre, const ComplexWave& after, double dt);

/// H = -Lap/(2m) + V with the three-point Laplacian of spacing 2 eps.
/// Throws InvalidProfileError for m <= 0.
class SchrodingerPropagator {
 public:
  explicit SchrodingerPropagator(const PotentialProfile& profile);
  [[nodiscard]] SchrodingerWave evolve(const SchrodingerWave& chi, double duration) const;
  [[nodiscard]] const Eigen::MatrixXd& hamiltonian() const { return h_; }
  [[nodiscard]] const Eigen::VectorXd& energies() const { return energies_; }

 private:
  LatticeConfig cfg_{};
  Eigen::MatrixXd h_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

[[nodiscard]] SchrodingerWave schrodinger_evolve(const SchrodingerWave& chi,
                                                 const PotentialProfile& profile, double duration,
                                                 SolverDiagnostics* diag = nullptr);

/// phi = e^{-imt}/sqrt2 (chi - i chi'/(2m), i chi - chi'/(2m)), normalized,
/// with t = t_index eps. Warns when p_rms / m exceeds 0.2.
[[nodiscard]] ComplexWave nonrel_embed(const SchrodingerWave& chi, double mass,
                                       SolverDiagnostics* diag = nullptr);

/// Normalized Gaussian chi ~ exp(-(x-x0)^2/(4 sigma^2) + i p0 x) on the
/// sublattice of t_index, with periodic distance. When a support window
/// [x_begin, x_end) of site indices is given, chi vanishes outside it.
[[nodiscard]] SchrodingerWave gaussian_packet(const LatticeConfig& cfg, std::int64_t t_index,
                                              double x0, double sigma, double p0,
                                              int x_begin = 0, int x_end = -1);

}  // namespace pca
