#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pca/disorder.hpp"
#include "pca/waves.hpp"

namespace pca {

/// Unique-jump matrix: source basis index s goes to target[s] with sign[s].
/// Indices use the RealWave flat layout [gamma][eta][x].
class SignedPermutation {
 public:
  SignedPermutation() = default;
  SignedPermutation(std::vector<std::uint32_t> target, std::vector<std::int8_t> sign);

  static SignedPermutation identity(std::size_t n);

  [[nodiscard]] std::size_t size() const { return target_.size(); }
  [[nodiscard]] std::uint32_t target(std::size_t s) const { return target_[s]; }
  [[nodiscard]] int sign(std::size_t s) const { return sign_[s]; }
  [[nodiscard]] std::span<const std::uint32_t> targets() const { return target_; }
  [[nodiscard]] std::span<const std::int8_t> signs() const { return sign_; }

  /// out[target[s]] = sign[s] * in[s]. Throws DimensionError on size mismatch.
  void apply(std::span<const double> in, std::span<double> out) const;

  /// Exactly one nonzero per row and per column.
  [[nodiscard]] bool is_unique_jump() const;
  /// Never maps eta = + onto eta = - or back.
  [[nodiscard]] bool is_eta_diagonal(int m_x) const;

  [[nodiscard]] SignedPermutation transpose() const;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  std::vector<std::uint32_t> target_;
  std::vector<std::int8_t> sign_;
};

/// (after . before): apply `before` first.
[[nodiscard]] SignedPermutation compose(const SignedPermutation& after,
                                        const SignedPermutation& before);

/// S_V(t): at each disorder point the factor -i tau_2 = [[0,-1],[1,0]], i.e.
/// R -> L with sign +1 and L -> R with sign -1; identity elsewhere.
[[nodiscard]] SignedPermutation scattering_operator(const DisorderField& field, std::int64_t t_index);

/// S_f from slice t to t+1: right-movers one eps right, left-movers one eps left.
[[nodiscard]] SignedPermutation free_shift_operator(const LatticeConfig& cfg, std::int64_t t_index);

/// S(t) = S_f S_V(t): scatter, then move.
[[nodiscard]] SignedPermutation build_step_operator(const DisorderField& field, std::int64_t t_index);

[[nodiscard]] RealWave apply_step(const RealWave& wave, const SignedPermutation& op);

/// Applies S(t0 + steps - 1) ... S(t0 + 1) S(t0) with t0 = wave.t_index().
/// Throws RangeError when the field does not cover the requested steps.
[[nodiscard]] RealWave evolve_wave(RealWave wave, const DisorderField& field, std::int64_t steps);

/// Per-basis-index trajectories: where each initial configuration currently
/// sits, with its accumulated sign and the probability it carries.
struct TrajectoryState {
  LatticeConfig cfg{};
  std::int64_t t_index = 0;
  std::vector<std::uint32_t> current;  // flat basis index
  std::vector<std::int8_t> sign;
  std::vector<double> weight;

  /// Every trajectory at its own starting configuration with unit sign;
  /// weights are q^2 of `initial` (or zero when omitted).
  static TrajectoryState start(const LatticeConfig& cfg, std::int64_t t_index);
  static TrajectoryState start(const RealWave& initial);

  [[nodiscard]] std::size_t size() const { return current.size(); }
  [[nodiscard]] bool is_bijection() const;
};

/// Follows every trajectory through the field. `threads` workers split the
/// trajectories; the result does not depend on the thread count.
[[nodiscard]] TrajectoryState evolve_trajectories(TrajectoryState state, const DisorderField& field,
                                                  std::int64_t steps, int threads = 1);

/// q(t) from the trajectory map: q_t[current[s]] = sign[s] * q_0[s].
[[nodiscard]] RealWave wave_from_trajectories(const TrajectoryState& state, const RealWave& initial);

/// phi_gamma = (1+i)/sqrt2 q_{gamma+} + (1-i)/sqrt2 q_{gamma-}.
/// Both directions throw NormalizationError when |norm^2 - 1| > 1e-8.
[[nodiscard]] RealWave encode_wave(const ComplexWave& phi);
[[nodiscard]] ComplexWave decode_wave(const RealWave& q);

// Snapshot table "t_index,gamma,eta,x_index,q" plus a norm checksum line.
void write_wave_snapshot(std::ostream& os, const RealWave& wave);
[[nodiscard]] RealWave read_wave_snapshot(std::istream& is);

}  // namespace pca
