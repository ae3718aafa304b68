#include "pca/automaton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "pca/errors.hpp"

namespace pca {

RealWave::RealWave(LatticeConfig cfg, std::int64_t t_index)
    : cfg_(cfg), t_(t_index), q_(4 * static_cast<std::size_t>(cfg.m_x), 0.0) {}

RealWave RealWave::delta(LatticeConfig cfg, std::int64_t t_index, BasisIndex at) {
  RealWave w(cfg, t_index);
  w.at(at) = 1.0;
  return w;
}

std::span<const double> RealWave::component(Mover g, Charge e) const {
  const auto m = static_cast<std::size_t>(cfg_.m_x);
  return {q_.data() + (static_cast<std::size_t>(g) * 2 + static_cast<std::size_t>(e)) * m, m};
}

std::span<double> RealWave::component(Mover g, Charge e) {
  const auto m = static_cast<std::size_t>(cfg_.m_x);
  return {q_.data() + (static_cast<std::size_t>(g) * 2 + static_cast<std::size_t>(e)) * m, m};
}

double RealWave::norm_squared() const {
  double s = 0.0;
  for (double v : q_) s += v * v;
  return s;
}

double ComplexWave::norm_squared() const {
  double s = 0.0;
  for (const auto& v : phi) s += std::norm(v);
  return s;
}

void ComplexWave::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw NormalizationError("cannot normalize a zero wave");
  for (auto& v : phi) v /= n;
}

double SchrodingerWave::norm_squared() const {
  double s = 0.0;
  for (const auto& v : chi) s += std::norm(v);
  return s;
}

void SchrodingerWave::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw NormalizationError("cannot normalize a zero wave");
  for (auto& v : chi) v /= n;
}

SignedPermutation::SignedPermutation(std::vector<std::uint32_t> target, std::vector<std::int8_t> sign)
    : target_(std::move(target)), sign_(std::move(sign)) {
  if (target_.size() != sign_.size()) throw DimensionError("target and sign tables differ in size");
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<std::uint32_t> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<std::uint32_t>(i);
  return SignedPermutation(std::move(t), std::vector<std::int8_t>(n, 1));
}

void SignedPermutation::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != size() || out.size() != size()) {
    throw DimensionError("operator of size " + std::to_string(size()) + " applied to vector of size " +
                         std::to_string(in.size()));
  }
  for (std::size_t s = 0; s < target_.size(); ++s) {
    out[target_[s]] = sign_[s] < 0 ? -in[s] : in[s];
  }
}

bool SignedPermutation::is_unique_jump() const {
  std::vector<std::uint8_t> hit(size(), 0);
  for (std::size_t s = 0; s < size(); ++s) {
    if (target_[s] >= size() || hit[target_[s]]) return false;
    if (sign_[s] != 1 && sign_[s] != -1) return false;
    hit[target_[s]] = 1;
  }
  return true;
}

bool SignedPermutation::is_eta_diagonal(int m_x) const {
  for (std::size_t s = 0; s < size(); ++s) {
    if (basis_of(s, m_x).eta != basis_of(target_[s], m_x).eta) return false;
  }
  return true;
}

SignedPermutation SignedPermutation::transpose() const {
  std::vector<std::uint32_t> t(size());
  std::vector<std::int8_t> g(size());
  for (std::size_t s = 0; s < size(); ++s) {
    t[target_[s]] = static_cast<std::uint32_t>(s);
    g[target_[s]] = sign_[s];
  }
  return SignedPermutation(std::move(t), std::move(g));
}

SignedPermutation compose(const SignedPermutation& after, const SignedPermutation& before) {
  if (after.size() != before.size()) throw DimensionError("composing operators of different size");
  std::vector<std::uint32_t> t(before.size());
  std::vector<std::int8_t> g(before.size());
  for (std::size_t s = 0; s < before.size(); ++s) {
    const auto mid = before.target(s);
    t[s] = after.target(mid);
    g[s] = static_cast<std::int8_t>(before.sign(s) * after.sign(mid));
  }
  return SignedPermutation(std::move(t), std::move(g));
}

namespace {

void check_slice(const DisorderField& field, std::int64_t t_index) {
  if (t_index < 0 || t_index >= field.config().m_t) {
    throw RangeError("time slice " + std::to_string(t_index) + " outside the disorder field [0, " +
                     std::to_string(field.config().m_t) + ")");
  }
}

}  // namespace

SignedPermutation scattering_operator(const DisorderField& field, std::int64_t t_index) {
  check_slice(field, t_index);
  const int m = field.config().m_x;
  auto op = SignedPermutation::identity(4 * static_cast<std::size_t>(m));
  std::vector<std::uint32_t> target(op.targets().begin(), op.targets().end());
  std::vector<std::int8_t> sign(op.signs().begin(), op.signs().end());
  for (int y : field.events_at(t_index)) {
    for (auto e : {Charge::plus, Charge::minus}) {
      const auto r = flat_index({Mover::right, e, y}, m);
      const auto l = flat_index({Mover::left, e, y}, m);
      target[r] = static_cast<std::uint32_t>(l);
      sign[r] = 1;
      target[l] = static_cast<std::uint32_t>(r);
      sign[l] = -1;
    }
  }
  return SignedPermutation(std::move(target), std::move(sign));
}

SignedPermutation free_shift_operator(const LatticeConfig& cfg, std::int64_t t_index) {
  const int m = cfg.m_x;
  std::vector<std::uint32_t> target(4 * static_cast<std::size_t>(m));
  for (auto e : {Charge::plus, Charge::minus}) {
    for (int y = 0; y < m; ++y) {
      target[flat_index({Mover::right, e, y}, m)] = static_cast<std::uint32_t>(
          flat_index({Mover::right, e, moved_index(y, t_index, Direction::right, m)}, m));
      target[flat_index({Mover::left, e, y}, m)] = static_cast<std::uint32_t>(
          flat_index({Mover::left, e, moved_index(y, t_index, Direction::left, m)}, m));
    }
  }
  return SignedPermutation(std::move(target), std::vector<std::int8_t>(target.size(), 1));
}

SignedPermutation build_step_operator(const DisorderField& field, std::int64_t t_index) {
  check_slice(field, t_index);
  const int m = field.config().m_x;
  const auto occupied = field.slice(t_index);
  std::vector<std::uint32_t> target(4 * static_cast<std::size_t>(m));
  std::vector<std::int8_t> sign(target.size(), 1);
  for (auto e : {Charge::plus, Charge::minus}) {
    for (int y = 0; y < m; ++y) {
      const auto r = flat_index({Mover::right, e, y}, m);
      const auto l = flat_index({Mover::left, e, y}, m);
      const int to_right = moved_index(y, t_index, Direction::right, m);
      const int to_left = moved_index(y, t_index, Direction::left, m);
      if (occupied[y]) {
        target[r] = static_cast<std::uint32_t>(flat_index({Mover::left, e, to_left}, m));
        target[l] = static_cast<std::uint32_t>(flat_index({Mover::right, e, to_right}, m));
        sign[l] = -1;
      } else {
        target[r] = static_cast<std::uint32_t>(flat_index({Mover::right, e, to_right}, m));
        target[l] = static_cast<std::uint32_t>(flat_index({Mover::left, e, to_left}, m));
      }
    }
  }
  return SignedPermutation(std::move(target), std::move(sign));
}

RealWave apply_step(const RealWave& wave, const SignedPermutation& op) {
  RealWave out(wave.config(), wave.t_index() + 1);
  op.apply(wave.values(), out.values());
  return out;
}

namespace {

void check_range(const LatticeConfig& wave_cfg, std::int64_t t0, const DisorderField& field,
                 std::int64_t steps) {
  if (wave_cfg.m_x != field.config().m_x) {
    throw DimensionError("wave has m_x=" + std::to_string(wave_cfg.m_x) + ", field has m_x=" +
                         std::to_string(field.config().m_x));
  }
  if (steps < 0 || t0 < 0 || t0 + steps > field.config().m_t) {
    throw RangeError("evolution from t=" + std::to_string(t0) + " by " + std::to_string(steps) +
                     " steps leaves the disorder field range [0, " + std::to_string(field.config().m_t) +
                     "]");
  }
}

}  // namespace

RealWave evolve_wave(RealWave wave, const DisorderField& field, std::int64_t steps) {
  check_range(wave.config(), wave.t_index(), field, steps);
  RealWave next(wave.config(), wave.t_index());
  for (std::int64_t n = 0; n < steps; ++n) {
    const auto t = wave.t_index();
    build_step_operator(field, t).apply(wave.values(), next.values());
    next.set_t_index(t + 1);
    std::swap(wave, next);
  }
  return wave;
}

TrajectoryState TrajectoryState::start(const LatticeConfig& cfg, std::int64_t t_index) {
  TrajectoryState s;
  s.cfg = cfg;
  s.t_index = t_index;
  const std::size_t n = 4 * static_cast<std::size_t>(cfg.m_x);
  s.current.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.current[i] = static_cast<std::uint32_t>(i);
  s.sign.assign(n, 1);
  s.weight.assign(n, 0.0);
  return s;
}

TrajectoryState TrajectoryState::start(const RealWave& initial) {
  auto s = start(initial.config(), initial.t_index());
  for (std::size_t i = 0; i < s.size(); ++i) s.weight[i] = initial[i] * initial[i];
  return s;
}

bool TrajectoryState::is_bijection() const {
  std::vector<std::uint8_t> hit(current.size(), 0);
  for (auto c : current) {
    if (c >= current.size() || hit[c]) return false;
    hit[c] = 1;
  }
  return true;
}

namespace {

void advance_range(TrajectoryState& st, const DisorderField& field, std::int64_t steps,
                   std::size_t begin, std::size_t end) {
  const int m = st.cfg.m_x;
  const auto per_mover = 2 * static_cast<std::uint32_t>(m);
  for (std::size_t s = begin; s < end; ++s) {
    const std::uint32_t idx = st.current[s];
    int g = static_cast<int>(idx / per_mover);
    const std::uint32_t eta_offset = ((idx / static_cast<std::uint32_t>(m)) % 2) * static_cast<std::uint32_t>(m);
    int x = static_cast<int>(idx % static_cast<std::uint32_t>(m));
    int sign = st.sign[s];
    for (std::int64_t n = 0; n < steps; ++n) {
      const std::int64_t t = st.t_index + n;
      if (field.has_event(t, x)) {
        if (g == 1) sign = -sign;  // L -> R carries the minus sign of -i tau_2
        g = 1 - g;
      }
      x = moved_index(x, t, g == 0 ? Direction::right : Direction::left, m);
    }
    st.current[s] = static_cast<std::uint32_t>(g) * per_mover + eta_offset + static_cast<std::uint32_t>(x);
    st.sign[s] = static_cast<std::int8_t>(sign);
  }
}

}  // namespace

TrajectoryState evolve_trajectories(TrajectoryState state, const DisorderField& field,
                                    std::int64_t steps, int threads) {
  check_range(state.cfg, state.t_index, field, steps);
  const std::size_t n = state.size();
  const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, 256));
  if (workers == 1 || n < 2 * workers) {
    advance_range(state, field, steps, 0, n);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t b = w * chunk;
      const std::size_t e = std::min(n, b + chunk);
      if (b >= e) break;
      pool.emplace_back([&state, &field, steps, b, e] { advance_range(state, field, steps, b, e); });
    }
  }
  state.t_index += steps;
  return state;
}

RealWave wave_from_trajectories(const TrajectoryState& state, const RealWave& initial) {
  if (initial.size() != state.size()) throw DimensionError("trajectory state and wave differ in size");
  RealWave out(initial.config(), state.t_index);
  for (std::size_t s = 0; s < state.size(); ++s) {
    out[state.current[s]] = state.sign[s] < 0 ? -initial[s] : initial[s];
  }
  return out;
}

namespace {

constexpr double kEncodeTolerance = 1e-8;

void check_normalized(double norm2, const char* what) {
  if (std::abs(norm2 - 1.0) > kEncodeTolerance) {
    throw NormalizationError(std::string(what) + " is not normalized (norm^2 = " +
                             std::to_string(norm2) + ")");
  }
}

}  // namespace

RealWave encode_wave(const ComplexWave& phi) {
  check_normalized(phi.norm_squared(), "complex wave");
  RealWave q(phi.cfg, phi.t_index);
  const double r = std::numbers::sqrt2 / 2.0;
  for (auto g : {Mover::right, Mover::left}) {
    const auto src = phi.component(g);
    auto plus = q.component(g, Charge::plus);
    auto minus = q.component(g, Charge::minus);
    for (std::size_t x = 0; x < src.size(); ++x) {
      plus[x] = r * (src[x].real() + src[x].imag());
      minus[x] = r * (src[x].real() - src[x].imag());
    }
  }
  return q;
}

ComplexWave decode_wave(const RealWave& q) {
  check_normalized(q.norm_squared(), "real wave");
  ComplexWave phi(q.config(), q.t_index());
  const double r = std::numbers::sqrt2 / 2.0;
  for (auto g : {Mover::right, Mover::left}) {
    const auto plus = q.component(g, Charge::plus);
    const auto minus = q.component(g, Charge::minus);
    auto dst = phi.component(g);
    for (std::size_t x = 0; x < dst.size(); ++x) {
      dst[x] = cplx(r * (plus[x] + minus[x]), r * (plus[x] - minus[x]));
    }
  }
  return phi;
}

}  // namespace pca
