#include "pca/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "pca/errors.hpp"

namespace pca {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Fft::Impl {
  int n = 0;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Impl(int size) : n(size) {
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    std::lock_guard lock(planner_mutex());
    // FFTW_ESTIMATE with unaligned new-array execution keeps results
    // independent of measurement noise
    fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!fwd || !bwd) throw NumericalError("FFTW could not plan a transform of size " + std::to_string(n));
  }
  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

Fft::Fft(int n) {
  if (n < 1) throw DimensionError("FFT size must be positive");
  impl_ = std::make_unique<Impl>(n);
}

Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

int Fft::size() const { return impl_->n; }

void Fft::forward(std::span<std::complex<double>> data) const {
  if (static_cast<int>(data.size()) != impl_->n) throw DimensionError("FFT length mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->fwd, p, p);
}

void Fft::backward(std::span<std::complex<double>> data) const {
  if (static_cast<int>(data.size()) != impl_->n) throw DimensionError("FFT length mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(impl_->bwd, p, p);
}

void spectral_derivative(const Fft& fft, std::span<const std::complex<double>> in,
                         std::span<std::complex<double>> out, double h) {
  const int n = fft.size();
  if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != n) {
    throw DimensionError("spectral derivative length mismatch");
  }
  std::vector<std::complex<double>> c(in.begin(), in.end());
  fft.forward(c);
  for (int k = 0; k < n; ++k) {
    const int q = 2 * k > n ? k - n : k;
    const double p = 2.0 * std::numbers::pi * q / (n * h);
    c[static_cast<std::size_t>(k)] *= std::complex<double>(0.0, p) / static_cast<double>(n);
  }
  fft.backward(c);
  std::copy(c.begin(), c.end(), out.begin());
}

double spectral_tail(const Fft& fft, std::span<const std::complex<double>> f) {
  const int n = fft.size();
  std::vector<std::complex<double>> c(f.begin(), f.end());
  fft.forward(c);
  double total = 0.0, tail = 0.0;
  for (int k = 0; k < n; ++k) {
    const int q = 2 * k > n ? k - n : k;
    const double w = std::norm(c[static_cast<std::size_t>(k)]);
    total += w;
    if (8 * std::abs(q) > 3 * n) tail += w;
  }
  return total > 0.0 ? tail / total : 0.0;
}

}  // namespace pca
