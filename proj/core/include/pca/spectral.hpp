#pragma once

#include <complex>
#include <memory>
#include <span>

namespace pca {

/// In-place complex DFT of fixed length. forward: X_n = sum_k x_k e^{-2 pi i nk/N};
/// backward is the unnormalized inverse. Plans are created under a global
/// lock; execution is thread-safe per instance.
class Fft {
 public:
  explicit Fft(int n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  [[nodiscard]] int size() const;
  void forward(std::span<std::complex<double>> data) const;
  void backward(std::span<std::complex<double>> data) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// d/dx on a periodic grid of n points with spacing h, through the DFT with
/// the one-sided Nyquist mode.
void spectral_derivative(const Fft& fft, std::span<const std::complex<double>> in,
                         std::span<std::complex<double>> out, double h);

/// Fraction of |f|^2 carried by modes with |q| > 3n/8.
[[nodiscard]] double spectral_tail(const Fft& fft, std::span<const std::complex<double>> f);

}  // namespace pca
