#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace mixfactor {

using Complex = std::complex<double>;

/// Precomputed tables for a complex DFT of one length. Powers of two use an
/// iterative radix-2 kernel; every other length goes through Bluestein's
/// chirp-z reduction onto a power-of-two convolution. Read-only once built.
class FftPlan {
 public:
  enum class Strategy { radix2, bluestein };

  explicit FftPlan(std::size_t length);

  std::size_t size() const noexcept { return length_; }
  Strategy strategy() const noexcept { return strategy_; }

  /// Unnormalized forward DFT, X_k = sum_j x_j exp(-2 pi i jk / n), in place.
  void forward(std::span<Complex> x) const;
  /// Inverse DFT including the 1/n factor, in place.
  void inverse(std::span<Complex> x) const;

 private:
  void radix2(std::span<Complex> x) const;
  void bluestein(std::span<Complex> x) const;

  std::size_t length_;
  Strategy strategy_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<Complex> twiddles_;  // exp(-2 pi i k / n), k < n/2
  // Bluestein only.
  std::vector<Complex> chirp_;           // exp(-i pi k^2 / n)
  std::vector<Complex> filter_spectrum_;  // FFT of the conjugate chirp, padded
  std::shared_ptr<const FftPlan> inner_;
};

/// Shared plan for `length`, built on first use. Safe under concurrent calls.
std::shared_ptr<const FftPlan> fft_plan(std::size_t length);

std::vector<Complex> fft(const FftPlan& plan, std::span<const Complex> x);
std::vector<Complex> ifft(const FftPlan& plan, std::span<const Complex> x);

}  // namespace mixfactor
