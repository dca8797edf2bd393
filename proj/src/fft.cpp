#include "mixfactor/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "mixfactor/types.hpp"

namespace mixfactor {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

Complex unit_root(std::size_t k, std::size_t n, double sign) {
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

FftPlan::FftPlan(std::size_t length) : length_(length) {
  if (length == 0) throw InvalidArgument("FftPlan: length must be positive");
  if (is_power_of_two(length)) {
    strategy_ = Strategy::radix2;
    bit_reverse_.resize(length);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < length) ++bits;
    for (std::size_t i = 0; i < length; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      bit_reverse_[i] = r;
    }
    twiddles_.resize(length / 2);
    for (std::size_t k = 0; k < length / 2; ++k) twiddles_[k] = unit_root(k, length, -1.0);
    return;
  }

  strategy_ = Strategy::bluestein;
  const std::size_t padded = next_power_of_two(2 * length - 1);
  inner_ = fft_plan(padded);
  chirp_.resize(length);
  for (std::size_t k = 0; k < length; ++k) {
    // k^2 mod 2n keeps the angle argument small and exact.
    const std::size_t k2 = (k * k) % (2 * length);
    const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(length);
    chirp_[k] = {std::cos(angle), std::sin(angle)};
  }
  filter_spectrum_.assign(padded, Complex{});
  filter_spectrum_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < length; ++k) {
    filter_spectrum_[k] = std::conj(chirp_[k]);
    filter_spectrum_[padded - k] = std::conj(chirp_[k]);
  }
  inner_->forward(filter_spectrum_);
}

void FftPlan::forward(std::span<Complex> x) const {
  if (x.size() != length_) throw InvalidArgument("FftPlan: input length does not match plan");
  if (strategy_ == Strategy::radix2)
    radix2(x);
  else
    bluestein(x);
}

void FftPlan::inverse(std::span<Complex> x) const {
  for (auto& v : x) v = std::conj(v);
  forward(x);
  const double scale = 1.0 / static_cast<double>(length_);
  for (auto& v : x) v = std::conj(v) * scale;
}

void FftPlan::radix2(std::span<Complex> x) const {
  const std::size_t n = length_;
  for (std::size_t i = 0; i < n; ++i)
    if (i < bit_reverse_[i]) std::swap(x[i], x[bit_reverse_[i]]);
  for (std::size_t half = 1; half < n; half <<= 1) {
    const std::size_t stride = n / (2 * half);
    for (std::size_t start = 0; start < n; start += 2 * half) {
      for (std::size_t j = 0; j < half; ++j) {
        const Complex t = twiddles_[j * stride] * x[start + j + half];
        const Complex u = x[start + j];
        x[start + j] = u + t;
        x[start + j + half] = u - t;
      }
    }
  }
}

void FftPlan::bluestein(std::span<Complex> x) const {
  const std::size_t padded = inner_->size();
  std::vector<Complex> work(padded, Complex{});
  for (std::size_t k = 0; k < length_; ++k) work[k] = x[k] * chirp_[k];
  inner_->forward(work);
  for (std::size_t k = 0; k < padded; ++k) work[k] *= filter_spectrum_[k];
  inner_->inverse(work);
  for (std::size_t k = 0; k < length_; ++k) x[k] = work[k] * chirp_[k];
}

std::shared_ptr<const FftPlan> fft_plan(std::size_t length) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const FftPlan>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(length); it != cache.end()) return it->second;
  }
  // Built outside the lock: Bluestein plans request their inner plan here.
  auto plan = std::make_shared<const FftPlan>(length);
  std::lock_guard lock(mutex);
  return cache.emplace(length, std::move(plan)).first->second;
}

std::vector<Complex> fft(const FftPlan& plan, std::span<const Complex> x) {
  std::vector<Complex> out(x.begin(), x.end());
  plan.forward(out);
  return out;
}

std::vector<Complex> ifft(const FftPlan& plan, std::span<const Complex> x) {
  std::vector<Complex> out(x.begin(), x.end());
  plan.inverse(out);
  return out;
}

}  // namespace mixfactor
