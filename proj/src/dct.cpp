#include "mixfactor/dct.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace mixfactor {

DctPlan::DctPlan(std::size_t length)
    : length_(length),
      fft_(fft_plan(length)),
      first_weight_(std::sqrt(1.0 / static_cast<double>(length))),
      rest_weight_(std::sqrt(2.0 / static_cast<double>(length))) {
  shift_.resize(length);
  for (std::size_t k = 0; k < length; ++k) {
    const double angle = -std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(length));
    shift_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void DctPlan::dct2(std::span<const double> in, std::span<double> out, std::vector<Complex>& work) const {
  const std::size_t n = length_;
  if (in.size() != n || out.size() != n) throw InvalidArgument("dct2: length does not match plan");
  work.resize(n);
  for (std::size_t k = 0; 2 * k < n; ++k) work[k] = in[2 * k];
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) work[n - 1 - k] = in[2 * k + 1];
  fft_->forward(work);
  out[0] = first_weight_ * work[0].real();
  for (std::size_t k = 1; k < n; ++k) out[k] = rest_weight_ * (shift_[k] * work[k]).real();
}

void DctPlan::dct3(std::span<const double> in, std::span<double> out, std::vector<Complex>& work) const {
  const std::size_t n = length_;
  if (in.size() != n || out.size() != n) throw InvalidArgument("dct3: length does not match plan");
  work.resize(n);
  work[0] = in[0] / first_weight_;
  for (std::size_t k = 1; k < n; ++k) {
    const Complex spectral(in[k] / rest_weight_, -in[n - k] / rest_weight_);
    work[k] = std::conj(shift_[k]) * spectral;
  }
  fft_->inverse(work);
  for (std::size_t k = 0; 2 * k < n; ++k) out[2 * k] = work[k].real();
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) out[2 * k + 1] = work[n - 1 - k].real();
}

std::shared_ptr<const DctPlan> dct_plan(std::size_t length) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const DctPlan>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(length); it != cache.end()) return it->second;
  }
  auto plan = std::make_shared<const DctPlan>(length);
  std::lock_guard lock(mutex);
  return cache.emplace(length, std::move(plan)).first->second;
}

Vector dct2(const Vector& x) {
  if (x.size() < 1) throw InvalidArgument("dct2: empty input");
  Vector out(x.size());
  std::vector<Complex> work;
  dct_plan(static_cast<std::size_t>(x.size()))->dct2(std::span(x.data(), x.size()), std::span(out.data(), out.size()), work);
  return out;
}

Vector dct3(const Vector& x) {
  if (x.size() < 1) throw InvalidArgument("dct3: empty input");
  Vector out(x.size());
  std::vector<Complex> work;
  dct_plan(static_cast<std::size_t>(x.size()))->dct3(std::span(x.data(), x.size()), std::span(out.data(), out.size()), work);
  return out;
}

namespace {

template <bool Forward>
void transform_columns(Matrix& a) {
  if (a.rows() == 0) return;
  const auto plan = dct_plan(static_cast<std::size_t>(a.rows()));
  const auto n = static_cast<std::size_t>(a.rows());
  std::vector<Complex> work;
  for (Index j = 0; j < a.cols(); ++j) {
    std::span<double> col(a.col(j).data(), n);
    if constexpr (Forward)
      plan->dct2(col, col, work);
    else
      plan->dct3(col, col, work);
  }
}

}  // namespace

void dct2_columns(Matrix& a) { transform_columns<true>(a); }
void dct3_columns(Matrix& a) { transform_columns<false>(a); }

}  // namespace mixfactor
