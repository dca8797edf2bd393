#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "mixfactor/fft.hpp"
#include "mixfactor/types.hpp"

namespace mixfactor {

/// Orthonormal DCT-II and its transpose DCT-III of one length, computed with
/// a single complex FFT of the same length after an even/odd reordering.
/// Scaling: coefficient 0 weighted by sqrt(1/n), the rest by sqrt(2/n).
class DctPlan {
 public:
  explicit DctPlan(std::size_t length);

  std::size_t size() const noexcept { return length_; }

  /// `in` and `out` may alias. `work` is resized as needed.
  void dct2(std::span<const double> in, std::span<double> out, std::vector<Complex>& work) const;
  void dct3(std::span<const double> in, std::span<double> out, std::vector<Complex>& work) const;

 private:
  std::size_t length_;
  std::shared_ptr<const FftPlan> fft_;
  std::vector<Complex> shift_;  // exp(-i pi k / (2n))
  double first_weight_;
  double rest_weight_;
};

std::shared_ptr<const DctPlan> dct_plan(std::size_t length);

Vector dct2(const Vector& x);
Vector dct3(const Vector& x);

/// Column-wise transforms applied in place to every column of `a`.
void dct2_columns(Matrix& a);
void dct3_columns(Matrix& a);

}  // namespace mixfactor
