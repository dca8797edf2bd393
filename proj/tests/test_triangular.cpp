#include <doctest.h>

#include "helpers.hpp"

using namespace testing;

TEST_CASE("back_substitute") {
  const Vector b = vec({1, 2, 3});
  CHECK(back_substitute(Matrix::Identity(3, 3), b) == b);
  const Matrix y = back_substitute(make({{2, 1}, {0, 3}}), vec({5, 6}));
  CHECK(y(0, 0) == doctest::Approx(1.5));
  CHECK(y(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("back_substitute: zero diagonal reports its index") {
  try {
    back_substitute(make({{1, 1}, {0, 0}}), vec({1, 1}));
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(back_substitute(make({{1e-320, 0}, {0, 1}}), vec({1, 1})), SingularMatrixError);
}

TEST_CASE("forward_substitute") {
  const Vector b = vec({4, 7});
  CHECK(forward_substitute(Matrix::Identity(2, 2), b) == b);
  const Matrix y = forward_substitute(make({{2, 0}, {1, 3}}), b);
  CHECK(y(0, 0) == doctest::Approx(2.0));
  CHECK(y(1, 0) == doctest::Approx(5.0 / 3.0));
  CHECK_THROWS_AS(forward_substitute(make({{0, 0}, {1, 1}}), b), SingularMatrixError);
}

TEST_CASE("triangular solves: multiple right-hand sides against Eigen") {
  Matrix r = gaussian(8, 8, 4).triangularView<Eigen::Upper>();
  r.diagonal().array() += 5.0;
  const Matrix b = gaussian(8, 3, 5);
  const Matrix ours = back_substitute(r, b);
  const Matrix ref = r.triangularView<Eigen::Upper>().solve(b);
  CHECK((ours - ref).norm() <= 1e-13 * ref.norm());

  const Matrix l = r.transpose();
  CHECK((forward_substitute(l, b) - Matrix(l.triangularView<Eigen::Lower>().solve(b))).norm() <= 1e-13 * ref.norm());
}

TEST_CASE("triangular solves: shape checks") {
  CHECK_THROWS_AS(back_substitute(Matrix::Identity(2, 3), vec({1, 1})), InvalidArgument);
  CHECK_THROWS_AS(back_substitute(Matrix::Identity(2, 2), vec({1, 1, 1})), InvalidArgument);
}
