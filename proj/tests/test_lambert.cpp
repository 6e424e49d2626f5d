#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "ctnoma/lambert_w.hpp"
#include "ctnoma/philox.hpp"

namespace {

using namespace ctnoma;

TEST_SUITE("lambertw") {

TEST_CASE("defining identity w*e^w = x across the branch domain") {
  PhiloxStream rng(7, 0, 0);
  double worst = 0;
  // magnitudes from e^-1 down to e^-668; the identity check itself stays
  // well-conditioned above the subnormal range
  for (int i = 0; i < 1000; ++i) {
    const double x = -std::exp(-rng.uniform(1.0, 668.0));
    const double w = lambert_w_minus1(LambertArg(x));
    worst = std::max(worst, std::abs(w * std::exp(w) / x - 1.0));
  }
  // dense coverage just above the branch point, where the series kicks in
  for (int i = 0; i < 1000; ++i) {
    const double x =
        -std::exp(-1.0) + std::pow(10.0, rng.uniform(-14.0, -0.6));
    const double w = lambert_w_minus1(LambertArg(x));
    worst = std::max(worst, std::abs(w * std::exp(w) / x - 1.0));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("analytic points") {
  CHECK(lambert_w_minus1(LambertArg(-std::exp(-1.0))) == -1.0);
  const double w2 = lambert_w_minus1(LambertArg(-2.0 * std::exp(-2.0)));
  CHECK(std::abs(w2 + 2.0) <= 4e-16);
  CHECK(lambert_w_minus1(LambertArg(-0.1)) ==
        doctest::Approx(-3.5771520639572962).epsilon(1e-14));
}

TEST_CASE("strictly decreasing toward zero minus") {
  double prev = lambert_w_minus1(LambertArg(-std::exp(-1.0)));
  for (int i = 1; i <= 200; ++i) {
    const double x = -std::exp(-1.0 - 0.1 * i);
    const double w = lambert_w_minus1(LambertArg(x));
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("arguments outside [-1/e, 0) are rejected") {
  CHECK_THROWS_AS(LambertArg(0.0), std::domain_error);
  CHECK_THROWS_AS(LambertArg(0.1), std::domain_error);
  CHECK_THROWS_AS(LambertArg(-0.5), std::domain_error);
  CHECK_THROWS_AS(LambertArg(std::nan("")), std::domain_error);
  CHECK_NOTHROW(LambertArg(-1e-300));
  CHECK_NOTHROW(LambertArg(-std::exp(-1.0)));
}

}  // TEST_SUITE

}  // namespace
