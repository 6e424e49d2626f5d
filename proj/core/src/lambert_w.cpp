#include "ctnoma/lambert_w.hpp"

#include <cmath>
#include <stdexcept>

namespace ctnoma {

namespace {

// 1/e to the nearest double; matches std::exp(-1.0) bit for bit.
constexpr double kInvE = 0.36787944117144233;

// Halley update for f(w) = w*exp(w) - x. Cubic convergence; the expression
// follows Corless et al.'s recommended form, which stays benign for w < -1.
double halley_step(double w, double x) {
  const double ew = std::exp(w);
  const double f = w * ew - x;
  const double wp1 = w + 1.0;
  const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
  return w - f / denom;
}

}  // namespace

LambertArg::LambertArg(double x) : value(x) {
  if (!(x < 0) || x < -kInvE - 1e-15)
    throw std::domain_error(
        "LambertArg: secondary branch needs x in [-1/e, 0)");
}

double lambert_w_minus1(LambertArg arg) {
  const double x = arg.value;
  if (std::abs(x + kInvE) < 1e-14) return -1.0;

  double w;
  if (x < -0.27) {
    // Near the branch point: series in p = -sqrt(2*(1 + e*x)) around w = -1.
    const double p = std::sqrt(2.0 * std::max(0.0, 1.0 + x / kInvE));
    w = -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
  } else {
    // Toward zero: asymptotic expansion in L1 = ln(-x), L2 = ln(-L1).
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int i = 0; i < 50; ++i) {
    double next = halley_step(w, x);
    // The branch lives at w <= -1; a step overshooting that boundary would
    // hand the iteration to the principal branch instead.
    if (!(next < -1.0)) next = 0.5 * (w - 1.0);
    const double residual = next * std::exp(next) - x;
    w = next;
    if (std::abs(residual) <= 1e-14 * std::abs(x)) break;
  }
  return w;
}

}  // namespace ctnoma
