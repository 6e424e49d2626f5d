#pragma once

namespace ctnoma {

/// Argument to the secondary Lambert W branch, restricted to the interval
/// [-1/e, 0) on which that branch is real-valued. Construction outside the
/// interval (with a ~1e-15 absolute slack at the left edge for round-off)
/// throws std::domain_error.
struct LambertArg {
  explicit LambertArg(double x);
  double value;
};

/// Secondary real branch W_{-1}: the unique w <= -1 with w * exp(w) = x.
/// Accuracy: |w*exp(w) - x| <= 1e-12 * |x| over the whole domain; arguments
/// within 1e-14 of -1/e return exactly -1.
double lambert_w_minus1(LambertArg x);

}  // namespace ctnoma
