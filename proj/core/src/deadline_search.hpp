#pragma once

// Internal helper shared by the three protocol solvers; not installed.
//
// Each protocol reduces to minimizing T(tau) = tau + t*(tau) over the common
// compute deadline tau, where t*(tau) is that protocol's minimal transmit
// time given the energy left over after computing. T is convex: it is the
// partial minimization of a jointly convex allocation problem. t*(tau) may
// be +infinity on a left subinterval (too little residual energy to deliver
// the payload at all); T is still unimodal there in the extended reals.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "ctnoma/types.hpp"

namespace ctnoma::detail {

inline constexpr double kGoldenRatioConj = 0.6180339887498949;

struct DeadlineMinimum {
  double tau_s = 0;
  double transmit_s = 0;
  double total_s = 0;
  SolveStats stats;
};

// Grows tau from tau_low + delta by doubling the offset until the transmit
// time turns finite. The caller has already established that a finite point
// exists (limit feasibility), so the cap is pure defensiveness.
template <class TransmitFn>
double find_finite_deadline(TransmitFn&& transmit, double tau_low,
                            double delta) {
  double offset = delta;
  for (int i = 0; i < 400; ++i) {
    const double tau = tau_low + offset;
    if (std::isfinite(transmit(tau))) return tau;
    offset *= 2.0;
  }
  throw InfeasibleInstanceError(
      "deadline search: no finite transmit time at any compute deadline");
}

// Minimizes tau + transmit(tau). Two phases:
//  1. Interval halving on [tau_low, tau_bar + transmit(tau_bar)], comparing
//     the midpoint objective against the upper end and keeping the better
//     half. Cheap and usually lands on the optimum, but comparing only two
//     points can drop the minimizer when it hides between them.
//  2. A golden-section pass over the same initial bracket, which is immune
//     to that failure mode. The better of the two candidates wins.
template <class TransmitFn>
DeadlineMinimum minimize_total_delay(TransmitFn&& transmit, double tau_low,
                                     double delta, double tol_s) {
  DeadlineMinimum out;
  out.stats.tau_low_s = tau_low;

  const double tau_bar = find_finite_deadline(transmit, tau_low, delta);
  out.stats.tau_feasible_s = tau_bar;

  const auto total = [&](double tau) { return tau + transmit(tau); };

  const double tau_up_initial = total(tau_bar);
  out.stats.tau_up_initial_s = tau_up_initial;

  double best_tau = tau_bar;
  double best_total = tau_up_initial;
  const auto consider = [&](double tau, double value) {
    if (value < best_total) {
      best_total = value;
      best_tau = tau;
    }
  };

  // Phase 1: interval halving against the upper endpoint.
  {
    double lo = tau_low;
    double up = tau_up_initial;
    double total_up = total(up);
    consider(up, total_up);
    while (up - lo > tol_s) {
      ++out.stats.bisection_iterations;
      const double mid = 0.5 * (lo + up);
      const double total_mid = total(mid);
      consider(mid, total_mid);
      if (total_mid < total_up) {
        up = mid;
        total_up = total_mid;
      } else {
        lo = mid;
      }
    }
  }

  // Phase 2: golden-section over the full initial bracket.
  {
    double lo = tau_low + delta;
    double hi = tau_up_initial;
    double c = hi - kGoldenRatioConj * (hi - lo);
    double d = lo + kGoldenRatioConj * (hi - lo);
    double total_c = total(c);
    double total_d = total(d);
    out.stats.refinement_evaluations += 2;
    while (hi - lo > tol_s) {
      if (total_c < total_d) {
        hi = d;
        d = c;
        total_d = total_c;
        c = hi - kGoldenRatioConj * (hi - lo);
        total_c = total(c);
      } else {
        lo = c;
        c = d;
        total_c = total_d;
        d = lo + kGoldenRatioConj * (hi - lo);
        total_d = total(d);
      }
      ++out.stats.refinement_evaluations;
    }
    consider(c, total_c);
    consider(d, total_d);
  }

  out.tau_s = best_tau;
  out.transmit_s = transmit(best_tau);
  out.total_s = best_tau + out.transmit_s;
  return out;
}

}  // namespace ctnoma::detail
