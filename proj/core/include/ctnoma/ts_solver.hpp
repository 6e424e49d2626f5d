#pragma once

#include <cstddef>
#include <vector>

#include "ctnoma/model.hpp"
#include "ctnoma/types.hpp"

namespace ctnoma {

/// One upload round: shared cell constants plus every user's parameters.
struct TsInstance {
  SystemConfig cfg;
  std::vector<UserProfile> users;

  void validate() const;  // cfg/user checks plus num_users == users.size()
};

/// Residual transmit energy times channel gain for each user at a fixed
/// compute deadline, sorted descending. perm maps sorted position -> user
/// index (ties keep the original user order).
struct EffectiveGains {
  std::vector<double> sorted;      // e_i * g_i, non-increasing
  std::vector<std::size_t> perm;   // sorted position -> user index
};

EffectiveGains effective_gains(const TsInstance& inst, double tau_s);

/// Minimal transmit duration at deadline tau_s when all users transmit
/// simultaneously and the receiver may time-share decoding orders: the most
/// stringent of the N tail-sum capacity constraints, each inverted in closed
/// form through the secondary Lambert branch. Returns +infinity when some
/// tail's finite-energy rate ceiling cannot reach its bit target; returns 0
/// when the payload is zero.
double optimal_t_for_tau(const TsInstance& inst, double tau_s);

/// Upper end of the compute-deadline bracket anchored at a feasible tau_bar:
/// any optimum lies below tau_bar + optimal_t_for_tau(tau_bar).
double tau_upper_bound(const TsInstance& inst, double tau_bar_s);

/// Minimum-delay allocation under time-shared decoding. tol_s controls the
/// deadline search; stats (optional) reports the bracket and iteration
/// counts. Throws InfeasibleInstanceError when no finite delay exists.
RoundSolution minimize_round_delay_ts(const TsInstance& inst, double tol_s,
                                      SolveStats* stats = nullptr);

}  // namespace ctnoma
