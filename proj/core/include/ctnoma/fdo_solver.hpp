#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctnoma/ts_solver.hpp"
#include "ctnoma/types.hpp"

namespace ctnoma {

/// Successive-interference-cancellation schedule: order[k] is the user whose
/// signal is decoded k-th (earlier positions see all later ones as noise).
struct DecodingOrder {
  std::vector<std::size_t> order;
};

/// Default SIC schedule: strongest channel gain decoded first, ties broken
/// by user index (stable).
DecodingOrder default_decoding_order(std::span<const UserProfile> users);

/// An upload round decoded in one fixed order (no time-sharing at the
/// receiver).
struct FdoInstance {
  SystemConfig cfg;
  std::vector<UserProfile> users;
  DecodingOrder order;

  void validate() const;  // also checks order is a permutation of the users
};

/// Per-user transmit energies that meet every SIC rate constraint with
/// equality at transmit duration t_s: the unique componentwise-minimal
/// feasible point, built backward from the last-decoded user. Indexed by
/// user (not decoding position). Entries may be +infinity when t_s is far
/// too small for the payload.
std::vector<double> minimal_energy_chain(const FdoInstance& inst, double tau_s,
                                         double t_s);

/// True iff the minimal-energy chain at (tau_s, t_s) fits inside every
/// user's residual energy budget.
bool fdo_feasible(const FdoInstance& inst, double tau_s, double t_s);

/// Smallest feasible transmit duration at deadline tau_s, found by bisecting
/// the monotone feasibility boundary to tol_s. Returns 0 for a zero payload
/// and +infinity when no duration works at this deadline (residual energy
/// at or below a user's finite-energy floor).
double optimal_t_for_tau_fdo(const FdoInstance& inst, double tau_s,
                             double tol_s);

/// Minimum-delay allocation under the fixed decoding order. Reported
/// energies are the minimal chain at the optimum (not the full residual
/// budgets). Throws InfeasibleInstanceError when no finite delay exists.
RoundSolution minimize_round_delay_fdo(const FdoInstance& inst, double tol_s,
                                       SolveStats* stats = nullptr);

}  // namespace ctnoma
