#include "ctnoma/tdma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "deadline_search.hpp"
#include "rate_inversion.hpp"

namespace ctnoma {

namespace {

// Per-user slot lengths at a fixed deadline; any +infinity entry poisons the
// sum, which the deadline search treats as an infeasible deadline.
std::vector<double> slot_lengths(const TsInstance& inst, double tau_s,
                                 bool equal_slots) {
  std::vector<double> slots(inst.users.size());
  for (std::size_t i = 0; i < inst.users.size(); ++i) {
    const UserProfile& u = inst.users[i];
    const double effective =
        residual_tx_energy(u, inst.cfg, tau_s) * u.channel_gain;
    slots[i] = detail::min_transmit_time(inst.cfg.bandwidth_hz,
                                         inst.cfg.noise_psd_w_per_hz,
                                         effective, inst.cfg.payload_bits);
  }
  if (equal_slots) {
    const double widest = *std::max_element(slots.begin(), slots.end());
    std::fill(slots.begin(), slots.end(), widest);
  }
  return slots;
}

}  // namespace

TdmaSolution minimize_round_delay_tdma(const TsInstance& inst, double tol_s,
                                       bool equal_slots, SolveStats* stats) {
  inst.validate();
  if (!(tol_s > 0))
    throw std::invalid_argument(
        "minimize_round_delay_tdma: tol_s must be > 0");

  // Same finite-energy ceiling as the interference-free user in SIC: even
  // alone on the channel, a user below the floor never finishes.
  const double floor_j =
      inst.cfg.payload_bits * inst.cfg.noise_psd_w_per_hz * detail::kLn2;
  for (const UserProfile& u : inst.users)
    if (!(u.max_energy_j * u.channel_gain > floor_j))
      throw InfeasibleInstanceError(
          "minimize_round_delay_tdma: payload exceeds a user's finite-energy "
          "rate ceiling at every deadline");

  const double tau_low = tau_lower_bound(inst.cfg, inst.users);
  const double delta = 1e-12 * std::max(tau_low, 1.0);
  const auto transmit = [&](double tau) {
    const std::vector<double> slots = slot_lengths(inst, tau, equal_slots);
    double sum = 0;
    for (double s : slots) sum += s;
    return sum;
  };
  const detail::DeadlineMinimum min =
      detail::minimize_total_delay(transmit, tau_low, delta, tol_s);
  if (stats) *stats = min.stats;

  TdmaSolution sol;
  sol.tau_s = min.tau_s;
  sol.slot_s = slot_lengths(inst, min.tau_s, equal_slots);
  sol.total_delay_s = min.total_s;
  sol.tx_energy_j.resize(inst.users.size());
  for (std::size_t i = 0; i < inst.users.size(); ++i)
    sol.tx_energy_j[i] = residual_tx_energy(inst.users[i], inst.cfg, min.tau_s);
  return sol;
}

}  // namespace ctnoma
