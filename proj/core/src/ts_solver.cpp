#include "ctnoma/ts_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "deadline_search.hpp"
#include "rate_inversion.hpp"

namespace ctnoma {

namespace {

// Transmission is possible at some finite deadline iff every tail of the
// full-budget effective energies (sorted ascending, so the j smallest) can
// beat its finite-energy rate ceiling for j stacked payloads.
bool limit_feasible(const TsInstance& inst) {
  std::vector<double> full(inst.users.size());
  for (std::size_t n = 0; n < inst.users.size(); ++n)
    full[n] = inst.users[n].max_energy_j * inst.users[n].channel_gain;
  std::sort(full.begin(), full.end());
  const double per_payload =
      inst.cfg.payload_bits * inst.cfg.noise_psd_w_per_hz * detail::kLn2;
  double tail = 0;
  for (std::size_t j = 1; j <= full.size(); ++j) {
    tail += full[j - 1];
    if (!(tail > static_cast<double>(j) * per_payload)) return false;
  }
  return true;
}

}  // namespace

void TsInstance::validate() const {
  cfg.validate();
  if (users.size() != cfg.num_users)
    throw std::invalid_argument(
        "TsInstance: users.size() does not match cfg.num_users");
  for (const UserProfile& u : users) u.validate();
}

EffectiveGains effective_gains(const TsInstance& inst, double tau_s) {
  inst.validate();
  const std::size_t n = inst.users.size();
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i] =
        residual_tx_energy(inst.users[i], inst.cfg, tau_s) *
        inst.users[i].channel_gain;

  EffectiveGains out;
  out.perm.resize(n);
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
  std::stable_sort(out.perm.begin(), out.perm.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] > values[b];
                   });
  out.sorted.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.sorted[i] = values[out.perm[i]];
  return out;
}

double optimal_t_for_tau(const TsInstance& inst, double tau_s) {
  if (inst.cfg.payload_bits == 0) return 0.0;
  const EffectiveGains gains = effective_gains(inst, tau_s);
  const std::size_t n = gains.sorted.size();

  // Tail sums accumulate from the weakest user up so each value is an exact
  // suffix sum of the sorted effective energies.
  double tail = 0;
  double t = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    tail += gains.sorted[n - j];
    const double stacked_bits =
        static_cast<double>(j) * inst.cfg.payload_bits;
    t = std::max(t, detail::min_transmit_time(inst.cfg.bandwidth_hz,
                                              inst.cfg.noise_psd_w_per_hz,
                                              tail, stacked_bits));
  }
  return t;
}

double tau_upper_bound(const TsInstance& inst, double tau_bar_s) {
  return tau_bar_s + optimal_t_for_tau(inst, tau_bar_s);
}

RoundSolution minimize_round_delay_ts(const TsInstance& inst, double tol_s,
                                      SolveStats* stats) {
  inst.validate();
  if (!(tol_s > 0))
    throw std::invalid_argument("minimize_round_delay_ts: tol_s must be > 0");
  if (!limit_feasible(inst))
    throw InfeasibleInstanceError(
        "minimize_round_delay_ts: payload exceeds some user's finite-energy "
        "rate ceiling at every deadline");

  const double tau_low = tau_lower_bound(inst.cfg, inst.users);
  const double delta = 1e-12 * std::max(tau_low, 1.0);
  const auto transmit = [&](double tau) {
    return optimal_t_for_tau(inst, tau);
  };
  const detail::DeadlineMinimum min =
      detail::minimize_total_delay(transmit, tau_low, delta, tol_s);
  if (stats) *stats = min.stats;

  RoundSolution sol;
  sol.tau_s = min.tau_s;
  sol.t_s = min.transmit_s;
  sol.total_delay_s = min.total_s;
  sol.tx_energy_j.resize(inst.users.size());
  sol.cpu_hz.resize(inst.users.size());
  for (std::size_t i = 0; i < inst.users.size(); ++i) {
    sol.tx_energy_j[i] = residual_tx_energy(inst.users[i], inst.cfg, min.tau_s);
    sol.cpu_hz[i] = inst.users[i].cycles_per_sample *
                    inst.users[i].data_samples / min.tau_s;
  }
  return sol;
}

}  // namespace ctnoma
