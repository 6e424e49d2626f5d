#include "ctnoma/fdo_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "deadline_search.hpp"
#include "rate_inversion.hpp"

namespace ctnoma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residual transmit energies without the throwing contract of
// residual_tx_energy: a deadline that starves some user of energy is an
// ordinary infeasible point for this solver, not an error.
std::vector<double> residuals_or_empty(const FdoInstance& inst, double tau_s) {
  std::vector<double> r(inst.users.size());
  for (std::size_t n = 0; n < inst.users.size(); ++n) {
    const UserProfile& u = inst.users[n];
    const double cycles = u.cycles_per_sample * u.data_samples;
    const double compute =
        inst.cfg.hardware_coeff * cycles * cycles * cycles / (tau_s * tau_s);
    const double residual = u.max_energy_j - compute;
    if (residual < -kRelEps * u.max_energy_j) return {};
    r[n] = std::max(residual, 0.0);
  }
  return r;
}

// With finite energy, even an interference-free user needs at least
// Z * N0 * ln2 / g joules delivered; below that floor no duration helps.
bool limit_feasible(const FdoInstance& inst) {
  const double floor_j =
      inst.cfg.payload_bits * inst.cfg.noise_psd_w_per_hz * detail::kLn2;
  for (const UserProfile& u : inst.users)
    if (!(u.max_energy_j * u.channel_gain > floor_j)) return false;
  return true;
}

}  // namespace

DecodingOrder default_decoding_order(std::span<const UserProfile> users) {
  DecodingOrder out;
  out.order.resize(users.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return users[a].channel_gain > users[b].channel_gain;
                   });
  return out;
}

void FdoInstance::validate() const {
  cfg.validate();
  if (users.size() != cfg.num_users)
    throw std::invalid_argument(
        "FdoInstance: users.size() does not match cfg.num_users");
  for (const UserProfile& u : users) u.validate();
  if (order.order.size() != users.size())
    throw std::invalid_argument(
        "FdoInstance: order length does not match user count");
  std::vector<bool> seen(users.size(), false);
  for (std::size_t idx : order.order) {
    if (idx >= users.size() || seen[idx])
      throw std::invalid_argument(
          "FdoInstance: order is not a permutation of the users");
    seen[idx] = true;
  }
}

std::vector<double> minimal_energy_chain(const FdoInstance& inst, double tau_s,
                                         double t_s) {
  inst.validate();
  if (!(tau_s > 0) || !(t_s > 0))
    throw std::domain_error("minimal_energy_chain: tau_s and t_s must be > 0");

  const std::size_t n = inst.users.size();
  const double t_b = t_s * inst.cfg.bandwidth_hz;
  const double noise_j = t_b * inst.cfg.noise_psd_w_per_hz;
  // Per-user SINR target; expm1 keeps precision when Z/(tB) is tiny.
  const double snr_gap =
      std::expm1(inst.cfg.payload_bits / t_b * detail::kLn2);

  // Walk the order back to front: the last-decoded user faces noise only,
  // and each earlier user additionally faces the (already fixed) minimal
  // energies of everyone decoded after it.
  std::vector<double> energy(n, 0.0);
  double interference_j = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t user = inst.order.order[k];
    const double e =
        snr_gap * (interference_j + noise_j) / inst.users[user].channel_gain;
    energy[user] = e;
    interference_j += e * inst.users[user].channel_gain;
  }
  return energy;
}

bool fdo_feasible(const FdoInstance& inst, double tau_s, double t_s) {
  const std::vector<double> residual = residuals_or_empty(inst, tau_s);
  if (residual.empty()) return false;
  const std::vector<double> need = minimal_energy_chain(inst, tau_s, t_s);
  for (std::size_t i = 0; i < need.size(); ++i)
    if (!(need[i] <= residual[i])) return false;
  return true;
}

double optimal_t_for_tau_fdo(const FdoInstance& inst, double tau_s,
                             double tol_s) {
  inst.validate();
  if (!(tol_s > 0))
    throw std::invalid_argument("optimal_t_for_tau_fdo: tol_s must be > 0");

  const std::vector<double> residual = residuals_or_empty(inst, tau_s);
  if (residual.empty()) return kInf;
  if (inst.cfg.payload_bits == 0) return 0.0;

  // Feasible for some duration iff every residual clears its finite-energy
  // floor; otherwise stretching t only converges toward that floor.
  const double floor_j =
      inst.cfg.payload_bits * inst.cfg.noise_psd_w_per_hz * detail::kLn2;
  for (std::size_t i = 0; i < residual.size(); ++i)
    if (!(residual[i] * inst.users[i].channel_gain > floor_j)) return kInf;

  double lo = 1e-9;
  if (fdo_feasible(inst, tau_s, lo)) return lo;
  double hi = 1e-3;
  int doublings = 0;
  while (!fdo_feasible(inst, tau_s, hi)) {
    hi *= 2.0;
    if (++doublings > 200)
      throw InfeasibleInstanceError(
          "optimal_t_for_tau_fdo: no feasible duration within the bracket");
  }
  if (doublings > 0) lo = hi * 0.5;  // the last duration that failed

  while (hi - lo > tol_s) {
    const double mid = 0.5 * (lo + hi);
    if (fdo_feasible(inst, tau_s, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

RoundSolution minimize_round_delay_fdo(const FdoInstance& inst, double tol_s,
                                       SolveStats* stats) {
  inst.validate();
  if (!(tol_s > 0))
    throw std::invalid_argument("minimize_round_delay_fdo: tol_s must be > 0");
  if (!limit_feasible(inst))
    throw InfeasibleInstanceError(
        "minimize_round_delay_fdo: payload exceeds some user's finite-energy "
        "rate ceiling at every deadline");

  const double tau_low = tau_lower_bound(inst.cfg, inst.users);
  const double delta = 1e-12 * std::max(tau_low, 1.0);
  // The inner bisection is solved well past the outer tolerance so its
  // noise cannot confuse the deadline comparisons.
  const double inner_tol = 0.125 * tol_s;
  const auto transmit = [&](double tau) {
    return optimal_t_for_tau_fdo(inst, tau, inner_tol);
  };
  const detail::DeadlineMinimum min =
      detail::minimize_total_delay(transmit, tau_low, delta, tol_s);
  if (stats) *stats = min.stats;

  RoundSolution sol;
  sol.tau_s = min.tau_s;
  sol.t_s = min.transmit_s;
  sol.total_delay_s = min.total_s;
  sol.tx_energy_j = minimal_energy_chain(inst, min.tau_s, min.transmit_s);
  sol.cpu_hz.resize(inst.users.size());
  for (std::size_t i = 0; i < inst.users.size(); ++i)
    sol.cpu_hz[i] = inst.users[i].cycles_per_sample *
                    inst.users[i].data_samples / min.tau_s;
  return sol;
}

}  // namespace ctnoma
