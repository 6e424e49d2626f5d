#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ctnoma/fdo_solver.hpp"
#include "ctnoma/ts_solver.hpp"
#include "ctnoma/types.hpp"

// Brute-force reference implementations. Everything here favors obviousness
// over speed and deliberately avoids the closed forms and search strategies
// of the production solvers, so the two can check each other.

namespace ctnoma::oracles {

/// One row of the exhaustive capacity-region check.
struct SubsetConstraintReport {
  std::uint32_t subset_mask = 0;  // bit i set -> user i belongs to the subset
  double lhs_bits = 0;            // subset size * payload
  double rhs_bits = 0;            // t*B*log2(1 + sum(A)/(t*B*N0))
  bool satisfied = false;         // lhs <= rhs
};

/// Evaluates all 2^N - 1 nonempty-subset constraints of the multiple-access
/// region for a candidate duration and per-user effective received energies
/// (transmit energy times channel gain). Refuses num_users > 20; the
/// enumeration is exponential by design.
std::vector<SubsetConstraintReport> mac_region_check(
    const SystemConfig& cfg, std::span<const double> effective_energy_j,
    double t_s, double payload_bits);

/// True iff every subset constraint holds.
bool subset_region_feasible(const SystemConfig& cfg,
                            std::span<const double> effective_energy_j,
                            double t_s, double payload_bits);

/// Same region expressed as N constraints: sort the effective energies
/// descending and require, for each suffix, that the stacked payloads of
/// the suffix fit its summed energy.
bool tail_region_feasible(const SystemConfig& cfg,
                          std::span<const double> effective_energy_j,
                          double t_s, double payload_bits);

/// Solves z_bits == t*B*log2(1 + S/(t*B*N0)) for t by plain bisection,
/// avoiding the Lambert closed form. Returns 0 for z_bits <= 0 and
/// +infinity when the finite-energy ceiling S/(N0*ln2) cannot reach z_bits.
double bisect_rate_equation(double bandwidth_hz, double noise_psd_w_per_hz,
                            double effective_energy_sum, double z_bits,
                            double rel_tol = 1e-12);

struct GridMinimum {
  double tau_s = 0;
  double total_delay_s = 0;
};

/// Deadline sweep for the time-sharing protocol: a log-spaced grid over the
/// bracket replaces the outer search (the closed-form inner step is reused,
/// it is validated separately against bisect_rate_equation). Requires at
/// least 100 grid points.
GridMinimum grid_min_ts(const TsInstance& inst, std::size_t tau_points);

/// Fully independent 2-D brute force for the fixed-order protocol:
/// log-spaced grids over deadline and duration, with feasibility decided by
/// the closed-form minimal energies snr_gap*(1+snr_gap)^(decoded later)*
/// t*B*N0/g rather than the solver's recursive chain. Requires at least 100
/// points per axis.
GridMinimum grid_min_fdo(const FdoInstance& inst, std::size_t tau_points,
                         std::size_t t_points);

/// Feasible-point upper bound on the fixed-order optimum from a log-barrier
/// interior-point descent on the exponential-variable convex form (energies
/// and duration as logs). iters caps the total Newton-type steps; running
/// out throws std::runtime_error.
double convex_descent_fdo(const FdoInstance& inst, int iters = 4000);

struct OrderSearchResult {
  DecodingOrder order;
  double total_delay_s = 0;
};

/// Solves the fixed-order problem once per permutation and returns the best
/// (first in lexicographic order on ties). Refuses num_users > 5.
OrderSearchResult exhaustive_order_search(const FdoInstance& inst,
                                          double tol_s);

}  // namespace ctnoma::oracles
